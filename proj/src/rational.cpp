/*
 * Copyright 2026 The costgames Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "costgames/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace costgames {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational q(negative ? mpz_class(-n) : n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

const Rational& ExtRational::value() const
{
    if (!is_finite()) throw std::domain_error("value() of an infinite ExtRational");
    return value_;
}

double ExtRational::to_double() const
{
    switch (kind_) {
    case Kind::PosInf: return std::numeric_limits<double>::infinity();
    case Kind::NegInf: return -std::numeric_limits<double>::infinity();
    default: return value_.get_d();
    }
}

std::string ExtRational::to_string() const
{
    switch (kind_) {
    case Kind::PosInf: return "inf";
    case Kind::NegInf: return "-inf";
    default: return format_rational(value_);
    }
}

ExtRational ExtRational::parse(std::string_view text)
{
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    return ExtRational(parse_rational(text));
}

ExtRational operator+(const ExtRational& x, const ExtRational& y)
{
    using K = ExtRational::Kind;
    if (x.is_finite() && y.is_finite()) return ExtRational(Rational(x.value_ + y.value_));
    if ((x.kind_ == K::PosInf && y.kind_ == K::NegInf) || (x.kind_ == K::NegInf && y.kind_ == K::PosInf)) {
        throw std::domain_error("+inf + -inf is undefined");
    }
    return x.is_finite() ? y : x;
}

ExtRational operator-(const ExtRational& x)
{
    using K = ExtRational::Kind;
    switch (x.kind_) {
    case K::PosInf: return ExtRational::neg_inf();
    case K::NegInf: return ExtRational::pos_inf();
    default: return ExtRational(Rational(-x.value_));
    }
}

ExtRational operator-(const ExtRational& x, const ExtRational& y)
{
    return x + (-y);
}

ExtRational operator*(const Rational& scale, const ExtRational& x)
{
    if (x.is_finite()) return ExtRational(Rational(scale * x.value_));
    if (scale == 0) return ExtRational();
    return scale > 0 ? x : -x;
}

bool operator==(const ExtRational& x, const ExtRational& y)
{
    if (x.kind_ != y.kind_) return false;
    return !x.is_finite() || x.value_ == y.value_;
}

std::strong_ordering operator<=>(const ExtRational& x, const ExtRational& y)
{
    if (x.kind_ != y.kind_) return static_cast<int>(x.kind_) <=> static_cast<int>(y.kind_);
    if (!x.is_finite()) return std::strong_ordering::equal;
    int c = cmp(x.value_, y.value_);
    return c <=> 0;
}

const ExtRational& min(const ExtRational& x, const ExtRational& y)
{
    return y < x ? y : x;
}

const ExtRational& max(const ExtRational& x, const ExtRational& y)
{
    return x < y ? y : x;
}

std::ostream& operator<<(std::ostream& out, const ExtRational& x)
{
    return out << x.to_string();
}

}  // namespace costgames
