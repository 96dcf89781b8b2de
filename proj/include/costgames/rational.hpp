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

#ifndef COSTGAMES_RATIONAL_HPP
#define COSTGAMES_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace costgames {

/// Exact rational arithmetic; every solver-facing quantity uses this type.
using Rational = mpq_class;

/**
 * Parse "n" or "n/d" (optional leading '-'). Throws std::invalid_argument
 * on anything else, including decimal notation and zero denominators.
 */
Rational parse_rational(std::string_view text);

/// "n" for integers, "n/d" otherwise, always in lowest terms.
std::string format_rational(const Rational& q);

/**
 * A rational number extended with +inf and -inf.
 *
 * The order is total (-inf < q < +inf). Scaling by a rational follows the
 * convention 0 * (+-inf) = 0. Adding +inf and -inf throws.
 */
class ExtRational {
public:
    enum class Kind { NegInf, Finite, PosInf };

    ExtRational() = default;
    ExtRational(Rational value) : value_(std::move(value)) { value_.canonicalize(); }
    ExtRational(long value) : value_(value) {}
    ExtRational(int value) : value_(value) {}

    static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
    static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_finite() const { return kind_ == Kind::Finite; }
    [[nodiscard]] bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    [[nodiscard]] bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    /// Throws std::domain_error when infinite.
    [[nodiscard]] const Rational& value() const;

    [[nodiscard]] double to_double() const;
    [[nodiscard]] std::string to_string() const;

    /// Accepts the rational syntax plus "inf", "+inf", "-inf".
    static ExtRational parse(std::string_view text);

    friend ExtRational operator+(const ExtRational& x, const ExtRational& y);
    friend ExtRational operator-(const ExtRational& x);
    friend ExtRational operator-(const ExtRational& x, const ExtRational& y);
    friend ExtRational operator*(const Rational& scale, const ExtRational& x);

    friend bool operator==(const ExtRational& x, const ExtRational& y);
    friend std::strong_ordering operator<=>(const ExtRational& x, const ExtRational& y);

private:
    explicit ExtRational(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::Finite;
    Rational value_ = 0;
};

const ExtRational& min(const ExtRational& x, const ExtRational& y);
const ExtRational& max(const ExtRational& x, const ExtRational& y);

std::ostream& operator<<(std::ostream& out, const ExtRational& x);

}  // namespace costgames

#endif
