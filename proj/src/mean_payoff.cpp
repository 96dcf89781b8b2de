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

#include "costgames/solvers.hpp"
#include "solver_detail.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <map>

namespace costgames {
namespace detail {

namespace {

struct IntegerWeights {
    std::vector<long long> w;
    Rational scale;  // true weight = w / scale
    long long max_abs = 0;
};

IntegerWeights to_integers(const std::vector<Rational>& weight)
{
    mpz_class l = 1;
    for (const auto& q : weight) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    IntegerWeights out{{}, Rational(l), 0};
    for (const auto& q : weight) {
        Rational scaled = q * out.scale;
        const mpz_class& z = scaled.get_num();
        if (!z.fits_slong_p()) throw GameError("mean payoff: scaled prices overflow 64-bit arithmetic");
        long long v = z.get_si();
        out.w.push_back(v);
        out.max_abs = std::max(out.max_abs, v < 0 ? -v : v);
    }
    return out;
}

// Fraction p/q with q <= n closest to x; the smallest denominator wins ties.
Rational round_to_denominator(const Rational& x, std::size_t n)
{
    Rational best;
    Rational best_dist = -1;
    for (std::size_t q = 1; q <= n; ++q) {
        Rational scaled = x * static_cast<long>(q);
        mpz_class p;
        mpz_fdiv_q(p.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        for (const mpz_class& cand : {p, mpz_class(p + 1)}) {
            Rational c(cand, static_cast<long>(q));
            c.canonicalize();
            Rational d = abs(c - x);
            if (best_dist < 0 || d < best_dist) {
                best = c;
                best_dist = d;
            }
        }
    }
    return best;
}

}  // namespace

std::vector<Rational> mean_payoff_values_horizon(const Arena& arena, const std::vector<Rational>& weight)
{
    const std::size_t n = arena.out.size();
    IntegerWeights iw = to_integers(weight);
    if (iw.max_abs == 0) return std::vector<Rational>(n, Rational(0));

    // Horizon 4 n^3 W separates distinct values with denominators at most n.
    const unsigned __int128 nn = n;
    const unsigned __int128 w = static_cast<unsigned long long>(iw.max_abs);
    const unsigned __int128 horizon128 = 4 * nn * nn * nn * w;
    std::size_t arcs = 0;
    for (const auto& out : arena.out) arcs += out.size();
    if (horizon128 * w > static_cast<unsigned __int128>(LLONG_MAX / 2) || horizon128 * arcs > 400'000'000) {
        throw GameError("mean payoff: horizon too long");
    }
    const auto horizon = static_cast<unsigned long long>(horizon128);

    std::vector<long long> cur(n, 0), nxt(n, 0);
    for (unsigned long long k = 0; k < horizon; ++k) {
        for (Vertex v = 0; v < n; ++v) {
            const auto& arcs = arena.out[v];
            long long best = iw.w[arcs.front().edge] + cur[arcs.front().to];
            for (const Arc& a : arcs) {
                long long c = iw.w[a.edge] + cur[a.to];
                best = arena.is_min[v] ? std::min(best, c) : std::max(best, c);
            }
            nxt[v] = best;
        }
        std::swap(cur, nxt);
    }
    std::vector<Rational> values(n);
    const Rational t(mpz_class(std::to_string(horizon)));
    for (Vertex v = 0; v < n; ++v) {
        Rational avg = Rational(mpz_class(std::to_string(cur[v]))) / t;
        values[v] = round_to_denominator(avg, n) / iw.scale;
        values[v].canonicalize();
    }
    return values;
}

namespace {

std::optional<std::vector<Rational>> certify(const Arena& arena, const std::vector<Rational>& weight,
                                             const std::vector<Vertex>& choice)
{
    const std::size_t n = arena.out.size();
    std::vector<std::optional<Vertex>> min_fixed(n), max_fixed(n);
    for (Vertex v = 0; v < n; ++v) (arena.is_min[v] ? min_fixed : max_fixed)[v] = choice[v];
    // Min's strategy caps what Max can reach; Max's strategy floors what Min can reach.
    std::vector<Rational> upper = reachable_cycle_mean(one_player_graph(arena, weight, min_fixed), false);
    std::vector<Rational> lower = reachable_cycle_mean(one_player_graph(arena, weight, max_fixed), true);
    if (upper != lower) return std::nullopt;
    return upper;
}

}  // namespace

std::vector<Rational> mean_payoff_values_certified(const Arena& arena, const std::vector<Rational>& weight)
{
    const std::size_t n = arena.out.size();
    std::vector<double> w;
    w.reserve(weight.size());
    for (const auto& q : weight) w.push_back(q.get_d());

    std::vector<double> cur(n, 0.0), nxt(n, 0.0);
    std::vector<Vertex> choice(n);
    std::size_t checkpoint = std::max<std::size_t>(n, 4);
    constexpr std::size_t max_steps = std::size_t{1} << 16;
    for (std::size_t k = 1; k <= max_steps; ++k) {
        for (Vertex v = 0; v < n; ++v) {
            const auto& arcs = arena.out[v];
            const Arc* best = &arcs.front();
            double best_val = w[best->edge] + cur[best->to];
            for (const Arc& a : arcs) {
                double c = w[a.edge] + cur[a.to];
                if (arena.is_min[v] ? c < best_val : c > best_val) {
                    best = &a;
                    best_val = c;
                }
            }
            nxt[v] = best_val;
            choice[v] = best->to;
        }
        std::swap(cur, nxt);
        if (k == checkpoint) {
            if (auto values = certify(arena, weight, choice)) return *values;
            checkpoint *= 2;
        }
    }
    return mean_payoff_values_horizon(arena, weight);
}

Rational simplest_between(const Rational& lo, const Rational& hi)
{
    if (lo > hi) throw InternalError("simplest_between: empty interval");
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational frac_lo = lo - fl;
    Rational frac_hi = hi - fl;
    Rational inner = simplest_between(1 / frac_hi, 1 / frac_lo);
    Rational out = Rational(fl) + 1 / inner;
    out.canonicalize();
    return out;
}

}  // namespace detail

namespace {

using detail::Arena;

std::vector<Rational> price_weights(const GameGraph& g)
{
    std::vector<Rational> w;
    for (const Edge& e : g.edges()) w.push_back(e.price);
    return w;
}

std::vector<Rational> exact_mean_payoff(const Arena& arena, const std::vector<Rational>& weight)
{
    try {
        return detail::mean_payoff_values_horizon(arena, weight);
    } catch (const GameError&) {
        return detail::mean_payoff_values_certified(arena, weight);
    }
}

SolveResult with_edge_fixing(const MinMaxInstance& inst, const Arena& arena, const std::vector<Rational>& values,
                             const detail::ValuesFn& fn)
{
    const std::size_t n = arena.out.size();
    SolveResult res{{}, PositionalStrategy{std::vector<std::optional<Vertex>>(n)},
                    PositionalStrategy{std::vector<std::optional<Vertex>>(n)}};
    for (const auto& q : values) res.values.emplace_back(q);
    std::vector<Vertex> min_side, max_side;
    for (Vertex v = 0; v < n; ++v) (inst.is_min(v) ? min_side : max_side).push_back(v);
    for (auto [v, to] : detail::fix_edges(arena, min_side, values, fn)) res.sigma_min.choice[v] = to;
    for (auto [v, to] : detail::fix_edges(arena, max_side, values, fn)) res.sigma_max.choice[v] = to;
    return res;
}

}  // namespace

SolveResult solve_mean_payoff(const MinMaxInstance& inst)
{
    const Arena arena = detail::make_arena(inst);
    const std::vector<Rational> weight = price_weights(inst.game());
    std::vector<Rational> values = exact_mean_payoff(arena, weight);
    return with_edge_fixing(inst, arena, values, [&](const Arena& a) {
        return detail::mean_payoff_values_certified(a, weight);
    });
}

namespace {

struct RatioScaling {
    std::vector<Rational> price;
    std::vector<Rational> reward;
    Rational factor;  // ratio = scaled ratio * factor
    mpz_class bound;  // scaled ratios lie strictly inside (-bound, bound)
    mpz_class denominators;  // scaled ratios have denominators at most this
};

RatioScaling scale_ratio(const GameGraph& g)
{
    mpz_class lp = 1, lr = 1;
    for (const Edge& e : g.edges()) {
        mpz_lcm(lp.get_mpz_t(), lp.get_mpz_t(), e.price.get_den_mpz_t());
        mpz_lcm(lr.get_mpz_t(), lr.get_mpz_t(), e.reward.get_den_mpz_t());
    }
    RatioScaling s;
    mpz_class pmax = 0, rmax = 0;
    for (const Edge& e : g.edges()) {
        s.price.emplace_back(e.price * lp);
        s.reward.emplace_back(e.reward * lr);
        pmax = std::max(pmax, mpz_class(abs(s.price.back().get_num())));
        rmax = std::max(rmax, mpz_class(abs(s.reward.back().get_num())));
    }
    const long n = static_cast<long>(g.num_vertices());
    s.factor = Rational(lr) / Rational(lp);
    s.factor.canonicalize();
    s.bound = n * pmax + 1;
    s.denominators = n * rmax;
    return s;
}

// Integer weights q * price - p * reward for t = p/q: same signs as price - t * reward.
std::vector<Rational> derived_weights(const RatioScaling& s, const Rational& t)
{
    std::vector<Rational> w(s.price.size());
    for (std::size_t e = 0; e < w.size(); ++e) w[e] = t.get_den() * s.price[e] - t.get_num() * s.reward[e];
    return w;
}

/*
 * Scaled ratio values. The mean payoff of price - t * reward is positive
 * exactly when t lies below the ratio value, zero exactly at it. A ratio
 * value is a cycle's price sum over its reward sum, so its denominator is
 * bounded; each vertex walks down the Stern-Brocot tree, galloping along
 * runs, and only ever queries fractions within that bound. Small
 * denominators keep the derived weights small integers.
 */
class RatioSearch {
public:
    RatioSearch(const Arena& arena, const RatioScaling& s) : arena_(arena), s_(s) {}

    std::vector<Rational> values()
    {
        std::vector<Rational> out(arena_.out.size());
        for (Vertex v = 0; v < out.size(); ++v) out[v] = locate(v);
        return out;
    }

private:
    // sign of (ratio value of v) - t
    int side(Vertex v, const Rational& t)
    {
        auto it = cache_.find(t);
        if (it == cache_.end()) {
            it = cache_.emplace(t, detail::mean_payoff_values_certified(arena_, derived_weights(s_, t))).first;
        }
        return sgn(it->second[v]);
    }

    Rational locate(Vertex v)
    {
        mpz_class lo = -s_.bound, hi = s_.bound;
        while (hi - lo > 1) {
            mpz_class mid = lo + (hi - lo) / 2;
            int c = side(v, Rational(mid));
            if (c == 0) return Rational(mid);
            (c > 0 ? lo : hi) = mid;
        }
        // lo < x < lo + 1: descend between lo/1 and (lo+1)/1
        mpz_class lp = lo, lq = 1, rp = lo + 1, rq = 1;
        while (true) {
            if (lq + rq > s_.denominators) {
                throw InternalError("ratio: no fraction with a small enough denominator matches the value");
            }
            if (auto hit = gallop(v, lp, lq, rp, rq, 1)) return *hit;
            if (auto hit = gallop(v, rp, rq, lp, lq, -1)) return *hit;
        }
    }

    // Moves a towards b along (a + k b) for the largest k keeping the side
    // `want`; returns the value if a probe lands on it.
    std::optional<Rational> gallop(Vertex v, mpz_class& ap, mpz_class& aq, const mpz_class& bp,
                                   const mpz_class& bq, int want)
    {
        std::optional<Rational> hit;
        auto keeps_side = [&](const mpz_class& k) {
            mpz_class q = aq + k * bq;
            if (q > s_.denominators) return false;
            Rational t(ap + k * bp, q);
            t.canonicalize();
            int c = side(v, t);
            if (c == 0) hit = t;
            return c == want;
        };
        mpz_class good = 0, bad = 1;
        while (keeps_side(bad)) {
            good = bad;
            bad *= 2;
        }
        if (hit) return hit;
        while (bad - good > 1) {
            mpz_class mid = (good + bad) / 2;
            if (keeps_side(mid)) {
                good = mid;
            } else {
                if (hit) return hit;
                bad = mid;
            }
        }
        ap += good * bp;
        aq += good * bq;
        return std::nullopt;
    }

    const Arena& arena_;
    const RatioScaling& s_;
    std::map<Rational, std::vector<Rational>> cache_;
};

std::vector<Rational> ratio_values(const Arena& arena, const RatioScaling& s)
{
    return RatioSearch(arena, s).values();
}

}  // namespace

SolveResult solve_ratio(const MinMaxInstance& inst)
{
    const GameGraph& g = inst.game();
    WeightedGraph rewards(g.num_vertices());
    for (const Edge& e : g.edges()) rewards[e.from].push_back({e.to, e.reward});
    if (auto m = min_cycle_mean(rewards); m && *m <= 0) {
        throw GameError("non-diverging reward: some cycle has reward sum <= 0");
    }
    const Arena arena = detail::make_arena(inst);
    const RatioScaling s = scale_ratio(g);
    std::vector<Rational> scaled = ratio_values(arena, s);
    auto res = with_edge_fixing(inst, arena, scaled, [&](const Arena& a) { return ratio_values(a, s); });
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        Rational q = scaled[v] * s.factor;
        q.canonicalize();
        res.values[v] = ExtRational(q);
    }
    return res;
}

}  // namespace costgames
