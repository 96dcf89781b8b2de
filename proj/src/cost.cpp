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

#include "costgames/cost.hpp"

#include <algorithm>

namespace costgames {

namespace {

Rational power(const Rational& base, std::size_t exponent)
{
    Rational result = 1;
    for (std::size_t i = 0; i < exponent; ++i) result *= base;
    return result;
}

// Edge prices along prefix + cycle: the first p = |prefix| edges are
// transient, the next c = |cycle| repeat forever.
struct LassoEdges {
    std::vector<const Edge*> transient;
    std::vector<const Edge*> periodic;
};

LassoEdges lasso_edges(const LassoPlay& play, const GameGraph& g)
{
    LassoEdges out;
    const std::size_t p = play.prefix().size();
    const std::size_t c = play.cycle().size();
    for (std::size_t i = 0; i < p; ++i) out.transient.push_back(&g.edge_between(play.at(i), play.at(i + 1)));
    for (std::size_t i = p; i < p + c; ++i) out.periodic.push_back(&g.edge_between(play.at(i), play.at(i + 1)));
    return out;
}

ExtRational eval_reachability(const ReachabilityPrice& rp, const LassoPlay& play, const GameGraph& g)
{
    const std::size_t horizon = play.prefix().size() + play.cycle().size();
    Rational sum = 0;
    for (std::size_t i = 0; i < horizon; ++i) {
        Vertex v = play.at(i);
        if (std::binary_search(rp.goal.begin(), rp.goal.end(), v)) return ExtRational(sum);
        sum += g.edge_between(v, play.at(i + 1)).price;
    }
    return ExtRational::pos_inf();
}

ExtRational eval_discounted(const DiscountedPrice& dp, const LassoPlay& play, const GameGraph& g)
{
    const Rational& lambda = dp.lambda;
    LassoEdges edges = lasso_edges(play, g);
    Rational transient = 0;
    Rational weight = 1;
    for (const Edge* e : edges.transient) {
        transient += weight * e->price;
        weight *= lambda;
    }
    Rational cycle = 0;
    Rational cw = 1;
    for (const Edge* e : edges.periodic) {
        cycle += cw * e->price;
        cw *= lambda;
    }
    // cw == lambda^c; the cycle sum repeats with factor lambda^c
    Rational total = (1 - lambda) * (transient + weight * cycle / (1 - cw));
    return ExtRational(total);
}

ExtRational eval_energy(const EnergySup& es, const LassoPlay& play, const GameGraph& g)
{
    LassoEdges edges = lasso_edges(play, g);
    Rational cycle_sum = 0;
    for (const Edge* e : edges.periodic) cycle_sum += e->price;
    if (cycle_sum > 0) return ExtRational::pos_inf();
    // with a nonpositive cycle the running sum peaks within prefix + one unrolling
    Rational running = 0;
    Rational best = 0;
    for (const Edge* e : edges.transient) {
        running += e->price;
        best = std::max(best, running);
    }
    for (const Edge* e : edges.periodic) {
        running += e->price;
        best = std::max(best, running);
    }
    if (best > es.threshold) return ExtRational::pos_inf();
    return ExtRational(best);
}

}  // namespace

ExtRational eval_lasso(const CostSpec& spec, const LassoPlay& play, const GameGraph& g)
{
    if (const auto* rp = std::get_if<ReachabilityPrice>(&spec)) return eval_reachability(*rp, play, g);
    if (const auto* dp = std::get_if<DiscountedPrice>(&spec)) return eval_discounted(*dp, play, g);
    if (const auto* es = std::get_if<EnergySup>(&spec)) return eval_energy(*es, play, g);

    LassoEdges edges = lasso_edges(play, g);
    Rational prices = 0;
    Rational rewards = 0;
    for (const Edge* e : edges.periodic) {
        prices += e->price;
        rewards += e->reward;
    }
    if (std::holds_alternative<MeanPayoff>(spec)) {
        return ExtRational(Rational(prices / static_cast<long>(edges.periodic.size())));
    }
    if (rewards <= 0) throw GameError("non-diverging reward on this lasso");
    return ExtRational(Rational(prices / rewards));
}

ExtRational PrefixCoefficients::apply(const ExtRational& cost) const
{
    return ExtRational(a) + b * cost;
}

PrefixCoefficients prefix_decompose(const CostSpec& spec, const History& h, const GameGraph& g)
{
    check_history(g, h);
    const std::size_t k = h.size() - 1;

    if (const auto* rp = std::get_if<ReachabilityPrice>(&spec)) {
        Rational sum = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            if (std::binary_search(rp->goal.begin(), rp->goal.end(), h[i])) return {sum, 0};
            if (i < k) sum += g.edge_between(h[i], h[i + 1]).price;
        }
        return {sum, 1};
    }
    if (const auto* dp = std::get_if<DiscountedPrice>(&spec)) {
        Rational sum = 0;
        Rational weight = 1;
        for (std::size_t i = 0; i < k; ++i) {
            sum += weight * g.edge_between(h[i], h[i + 1]).price;
            weight *= dp->lambda;
        }
        return {Rational((1 - dp->lambda) * sum), power(dp->lambda, k)};
    }
    if (std::holds_alternative<EnergySup>(spec)) {
        throw GameError("energy_sup is not cost-prefix-linear");
    }
    return {0, 1};
}

LassoPlay concat(const History& h, const LassoPlay& rho)
{
    if (h.empty() || h.back() != rho.first()) throw GameError("concat: the play must start at the last history vertex");
    std::vector<Vertex> prefix(h.begin(), h.end() - 1);
    prefix.insert(prefix.end(), rho.prefix().begin(), rho.prefix().end());
    return LassoPlay(std::move(prefix), rho.cycle());
}

Rational partial_price_average(const History& path, const GameGraph& g)
{
    if (path.size() < 2) throw GameError("partial_price_average needs at least one edge");
    Rational sum = 0;
    for (std::size_t i = 1; i < path.size(); ++i) sum += g.edge_between(path[i - 1], path[i]).price;
    return Rational(sum / static_cast<long>(path.size() - 1));
}

}  // namespace costgames
