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
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>

namespace costgames {

MinMaxInstance MinMaxInstance::for_player(const GameGraph& g, PlayerId i, CostSpec objective)
{
    MinMaxInstance inst{&g, std::vector<bool>(g.num_vertices()), std::move(objective)};
    for (Vertex v = 0; v < g.num_vertices(); ++v) inst.min_vertices[v] = g.owner(v) == i;
    return inst;
}

MinMaxInstance MinMaxInstance::single_side(const GameGraph& g, Side side, CostSpec objective)
{
    return MinMaxInstance{&g, std::vector<bool>(g.num_vertices(), side == Side::Min), std::move(objective)};
}

namespace detail {

Arena make_arena(const MinMaxInstance& inst)
{
    const GameGraph& g = inst.game();
    Arena arena;
    arena.out.resize(g.num_vertices());
    arena.is_min = inst.min_vertices;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.out_edges(v).empty()) throw GameError("sink vertex " + g.vertex_name(v));
        for (EdgeId e : g.out_edges(v)) arena.out[v].push_back({g.edge(e).to, e});
    }
    return arena;
}

std::vector<std::pair<Vertex, Vertex>> fix_edges(Arena arena, const std::vector<Vertex>& vertices,
                                                 const std::vector<Rational>& target, ValuesFn values)
{
    std::vector<std::pair<Vertex, Vertex>> chosen;
    for (Vertex v : vertices) {
        const std::vector<Arc> options = arena.out[v];
        bool fixed = false;
        for (std::size_t i = 0; i < options.size(); ++i) {
            arena.out[v] = {options[i]};
            // positional optimal strategies exist, so the last candidate must work
            if (i + 1 == options.size() || values(arena) == target) {
                chosen.emplace_back(v, options[i].to);
                fixed = true;
                break;
            }
        }
        if (!fixed) throw InternalError("edge fixing found no value-preserving edge");
    }
    return chosen;
}

WeightedGraph one_player_graph(const Arena& arena, const std::vector<Rational>& weight,
                               const std::vector<std::optional<Vertex>>& fixed)
{
    WeightedGraph graph(arena.out.size());
    for (Vertex v = 0; v < arena.out.size(); ++v) {
        for (const Arc& a : arena.out[v]) {
            if (fixed[v] && *fixed[v] != a.to) continue;
            graph[v].push_back({a.to, weight[a.edge]});
        }
    }
    return graph;
}

}  // namespace detail

LassoPlay profile_outcome(const GameGraph& g, const PositionalStrategy& sigma_min,
                          const PositionalStrategy& sigma_max, Vertex start)
{
    std::vector<std::size_t> seen_at(g.num_vertices(), static_cast<std::size_t>(-1));
    std::vector<Vertex> path;
    Vertex v = start;
    while (seen_at[v] == static_cast<std::size_t>(-1)) {
        seen_at[v] = path.size();
        path.push_back(v);
        v = sigma_min.controls(v) ? sigma_min.at(v) : sigma_max.at(v);
    }
    std::vector<Vertex> prefix(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(seen_at[v]));
    std::vector<Vertex> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), path.end());
    return LassoPlay(std::move(prefix), std::move(cycle));
}

std::vector<bool> attractor(const MinMaxInstance& inst, const std::vector<bool>& target, Side forcing)
{
    const GameGraph& g = inst.game();
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<Vertex>> preds(n);
    std::vector<std::size_t> remaining(n, 0);
    for (const Edge& e : g.edges()) {
        preds[e.to].push_back(e.from);
        ++remaining[e.from];
    }
    std::vector<bool> in(n, false);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        if (target.at(v)) {
            in[v] = true;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex p : preds[u]) {
            if (in[p]) continue;
            bool forcer = inst.is_min(p) == (forcing == Side::Min);
            if (forcer || --remaining[p] == 0) {
                in[p] = true;
                queue.push_back(p);
            }
        }
    }
    return in;
}

namespace {

PositionalStrategy empty_strategy(std::size_t n)
{
    return PositionalStrategy{std::vector<std::optional<Vertex>>(n)};
}

void require_nonnegative_prices(const GameGraph& g)
{
    for (const Edge& e : g.edges()) {
        if (e.price < 0) throw GameError("reachability-price solving needs nonnegative prices");
    }
}

}  // namespace

SolveResult solve_reachability_price(const MinMaxInstance& inst)
{
    const auto& rp = std::get<ReachabilityPrice>(inst.objective);
    const GameGraph& g = inst.game();
    const std::size_t n = g.num_vertices();
    require_nonnegative_prices(g);
    detail::make_arena(inst);  // rejects sinks

    std::vector<bool> goal(n, false);
    for (Vertex v : rp.goal) goal.at(v) = true;

    SolveResult res{std::vector<ExtRational>(n, ExtRational::pos_inf()), empty_strategy(n), empty_strategy(n)};
    std::vector<bool> done(n, false);
    std::vector<std::size_t> unfinished(n, 0);
    std::vector<std::optional<ExtRational>> tentative(n);
    std::vector<std::optional<EdgeId>> via(n);
    std::vector<std::vector<EdgeId>> in_edges(n);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        in_edges[g.edge(e).to].push_back(e);
        ++unfinished[g.edge(e).from];
    }

    auto finalize = [&](Vertex v, ExtRational value) {
        done[v] = true;
        res.values[v] = value;
        for (EdgeId e : in_edges[v]) {
            Vertex p = g.edge(e).from;
            if (done[p]) continue;
            ExtRational cand = ExtRational(g.edge(e).price) + value;
            --unfinished[p];
            if (inst.is_min(p)) {
                // Min may commit as soon as one successor is final
                if (!tentative[p] || cand < *tentative[p] || (cand == *tentative[p] && e < *via[p])) {
                    tentative[p] = cand;
                    via[p] = e;
                }
            } else if (unfinished[p] == 0) {
                ExtRational best = ExtRational::neg_inf();
                EdgeId arg = 0;
                for (EdgeId f : g.out_edges(p)) {
                    ExtRational c = ExtRational(g.edge(f).price) + res.values[g.edge(f).to];
                    if (c > best) {
                        best = c;
                        arg = f;
                    }
                }
                tentative[p] = best;
                via[p] = arg;
            }
        }
    };

    for (Vertex v = 0; v < n; ++v) {
        if (goal[v]) finalize(v, ExtRational(0));
    }
    while (true) {
        std::optional<Vertex> pick;
        for (Vertex v = 0; v < n; ++v) {
            if (done[v] || !tentative[v]) continue;
            if (!pick || *tentative[v] < *tentative[*pick]) pick = v;
        }
        if (!pick) break;
        Vertex v = *pick;
        if (inst.is_min(v)) {
            res.sigma_min.choice[v] = g.edge(*via[v]).to;
        } else {
            res.sigma_max.choice[v] = g.edge(*via[v]).to;
        }
        finalize(v, *tentative[v]);
    }

    // goal vertices and the +inf region
    for (Vertex v = 0; v < n; ++v) {
        auto& strat = inst.is_min(v) ? res.sigma_min : res.sigma_max;
        if (strat.controls(v)) continue;
        Vertex pick = g.edge(g.out_edges(v).front()).to;
        if (!inst.is_min(v) && !done[v]) {
            for (EdgeId e : g.out_edges(v)) {
                if (!done[g.edge(e).to]) {
                    pick = g.edge(e).to;
                    break;
                }
            }
        }
        strat.choice[v] = pick;
    }
    return res;
}

namespace {

// Exact discounted values of a fixed positional profile (a functional graph).
std::vector<Rational> discounted_profile_values(const GameGraph& g, const Rational& lambda,
                                                const std::vector<Vertex>& next)
{
    const std::size_t n = next.size();
    std::vector<std::optional<Rational>> val(n);
    std::vector<int> state(n, 0);  // 0 new, 1 on current walk, 2 done
    const Rational one_minus = 1 - lambda;
    for (Vertex s = 0; s < n; ++s) {
        if (val[s]) continue;
        std::vector<Vertex> walk;
        Vertex v = s;
        while (!val[v] && state[v] == 0) {
            state[v] = 1;
            walk.push_back(v);
            v = next[v];
        }
        std::size_t tail_end = walk.size();
        if (!val[v]) {
            // v closes a cycle on the current walk
            auto start = std::find(walk.begin(), walk.end(), v);
            std::vector<Vertex> cycle(start, walk.end());
            tail_end = static_cast<std::size_t>(start - walk.begin());
            Rational sum = 0;
            Rational w = 1;
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                sum += w * g.edge_between(cycle[i], cycle[(i + 1) % cycle.size()]).price;
                w *= lambda;
            }
            Rational head = one_minus * sum / (1 - w);
            val[cycle[0]] = head;
            for (std::size_t i = cycle.size() - 1; i >= 1; --i) {
                Vertex u = cycle[i];
                Vertex nu = cycle[(i + 1) % cycle.size()];
                val[u] = one_minus * g.edge_between(u, nu).price + lambda * *val[nu];
            }
        }
        for (std::size_t i = tail_end; i-- > 0;) {
            Vertex u = walk[i];
            val[u] = one_minus * g.edge_between(u, next[u]).price + lambda * *val[next[u]];
        }
        for (Vertex u : walk) state[u] = 2;
    }
    std::vector<Rational> out(n);
    for (Vertex v = 0; v < n; ++v) {
        out[v] = *val[v];
        out[v].canonicalize();
    }
    return out;
}

SolveResult discounted_result(const MinMaxInstance& inst, const std::vector<Vertex>& next)
{
    const GameGraph& g = inst.game();
    const Rational& lambda = std::get<DiscountedPrice>(inst.objective).lambda;
    const std::size_t n = g.num_vertices();
    SolveResult res{{}, empty_strategy(n), empty_strategy(n)};
    for (const Rational& q : discounted_profile_values(g, lambda, next)) res.values.emplace_back(q);
    for (Vertex v = 0; v < n; ++v) {
        (inst.is_min(v) ? res.sigma_min : res.sigma_max).choice[v] = next[v];
    }
    return res;
}

}  // namespace

SolveResult solve_discounted(const MinMaxInstance& inst, std::optional<ApproxMode> approx)
{
    const GameGraph& g = inst.game();
    const Rational& lambda = std::get<DiscountedPrice>(inst.objective).lambda;
    if (lambda <= 0 || lambda >= 1) throw GameError("lambda out of range (0,1)");
    const detail::Arena arena = detail::make_arena(inst);
    const std::size_t n = g.num_vertices();

    if (approx) {
        const double lam = lambda.get_d();
        const double tol = approx->epsilon * (1 - lam) / (2 * lam);
        std::vector<double> x(n, 0.0), y(n, 0.0);
        auto q = [&](const detail::Arc& a, const std::vector<double>& vals) {
            return (1 - lam) * g.edge(a.edge).price.get_d() + lam * vals[a.to];
        };
        while (true) {
            double residual = 0;
            for (Vertex v = 0; v < n; ++v) {
                double best = q(arena.out[v].front(), x);
                for (const auto& a : arena.out[v]) {
                    double c = q(a, x);
                    best = arena.is_min[v] ? std::min(best, c) : std::max(best, c);
                }
                y[v] = best;
                residual = std::max(residual, std::abs(y[v] - x[v]));
            }
            std::swap(x, y);
            if (residual < tol) break;
        }
        std::vector<Vertex> next(n);
        for (Vertex v = 0; v < n; ++v) {
            const detail::Arc* best = &arena.out[v].front();
            for (const auto& a : arena.out[v]) {
                double c = q(a, x), b = q(*best, x);
                if (arena.is_min[v] ? c < b : c > b) best = &a;
            }
            next[v] = best->to;
        }
        return discounted_result(inst, next);
    }

    // Strategy iteration: Max best-responds by policy iteration, then Min
    // switches every vertex where another edge is strictly better.
    std::vector<Vertex> next(n);
    for (Vertex v = 0; v < n; ++v) next[v] = arena.out[v].front().to;
    const Rational one_minus = 1 - lambda;
    auto improve = [&](bool for_min, const std::vector<Rational>& val) {
        bool changed = false;
        for (Vertex v = 0; v < n; ++v) {
            if (arena.is_min[v] != for_min) continue;
            auto q = [&](Vertex to) -> Rational {
                return one_minus * g.edge_between(v, to).price + lambda * val[to];
            };
            Rational current = q(next[v]);
            std::optional<Vertex> best;
            Rational best_q;
            for (const auto& a : arena.out[v]) {
                Rational c = q(a.to);
                if (!best || (for_min ? c < best_q : c > best_q)) {
                    best = a.to;
                    best_q = c;
                }
            }
            if (for_min ? best_q < current : best_q > current) {
                next[v] = *best;
                changed = true;
            }
        }
        return changed;
    };
    while (true) {
        while (improve(false, discounted_profile_values(g, lambda, next))) {
        }
        if (!improve(true, discounted_profile_values(g, lambda, next))) break;
    }
    return discounted_result(inst, next);
}

SolveResult solve(const MinMaxInstance& inst)
{
    if (std::holds_alternative<ReachabilityPrice>(inst.objective)) return solve_reachability_price(inst);
    if (std::holds_alternative<DiscountedPrice>(inst.objective)) return solve_discounted(inst);
    if (std::holds_alternative<MeanPayoff>(inst.objective)) return solve_mean_payoff(inst);
    if (std::holds_alternative<RatioAverage>(inst.objective)) return solve_ratio(inst);
    throw GameError("energy_sup objectives cannot be solved");
}

BruteForceResult brute_force_value(const MinMaxInstance& inst, std::size_t cap)
{
    const GameGraph& g = inst.game();
    const std::size_t n = g.num_vertices();
    detail::make_arena(inst);

    std::vector<Vertex> min_side, max_side;
    std::size_t profiles = 1;
    for (Vertex v = 0; v < n; ++v) {
        (inst.is_min(v) ? min_side : max_side).push_back(v);
        profiles *= g.out_edges(v).size();
        if (profiles > cap) throw GameError("brute force: too many positional profiles");
    }

    auto enumerate = [&](const std::vector<Vertex>& side, const std::function<void(PositionalStrategy&)>& body) {
        PositionalStrategy s = empty_strategy(n);
        std::vector<std::size_t> digit(side.size(), 0);
        for (std::size_t i = 0; i < side.size(); ++i) s.choice[side[i]] = g.edge(g.out_edges(side[i])[0]).to;
        while (true) {
            body(s);
            std::size_t i = 0;
            for (; i < side.size(); ++i) {
                auto outs = g.out_edges(side[i]);
                if (++digit[i] < outs.size()) {
                    s.choice[side[i]] = g.edge(outs[digit[i]]).to;
                    break;
                }
                digit[i] = 0;
                s.choice[side[i]] = g.edge(outs[0]).to;
            }
            if (i == side.size()) break;
        }
    };
    auto outcome_values = [&](const PositionalStrategy& smin, const PositionalStrategy& smax) {
        std::vector<ExtRational> vals;
        vals.reserve(n);
        for (Vertex v = 0; v < n; ++v) vals.push_back(eval_lasso(inst.objective, profile_outcome(g, smin, smax, v), g));
        return vals;
    };

    BruteForceResult out{std::vector<ExtRational>(n, ExtRational::pos_inf()),
                         std::vector<ExtRational>(n, ExtRational::neg_inf())};
    enumerate(min_side, [&](PositionalStrategy& smin) {
        std::vector<ExtRational> worst(n, ExtRational::neg_inf());
        enumerate(max_side, [&](PositionalStrategy& smax) {
            auto vals = outcome_values(smin, smax);
            for (Vertex v = 0; v < n; ++v) worst[v] = max(worst[v], vals[v]);
        });
        for (Vertex v = 0; v < n; ++v) out.min_max[v] = min(out.min_max[v], worst[v]);
    });
    enumerate(max_side, [&](PositionalStrategy& smax) {
        std::vector<ExtRational> best(n, ExtRational::pos_inf());
        enumerate(min_side, [&](PositionalStrategy& smin) {
            auto vals = outcome_values(smin, smax);
            for (Vertex v = 0; v < n; ++v) best[v] = min(best[v], vals[v]);
        });
        for (Vertex v = 0; v < n; ++v) out.max_min[v] = max(out.max_min[v], best[v]);
    });
    return out;
}

namespace {

struct Scaled {
    std::vector<Rational> price;   // integers after scaling
    std::vector<Rational> reward;  // integers after scaling
    Rational price_scale;          // actual price = scaled / price_scale
    Rational reward_scale;
};

Scaled scale_edges(const GameGraph& g)
{
    mpz_class lp = 1, lr = 1;
    for (const Edge& e : g.edges()) {
        mpz_lcm(lp.get_mpz_t(), lp.get_mpz_t(), e.price.get_den_mpz_t());
        mpz_lcm(lr.get_mpz_t(), lr.get_mpz_t(), e.reward.get_den_mpz_t());
    }
    Scaled s{{}, {}, Rational(lp), Rational(lr)};
    for (const Edge& e : g.edges()) {
        s.price.emplace_back(e.price * s.price_scale);
        s.reward.emplace_back(e.reward * s.reward_scale);
    }
    return s;
}

// Lawler: bisection on t over "the optimum reachable cycle mean of
// price - t * reward is >= 0", then snapping to the simplest fraction.
OnePlayerOptimum one_player_ratio(const GameGraph& g, bool minimize, Vertex start)
{
    Scaled s = scale_edges(g);
    if (!minimize) {
        for (auto& p : s.price) p = -p;
    }
    Rational pmax = 0, rmax = 0;
    for (const auto& p : s.price) pmax = std::max(pmax, Rational(abs(p)));
    for (const auto& r : s.reward) rmax = std::max(rmax, Rational(abs(r)));
    const Rational n = static_cast<long>(g.num_vertices());
    const Rational denom_bound = n * rmax;
    const Rational width = 1 / (denom_bound * denom_bound);

    auto weights_at = [&](const Rational& t) {
        WeightedGraph wg(g.num_vertices());
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            wg[g.edge(e).from].push_back({g.edge(e).to, Rational(s.price[e] - t * s.reward[e])});
        }
        return wg;
    };
    Rational lo = -(n * pmax) - 1, hi = n * pmax + 1;
    std::optional<Rational> exact;
    while (!exact && hi - lo >= width) {
        Rational mid = (lo + hi) / 2;
        Rational m = reachable_cycle_mean(weights_at(mid), true)[start];
        if (m > 0) {
            lo = mid;
        } else if (m < 0) {
            hi = mid;
        } else {
            exact = mid;
        }
    }
    Rational t = exact ? *exact : detail::simplest_between(lo, hi);
    CycleWitness w = best_reachable_cycle(weights_at(t), start, true);
    if (w.mean != 0) throw InternalError("one_player_ratio: snapped ratio is not a root");
    Rational value = t * s.reward_scale / s.price_scale;
    if (!minimize) value = -value;
    return {ExtRational(value), LassoPlay(std::move(w.path), std::move(w.cycle))};
}

}  // namespace

OnePlayerOptimum one_player_optimum(const GameGraph& g, const CostSpec& spec, bool minimize, Vertex start)
{
    if (!is_solvable(spec)) throw GameError("energy_sup objectives cannot be optimized");
    if (start >= g.num_vertices()) throw GameError("start vertex out of range");
    const Side side = minimize ? Side::Min : Side::Max;

    if (std::holds_alternative<MeanPayoff>(spec)) {
        WeightedGraph wg(g.num_vertices());
        for (const Edge& e : g.edges()) wg[e.from].push_back({e.to, e.price});
        CycleWitness w = best_reachable_cycle(wg, start, minimize);
        return {ExtRational(w.mean), LassoPlay(std::move(w.path), std::move(w.cycle))};
    }
    if (std::holds_alternative<RatioAverage>(spec)) return one_player_ratio(g, minimize, start);

    MinMaxInstance inst = MinMaxInstance::single_side(g, side, spec);
    SolveResult res = solve(inst);
    LassoPlay witness = profile_outcome(g, res.sigma_min, res.sigma_max, start);
    return {res.values[start], std::move(witness)};
}

}  // namespace costgames
