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

#include "costgames/equilibrium.hpp"

#include <algorithm>
#include <functional>
#include <future>

namespace costgames {

namespace {

// Runs f(i) for each index, on worker threads when asked. Results keep index order.
template <class F>
auto for_each_player(std::size_t count, bool parallel, F f)
{
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out;
    out.reserve(count);
    if (!parallel || count < 2) {
        for (std::size_t i = 0; i < count; ++i) out.push_back(f(i));
        return out;
    }
    std::vector<std::future<R>> jobs;
    for (std::size_t i = 0; i < count; ++i) jobs.push_back(std::async(std::launch::async, f, i));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

void require_specs(const GameGraph& g, const SpecMap& specs, Vertex v0)
{
    if (v0 >= g.num_vertices()) throw GameError("initial vertex out of range");
    for (PlayerId p = 0; p < g.num_players(); ++p) {
        auto it = specs.find(p);
        if (it == specs.end()) throw GameError("missing objective for player " + g.player_name(p));
        if (!is_solvable(it->second)) {
            throw GameError("objective of player " + g.player_name(p) + " is not supported for synthesis");
        }
    }
    ValidationReport report = validate_game(g, specs);
    if (!report.empty()) throw GameError(report.front().message);
}

struct ProductLasso {
    std::vector<Vertex> vertex;                   // positions 0..n
    std::vector<std::vector<std::size_t>> memory;  // memory before reading vertex[l]
    std::size_t loop = 0;                         // position n is followed by position loop
};

// Plays the automata (one per player, each controlling its owner's vertices)
// until a (vertex, memories) pair repeats.
ProductLasso simulate(const GameGraph& g, const std::vector<const StrategyAutomaton*>& by_player, Vertex v0)
{
    ProductLasso out;
    std::map<std::pair<Vertex, std::vector<std::size_t>>, std::size_t> seen;
    std::vector<std::size_t> mem;
    for (const auto* a : by_player) mem.push_back(a->initial);
    Vertex v = v0;
    while (true) {
        auto [it, fresh] = seen.emplace(std::make_pair(v, mem), out.vertex.size());
        if (!fresh) {
            out.loop = it->second;
            return out;
        }
        out.vertex.push_back(v);
        out.memory.push_back(mem);
        const StrategyAutomaton& owner = *by_player[g.owner(v)];
        const auto& adv = owner.advice[mem[g.owner(v)]][v];
        if (!adv) throw GameError("strategy of " + g.player_name(g.owner(v)) + " gives no move at " + g.vertex_name(v));
        for (std::size_t p = 0; p < by_player.size(); ++p) mem[p] = by_player[p]->update[mem[p]][v];
        v = *adv;
    }
}

LassoPlay project(const ProductLasso& pl)
{
    std::vector<Vertex> prefix(pl.vertex.begin(), pl.vertex.begin() + static_cast<std::ptrdiff_t>(pl.loop));
    std::vector<Vertex> cycle(pl.vertex.begin() + static_cast<std::ptrdiff_t>(pl.loop), pl.vertex.end());
    return LassoPlay(std::move(prefix), std::move(cycle));
}

std::vector<const StrategyAutomaton*> by_player(const GameGraph& g, const std::map<PlayerId, StrategyAutomaton>& automata)
{
    std::vector<const StrategyAutomaton*> out;
    for (PlayerId p = 0; p < g.num_players(); ++p) {
        auto it = automata.find(p);
        if (it == automata.end()) throw GameError("no strategy for player " + g.player_name(p));
        if (it->second.coalition || it->second.player != p) {
            throw GameError("strategy given for " + g.player_name(p) + " does not control its vertices");
        }
        check_automaton(g, it->second);
        out.push_back(&it->second);
    }
    return out;
}

/*
 * Strategy of player i: follow the play path[0..n] (position n loops back
 * to position k) and, once some j != i leaves it, play j's punishment
 * automaton from its initial memory.
 *
 * Edge state (a, b) means "read position a, now expecting position b". A
 * deviation is blamed on the owner of the vertex at position a: comparing
 * against the expected vertex checks the edge actually taken, even when the
 * deviator lands on a vertex that occurs elsewhere on the play.
 */
StrategyAutomaton build_tau(const GameGraph& g, PlayerId i, const std::vector<Vertex>& path, std::size_t k,
                            const std::function<std::string(std::size_t, std::size_t)>& edge_label,
                            const std::function<Vertex(Vertex)>& self_advice,
                            const std::map<PlayerId, StrategyAutomaton>& punish)
{
    const std::size_t n = path.size() - 1;
    const std::size_t nv = g.num_vertices();
    auto next = [&](std::size_t b) { return b < n ? b + 1 : k; };

    std::vector<std::pair<std::size_t, std::size_t>> edge_states{{0, 0}};
    for (std::size_t l = 1; l <= n; ++l) edge_states.emplace_back(l - 1, l);
    edge_states.emplace_back(n, k);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
    StrategyAutomaton a;
    a.player = i;
    a.coalition = false;
    for (auto st : edge_states) {
        if (index.emplace(st, a.states.size()).second) a.states.push_back(edge_label(st.first, st.second));
    }
    std::map<PlayerId, std::size_t> punish_base;
    for (const auto& [j, aut] : punish) {
        if (j == i) continue;
        punish_base[j] = a.states.size();
        for (std::size_t m = 0; m < aut.size(); ++m) {
            a.states.push_back(aut.size() == 1 ? g.player_name(j) : g.player_name(j) + ":" + aut.states[m]);
        }
    }
    a.initial = 0;
    a.update.assign(a.states.size(), std::vector<std::size_t>(nv, 0));
    a.advice.assign(a.states.size(), std::vector<std::optional<Vertex>>(nv));

    auto mine = [&](Vertex v) { return g.owner(v) == i; };
    for (const auto& [st, s] : index) {
        const auto [pa, pb] = st;
        for (Vertex v = 0; v < nv; ++v) {
            if (v == path[pb]) {
                a.update[s][v] = index.at({pb, next(pb)});
                if (mine(v)) a.advice[s][v] = path[next(pb)];
                continue;
            }
            PlayerId j = g.owner(path[pa]);
            if (j == i) {
                // only reachable if i itself left the play
                a.update[s][v] = s;
                if (mine(v)) a.advice[s][v] = self_advice(v);
                continue;
            }
            const StrategyAutomaton& pun = punish.at(j);
            a.update[s][v] = punish_base.at(j) + pun.update[pun.initial][v];
            if (mine(v)) a.advice[s][v] = pun.advice[pun.initial][v];
        }
    }
    for (const auto& [j, base] : punish_base) {
        const StrategyAutomaton& pun = punish.at(j);
        for (std::size_t m = 0; m < pun.size(); ++m) {
            for (Vertex v = 0; v < nv; ++v) {
                a.update[base + m][v] = base + pun.update[m][v];
                if (mine(v)) a.advice[base + m][v] = pun.advice[m][v];
            }
        }
    }
    check_automaton(g, a);
    return a;
}

GameGraph restrict_player(const GameGraph& g, PlayerId i, const PositionalStrategy& s)
{
    GameGraph::Builder b;
    for (PlayerId p = 0; p < g.num_players(); ++p) b.add_player(g.player_name(p));
    for (Vertex v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.vertex_name(v), g.owner(v));
    for (const Edge& e : g.edges()) {
        if (g.owner(e.from) == i && s.at(e.from) != e.to) continue;
        b.add_edge(e.from, e.to, e.price, e.reward);
    }
    return std::move(b).build();
}

void apply_overrides(const GameGraph& g, PlayerId i, const CostSpec& spec, const std::map<Vertex, Vertex>& moves,
                     SolveResult& res)
{
    for (auto [v, to] : moves) {
        if (v >= g.num_vertices() || g.owner(v) != i) {
            throw GameError("override for " + g.player_name(i) + " names a vertex it does not own");
        }
        if (!g.find_edge(v, to)) {
            throw GameError("override move " + g.vertex_name(v) + "->" + g.vertex_name(to) + " is not an edge");
        }
        res.sigma_min.choice[v] = to;
    }
    // The overridden strategy is optimal iff the opponents cannot exceed any value against it.
    GameGraph fixed = restrict_player(g, i, res.sigma_min);
    SolveResult check = solve(MinMaxInstance::for_player(fixed, i, spec));
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (check.values[v] != res.values[v]) {
            throw GameError("override for " + g.player_name(i) + " is not optimal: value at " + g.vertex_name(v) +
                            " rises from " + res.values[v].to_string() + " to " + check.values[v].to_string());
        }
    }
}

std::string pair_label(const GameGraph& g, Vertex a, Vertex b)
{
    const std::string& x = g.vertex_name(a);
    const std::string& y = g.vertex_name(b);
    if (x.size() == 1 && y.size() == 1) return x + y;
    return "(" + x + "," + y + ")";
}

}  // namespace

bool VerificationReport::is_equilibrium() const
{
    return std::none_of(players.begin(), players.end(), [](const PlayerCheck& c) { return c.profitable(); });
}

StrategyAutomaton build_strategy_automaton(const GameGraph& g, PlayerId i, const LassoPlay& rho,
                                           const PositionalStrategy& sigma_i,
                                           const std::map<PlayerId, PositionalStrategy>& punish)
{
    std::vector<Vertex> path = rho.prefix();
    path.insert(path.end(), rho.cycle().begin(), rho.cycle().end());
    const std::size_t k = rho.prefix().size();
    std::vector<Vertex> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw GameError("construction error: the play repeats a vertex before closing its cycle");
    }
    for (std::size_t l = 0; l < path.size(); ++l) {
        Vertex nxt = l + 1 < path.size() ? path[l + 1] : path[k];
        if (g.owner(path[l]) == i && sigma_i.at(path[l]) != nxt) {
            throw GameError("construction error: the play leaves the strategy of " + g.player_name(i) + " at " +
                            g.vertex_name(path[l]));
        }
    }
    std::map<PlayerId, StrategyAutomaton> punishers;
    for (PlayerId j = 0; j < g.num_players(); ++j) {
        if (j == i) continue;
        punishers.emplace(j, StrategyAutomaton::from_positional(g, j, true, punish.at(j)));
    }
    return build_tau(
        g, i, path, k, [&](std::size_t a, std::size_t b) { return pair_label(g, path[a], path[b]); },
        [&](Vertex v) { return sigma_i.at(v); }, punishers);
}

NashProfile synthesize_ne(const GameGraph& g, const SpecMap& specs, Vertex v0, const Overrides& overrides,
                          bool parallel)
{
    require_specs(g, specs, v0);
    const std::size_t np = g.num_players();
    std::vector<SolveResult> sol = for_each_player(np, parallel, [&](std::size_t i) {
        return solve(MinMaxInstance::for_player(g, i, specs.at(i)));
    });
    for (const auto& [i, moves] : overrides) {
        if (i >= np) throw GameError("override for an unknown player");
        apply_overrides(g, i, specs.at(i), moves, sol[i]);
    }

    PositionalStrategy profile{std::vector<std::optional<Vertex>>(g.num_vertices())};
    for (Vertex v = 0; v < g.num_vertices(); ++v) profile.choice[v] = sol[g.owner(v)].sigma_min.at(v);
    PositionalStrategy none{std::vector<std::optional<Vertex>>(g.num_vertices())};

    NashProfile out;
    out.initial = v0;
    out.outcome = profile_outcome(g, profile, none, v0);
    std::map<PlayerId, PositionalStrategy> punish;
    for (PlayerId j = 0; j < np; ++j) punish.emplace(j, sol[j].sigma_max);
    for (PlayerId i = 0; i < np; ++i) {
        out.automata.emplace(i, build_strategy_automaton(g, i, out.outcome, sol[i].sigma_min, punish));
        out.costs.emplace(i, eval_lasso(specs.at(i), out.outcome, g));
        out.values.emplace(i, sol[i].values[v0]);
        out.strategies.optimal.emplace(i, StrategyAutomaton::from_positional(g, i, false, sol[i].sigma_min));
        out.strategies.coalition.emplace(i, StrategyAutomaton::from_positional(g, i, true, sol[i].sigma_max));
    }
    return out;
}

NashProfile synthesize_ne_general(const GameGraph& g, const SpecMap& specs, Vertex v0,
                                  const SuppliedStrategies& supplied)
{
    require_specs(g, specs, v0);
    const std::size_t np = g.num_players();
    std::vector<const StrategyAutomaton*> optimal = by_player(g, supplied.optimal);
    for (PlayerId j = 0; j < np; ++j) {
        auto it = supplied.coalition.find(j);
        if (it == supplied.coalition.end()) throw GameError("no coalition strategy against " + g.player_name(j));
        if (!it->second.coalition || it->second.player != j) {
            throw GameError("coalition strategy against " + g.player_name(j) + " controls the wrong vertices");
        }
        check_automaton(g, it->second);
    }

    ProductLasso pl = simulate(g, optimal, v0);
    NashProfile out;
    out.initial = v0;
    out.outcome = project(pl);
    out.strategies = supplied;
    const bool positional = std::all_of(optimal.begin(), optimal.end(), [](auto* a) { return a->size() == 1; });
    for (PlayerId i = 0; i < np; ++i) {
        auto label = [&](std::size_t a, std::size_t b) {
            if (positional) return pair_label(g, pl.vertex[a], pl.vertex[b]);
            return "(" + g.vertex_name(pl.vertex[a]) + "@" + std::to_string(a) + "," + g.vertex_name(pl.vertex[b]) +
                   "@" + std::to_string(b) + ")";
        };
        const StrategyAutomaton& own = *optimal[i];
        auto self = [&](Vertex v) { return *own.advice[own.initial][v]; };
        std::map<PlayerId, StrategyAutomaton> punishers;
        for (PlayerId j = 0; j < np; ++j) {
            if (j != i) punishers.emplace(j, supplied.coalition.at(j));
        }
        out.automata.emplace(i, build_tau(g, i, pl.vertex, pl.loop, label, self, punishers));
        out.costs.emplace(i, eval_lasso(specs.at(i), out.outcome, g));
    }
    return out;
}

LassoPlay outcome_of(const GameGraph& g, const std::map<PlayerId, StrategyAutomaton>& automata, Vertex v0)
{
    if (v0 >= g.num_vertices()) throw GameError("initial vertex out of range");
    return project(simulate(g, by_player(g, automata), v0));
}

namespace {

/*
 * Best deviation of player j. Fixing every other player's automaton leaves a
 * one-player graph over (vertex, memories of the others): a vertex of i != j
 * keeps only the edge its automaton advises, a vertex of j keeps all edges.
 * Any strategy of j, with arbitrary memory, yields a play of this graph, and
 * every play of it is realized by some strategy of j. The objectives that can
 * be synthesized admit optimal positional plays in one-player graphs, so the
 * optimum computed here is the infimum over all deviations.
 */
PlayerCheck best_deviation(const GameGraph& g, const SpecMap& specs,
                           const std::vector<const StrategyAutomaton*>& aut, Vertex v0, PlayerId j,
                           const LassoPlay& outcome)
{
    const std::size_t np = g.num_players();
    using Node = std::pair<Vertex, std::vector<std::size_t>>;
    std::map<Node, Vertex> index;
    std::vector<Node> nodes;
    auto intern = [&](const Node& node) {
        auto [it, fresh] = index.emplace(node, nodes.size());
        if (fresh) nodes.push_back(node);
        return it->second;
    };
    std::vector<std::size_t> m0(np, 0);
    for (PlayerId p = 0; p < np; ++p) {
        if (p != j) m0[p] = aut[p]->initial;
    }
    intern({v0, m0});
    std::vector<std::tuple<Vertex, Vertex, EdgeId>> arcs;
    for (std::size_t at = 0; at < nodes.size(); ++at) {
        const auto [v, mem] = nodes[at];
        std::vector<std::size_t> next_mem = mem;
        for (PlayerId p = 0; p < np; ++p) {
            if (p != j) next_mem[p] = aut[p]->update[mem[p]][v];
        }
        const PlayerId o = g.owner(v);
        for (EdgeId e : g.out_edges(v)) {
            Vertex w = g.edge(e).to;
            if (o != j && *aut[o]->advice[mem[o]][v] != w) continue;
            arcs.emplace_back(at, intern({w, next_mem}), e);
        }
    }

    GameGraph::Builder b;
    for (PlayerId p = 0; p < np; ++p) b.add_player(g.player_name(p));
    for (const auto& [v, mem] : nodes) {
        std::string name = g.vertex_name(v) + "|";
        for (PlayerId p = 0; p < np; ++p) {
            if (p == j) continue;
            if (name.back() != '|') name += ',';
            name += aut[p]->states[mem[p]];
        }
        if (b.find_vertex(name)) name += "#" + std::to_string(b.find_vertex(name).value());
        b.add_vertex(name, g.owner(v));
    }
    for (auto [from, to, e] : arcs) b.add_edge(from, to, g.edge(e).price, g.edge(e).reward);
    GameGraph product = std::move(b).build();

    CostSpec spec = specs.at(j);
    if (auto* rp = std::get_if<ReachabilityPrice>(&spec)) {
        std::vector<Vertex> goal;
        for (Vertex x = 0; x < nodes.size(); ++x) {
            if (std::binary_search(rp->goal.begin(), rp->goal.end(), nodes[x].first)) goal.push_back(x);
        }
        spec = make_reachability(std::move(goal));
    }
    OnePlayerOptimum best = one_player_optimum(product, spec, true, 0);
    auto lift = [&](const std::vector<Vertex>& xs) {
        std::vector<Vertex> out;
        for (Vertex x : xs) out.push_back(nodes[x].first);
        return out;
    };
    PlayerCheck check;
    check.player = j;
    check.outcome_cost = eval_lasso(specs.at(j), outcome, g);
    check.best_response = best.value;
    check.witness = LassoPlay(lift(best.witness.prefix()), lift(best.witness.cycle()));
    return check;
}

}  // namespace

VerificationReport verify_ne(const GameGraph& g, const SpecMap& specs,
                             const std::map<PlayerId, StrategyAutomaton>& automata, Vertex v0, bool parallel)
{
    require_specs(g, specs, v0);
    std::vector<const StrategyAutomaton*> aut = by_player(g, automata);
    VerificationReport report;
    report.outcome = project(simulate(g, aut, v0));
    report.players = for_each_player(g.num_players(), parallel, [&](std::size_t j) {
        return best_deviation(g, specs, aut, v0, j, report.outcome);
    });
    return report;
}

}  // namespace costgames
