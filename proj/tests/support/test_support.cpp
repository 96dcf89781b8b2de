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

#include "test_support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace costgames::testing {

std::string data_path(const std::string& name) { return std::string(COSTGAMES_TEST_DATA) + "/" + name; }

GameDocument load_document(const std::string& name)
{
    std::ifstream in(data_path(name));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_game(buf.str());
}

const char* kind_name(ObjectiveKind k)
{
    switch (k) {
    case ObjectiveKind::Reachability: return "reachability";
    case ObjectiveKind::Discounted: return "discounted";
    case ObjectiveKind::MeanPayoff: return "mean_payoff";
    case ObjectiveKind::Ratio: return "ratio";
    }
    return "?";
}

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Rational random_price(Rng& rng, const GraphShape& shape)
{
    long lo = shape.negative_prices ? -3 : 0;
    Rational p = std::uniform_int_distribution<long>(lo, 4)(rng);
    if (shape.fractional_prices && uniform(rng, 0, 5) == 0) p /= 2;
    p.canonicalize();
    return p;
}

}  // namespace

GameGraph random_graph(Rng& rng, const GraphShape& shape)
{
    const std::size_t n = uniform(rng, shape.min_vertices, shape.max_vertices);
    GameGraph::Builder b;
    for (std::size_t p = 0; p < shape.players; ++p) b.add_player("p" + std::to_string(p + 1));
    for (std::size_t v = 0; v < n; ++v) {
        // every player owns at least one vertex when possible
        PlayerId owner = v < shape.players ? v : uniform(rng, 0, shape.players - 1);
        b.add_vertex("v" + std::to_string(v), owner);
    }
    std::vector<Vertex> targets(n);
    for (Vertex v = 0; v < n; ++v) targets[v] = v;
    for (Vertex v = 0; v < n; ++v) {
        std::shuffle(targets.begin(), targets.end(), rng);
        std::size_t deg = uniform(rng, 1, std::min(shape.max_out_degree, n));
        for (std::size_t k = 0; k < deg; ++k) {
            Rational reward = shape.rewards ? Rational(static_cast<long>(uniform(rng, 1, 3))) : Rational(1);
            b.add_edge(v, targets[k], random_price(rng, shape), reward);
        }
    }
    return std::move(b).build();
}

CostSpec random_spec(Rng& rng, const GameGraph& g, ObjectiveKind kind)
{
    switch (kind) {
    case ObjectiveKind::Reachability: {
        std::vector<Vertex> goal;
        std::size_t size = uniform(rng, 1, std::min<std::size_t>(2, g.num_vertices()));
        for (std::size_t k = 0; k < size; ++k) goal.push_back(uniform(rng, 0, g.num_vertices() - 1));
        return make_reachability(goal);
    }
    case ObjectiveKind::Discounted: {
        static const Rational lambdas[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(3, 4)};
        return DiscountedPrice{lambdas[uniform(rng, 0, 3)]};
    }
    case ObjectiveKind::MeanPayoff: return MeanPayoff{};
    case ObjectiveKind::Ratio: return RatioAverage{};
    }
    throw InternalError("unknown objective kind");
}

RandomMinMax random_min_max(Rng& rng, ObjectiveKind kind, std::size_t max_vertices)
{
    GraphShape shape;
    shape.max_vertices = max_vertices;
    shape.min_vertices = 1;
    shape.negative_prices = kind != ObjectiveKind::Reachability;
    shape.rewards = kind == ObjectiveKind::Ratio;
    auto g = std::make_unique<GameGraph>(random_graph(rng, shape));
    std::vector<bool> min_side(g->num_vertices());
    for (std::size_t v = 0; v < min_side.size(); ++v) min_side[v] = uniform(rng, 0, 1) == 1;
    MinMaxInstance inst{g.get(), min_side, random_spec(rng, *g, kind)};
    return RandomMinMax{std::move(g), std::move(inst)};
}

GameDocument random_equilibrium_game(Rng& rng, std::size_t max_vertices, std::size_t min_players,
                                     std::size_t max_players)
{
    GraphShape shape;
    shape.players = uniform(rng, min_players, max_players);
    shape.min_vertices = shape.players;
    shape.max_vertices = std::max(max_vertices, shape.players);
    shape.rewards = true;
    GameGraph g = random_graph(rng, shape);
    SpecMap specs;
    for (PlayerId p = 0; p < g.num_players(); ++p) specs.emplace(p, random_spec(rng, g, kSolvableKinds[uniform(rng, 0, 3)]));
    Vertex v0 = uniform(rng, 0, g.num_vertices() - 1);
    return GameDocument{std::move(g), std::move(specs), v0};
}

Rational bellman_residual(const MinMaxInstance& inst, const std::vector<ExtRational>& values)
{
    const GameGraph& g = inst.game();
    Rational worst = 0;
    auto note = [&](const ExtRational& lhs, const ExtRational& rhs) {
        if (lhs == rhs) return;
        if (!lhs.is_finite() || !rhs.is_finite()) throw InternalError("infinite Bellman residual");
        worst = std::max(worst, Rational(abs(lhs.value() - rhs.value())));
    };
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        std::optional<ExtRational> best;
        auto consider = [&](const ExtRational& c) {
            if (!best || (inst.is_min(v) ? c < *best : c > *best)) best = c;
        };
        if (const auto* rp = std::get_if<ReachabilityPrice>(&inst.objective)) {
            if (!values[v].is_finite()) continue;
            if (std::binary_search(rp->goal.begin(), rp->goal.end(), v)) {
                note(values[v], ExtRational(0));
                continue;
            }
            for (EdgeId e : g.out_edges(v)) consider(ExtRational(g.edge(e).price) + values[g.edge(e).to]);
        } else if (const auto* dp = std::get_if<DiscountedPrice>(&inst.objective)) {
            for (EdgeId e : g.out_edges(v)) {
                consider(ExtRational(Rational((1 - dp->lambda) * g.edge(e).price)) +
                         dp->lambda * values[g.edge(e).to]);
            }
        } else {
            // averaging objectives: the value is the best successor value
            for (EdgeId e : g.out_edges(v)) consider(values[g.edge(e).to]);
        }
        note(values[v], *best);
    }
    return worst;
}

StrategyAutomaton toggle_wrapper(const GameGraph& g, PlayerId player, bool coalition, const PositionalStrategy& s)
{
    StrategyAutomaton a;
    a.player = player;
    a.coalition = coalition;
    a.states = {"s0", "s1"};
    a.initial = 0;
    a.update.assign(2, std::vector<std::size_t>(g.num_vertices()));
    a.advice.assign(2, std::vector<std::optional<Vertex>>(g.num_vertices()));
    for (std::size_t m = 0; m < 2; ++m) {
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            a.update[m][v] = 1 - m;
            if (a.controls(g, v)) a.advice[m][v] = s.at(v);
        }
    }
    return a;
}

Vertex reference_move(const GameGraph& g, PlayerId i, const LassoPlay& rho, const PositionalStrategy& sigma_i,
                      const std::map<PlayerId, PositionalStrategy>& punish, const History& h)
{
    // pun(h): the owner of the last vertex where h still agreed with rho, if h left it
    std::optional<PlayerId> deviator;
    for (std::size_t l = 0; l + 1 < h.size(); ++l) {
        if (h[l + 1] != rho.at(l + 1)) {
            deviator = g.owner(h[l]);
            break;
        }
    }
    const Vertex v = h.back();
    if (!deviator) return rho.at(h.size());
    if (*deviator == i) return sigma_i.at(v);
    return punish.at(*deviator).at(v);
}

std::optional<Vertex> automaton_move(const StrategyAutomaton& a, const History& h)
{
    std::size_t m = a.initial;
    for (std::size_t l = 0; l + 1 < h.size(); ++l) m = a.update[m][h[l]];
    return a.advice[m][h.back()];
}

History oscillating_history(const GameGraph& g, std::size_t blocks)
{
    const Vertex a = g.vertex("A"), b = g.vertex("B");
    History h{a};
    for (std::size_t m = 0; m < blocks; ++m) {
        for (std::size_t k = 0; k < (std::size_t{1} << m); ++k) h.push_back(b);
        for (std::size_t k = 0; k < (std::size_t{1} << m); ++k) h.push_back(a);
    }
    return h;
}

}  // namespace costgames::testing
