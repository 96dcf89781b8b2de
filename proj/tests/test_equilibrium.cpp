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
#include "test_support.hpp"

#include <doctest.h>

using namespace costgames;
using namespace costgames::testing;

namespace {

std::size_t find_state(const StrategyAutomaton& a, const std::string& label)
{
    auto it = std::find(a.states.begin(), a.states.end(), label);
    REQUIRE(it != a.states.end());
    return static_cast<std::size_t>(it - a.states.begin());
}

}  // namespace

TEST_CASE("equilibrium of the two-player example")
{
    GameDocument doc = load_document("reach_average.json");
    const GameGraph& g = doc.graph;
    NashProfile ne = synthesize_ne(g, doc.specs, doc.initial);
    CHECK(format_lasso(g, ne.outcome) == "A;(B,C)");
    CHECK(ne.costs.at(0) == ExtRational(2));
    CHECK(ne.costs.at(1) == ExtRational(2));
    CHECK(ne.values.at(0) == ExtRational::pos_inf());
    CHECK(ne.values.at(1) == ExtRational(2));

    const StrategyAutomaton& a1 = ne.automata.at(0);
    CHECK(a1.states == std::vector<std::string>{"AA", "AB", "BC", "CB", "p2"});
    const Vertex A = 0, B = 1, C = 2, D = 3;
    const std::size_t AA = 0, AB = 1, BC = 2, CB = 3, P2 = 4;
    CHECK(a1.update[AA][A] == AB);
    CHECK(a1.advice[AA][A] == B);
    CHECK(a1.update[AB][B] == BC);
    CHECK_FALSE(a1.advice[AB][B]);
    CHECK(a1.update[BC][C] == CB);
    CHECK(a1.advice[BC][C] == B);
    CHECK(a1.update[CB][B] == BC);
    CHECK(a1.update[BC][A] == P2);
    CHECK(a1.advice[BC][A] == D);
    CHECK(a1.update[P2][A] == P2);
    CHECK(a1.advice[P2][A] == D);

    CHECK(outcome_of(g, ne.automata, doc.initial) == ne.outcome);
    VerificationReport report = verify_ne(g, doc.specs, ne.automata, doc.initial);
    CHECK(report.is_equilibrium());
}

TEST_CASE("overrides must stay optimal")
{
    GameDocument doc = load_document("reach_average.json");
    const GameGraph& g = doc.graph;
    NashProfile ne = synthesize_ne(g, doc.specs, doc.initial, {{0, {{0, 3}}}});
    CHECK(format_lasso(g, ne.outcome) == "A,D;(B,C)");
    CHECK(ne.costs.at(0) == ExtRational(6));
    CHECK(ne.costs.at(1) == ExtRational(2));
    CHECK(verify_ne(g, doc.specs, ne.automata, doc.initial).is_equilibrium());

    // B belongs to player 2
    CHECK_THROWS_AS(synthesize_ne(g, doc.specs, doc.initial, {{0, {{1, 0}}}}), GameError);

    // leaving the free loop at A costs the lone player a positive average
    GameDocument avg = load_document("average.json");
    CHECK_THROWS_WITH_AS(synthesize_ne(avg.graph, avg.specs, avg.initial, {{0, {{0, 1}}}}),
                         doctest::Contains("is not optimal"), GameError);
}

TEST_CASE("positional profile without punishment is not an equilibrium")
{
    GameDocument doc = load_document("reach_average.json");
    const GameGraph& g = doc.graph;
    std::map<PlayerId, StrategyAutomaton> profile;
    profile.emplace(0, StrategyAutomaton::from_positional(g, 0, false, PositionalStrategy{{1, {}, 1, 1}}));
    profile.emplace(1, StrategyAutomaton::from_positional(g, 1, false, PositionalStrategy{{{}, 2, {}, {}}}));
    VerificationReport report = verify_ne(g, doc.specs, profile, doc.initial);
    CHECK_FALSE(report.is_equilibrium());
    CHECK_FALSE(report.players[0].profitable());
    CHECK(report.players[1].profitable());
    CHECK(report.players[1].best_response == ExtRational(1));
    CHECK(report.players[1].outcome_cost == ExtRational(2));
    CHECK(report.players[1].witness.cycle().size() == 2);
}

TEST_CASE("single player: the strategy is the optimal one")
{
    GameDocument doc = load_document("average.json");
    NashProfile ne = synthesize_ne(doc.graph, doc.specs, doc.initial);
    const StrategyAutomaton& a = ne.automata.at(0);
    // the optimal play is the free loop at A, so the two edge states coincide
    CHECK(format_lasso(doc.graph, ne.outcome) == "(A)");
    CHECK(a.size() == 1);
    CHECK(ne.costs.at(0) == ExtRational(0));
    VerificationReport report = verify_ne(doc.graph, doc.specs, ne.automata, doc.initial);
    CHECK(report.players[0].best_response == ne.values.at(0));
    CHECK(report.players[0].best_response == report.players[0].outcome_cost);
}

TEST_CASE("construction rejects plays that contradict the strategy")
{
    GameDocument doc = load_document("reach_average.json");
    const GameGraph& g = doc.graph;
    PositionalStrategy s1{{3, {}, 1, 1}};
    std::map<PlayerId, PositionalStrategy> punish{{1, PositionalStrategy{{3, {}, 1, 1}}}};
    CHECK_THROWS_AS(build_strategy_automaton(g, 0, parse_lasso(g, "A;B,C"), s1, punish), GameError);
}

TEST_CASE("random equilibria hold and respect the memory bound")
{
    Rng rng(99);
    for (int round = 0; round < 40; ++round) {
        GameDocument doc = random_equilibrium_game(rng, 7, 2, 3);
        const GameGraph& g = doc.graph;
        NashProfile ne = synthesize_ne(g, doc.specs, doc.initial);
        for (const auto& [p, a] : ne.automata) CHECK(a.size() <= g.num_vertices() + g.num_players());
        CHECK(outcome_of(g, ne.automata, doc.initial) == ne.outcome);
        VerificationReport report = verify_ne(g, doc.specs, ne.automata, doc.initial);
        CHECK(report.is_equilibrium());
        for (const auto& c : report.players) CHECK(c.outcome_cost <= ne.values.at(c.player));

        NashProfile seq = synthesize_ne(g, doc.specs, doc.initial, {}, false);
        CHECK(seq.automata == ne.automata);

        NashProfile general = synthesize_ne_general(g, doc.specs, doc.initial, ne.strategies);
        CHECK(general.automata == ne.automata);
        CHECK(general.outcome == ne.outcome);
    }
}

TEST_CASE("general construction over two-state strategies")
{
    Rng rng(3);
    for (int round = 0; round < 30; ++round) {
        GameDocument doc = random_equilibrium_game(rng, 6, 2, 3);
        const GameGraph& g = doc.graph;
        NashProfile ne = synthesize_ne(g, doc.specs, doc.initial);
        SuppliedStrategies wrapped;
        std::size_t product = g.num_vertices();
        for (PlayerId p = 0; p < g.num_players(); ++p) {
            PositionalStrategy own{std::vector<std::optional<Vertex>>(g.num_vertices())};
            PositionalStrategy coal{std::vector<std::optional<Vertex>>(g.num_vertices())};
            const auto& o = ne.strategies.optimal.at(p);
            const auto& c = ne.strategies.coalition.at(p);
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                (g.owner(v) == p ? own : coal).choice[v] = g.owner(v) == p ? o.advice[0][v] : c.advice[0][v];
            }
            wrapped.optimal.emplace(p, toggle_wrapper(g, p, false, own));
            wrapped.coalition.emplace(p, toggle_wrapper(g, p, true, coal));
            product *= 2;
        }
        NashProfile gen = synthesize_ne_general(g, doc.specs, doc.initial, wrapped);
        CHECK(gen.outcome == ne.outcome);
        for (const auto& [i, a] : gen.automata) {
            CHECK(a.size() <= product + 2 * (g.num_players() - 1));
        }
        CHECK(verify_ne(g, doc.specs, gen.automata, doc.initial).is_equilibrium());
    }
}

TEST_CASE("automata follow the history-based definition")
{
    Rng rng(17);
    std::size_t checked = 0;
    for (int round = 0; round < 40; ++round) {
        GameDocument doc = random_equilibrium_game(rng, 6, 2, 3);
        const GameGraph& g = doc.graph;
        std::vector<SolveResult> sol;
        for (PlayerId p = 0; p < g.num_players(); ++p) sol.push_back(solve(MinMaxInstance::for_player(g, p, doc.specs.at(p))));
        NashProfile ne = synthesize_ne(g, doc.specs, doc.initial);
        std::map<PlayerId, PositionalStrategy> punish;
        for (PlayerId p = 0; p < g.num_players(); ++p) punish.emplace(p, sol[p].sigma_max);
        for (int walk = 0; walk < 10; ++walk) {
            PlayerId i = rng() % g.num_players();
            History h{doc.initial};
            for (int step = 0; step < 12; ++step) {
                Vertex v = h.back();
                Vertex next;
                if (g.owner(v) == i) {
                    Vertex ref = reference_move(g, i, ne.outcome, sol[i].sigma_min, punish, h);
                    CHECK(automaton_move(ne.automata.at(i), h) == ref);
                    ++checked;
                    next = ref;
                } else {
                    auto outs = g.out_edges(v);
                    next = g.edge(outs[rng() % outs.size()]).to;
                }
                h.push_back(next);
            }
        }
    }
    CHECK(checked > 0);
}
