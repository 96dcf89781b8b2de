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
#include "test_support.hpp"

#include <doctest.h>

using namespace costgames;
using namespace costgames::testing;

namespace {

// Values that each side's strategy guarantees: Min's against every Max reply, Max's against every Min reply.
void check_strategies_optimal(const MinMaxInstance& inst, const SolveResult& res)
{
    const GameGraph& g = inst.game();
    GameGraph::Builder bmin, bmax;
    for (PlayerId p = 0; p < g.num_players(); ++p) {
        bmin.add_player(g.player_name(p));
        bmax.add_player(g.player_name(p));
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        bmin.add_vertex(g.vertex_name(v), g.owner(v));
        bmax.add_vertex(g.vertex_name(v), g.owner(v));
    }
    for (const Edge& e : g.edges()) {
        if (!inst.is_min(e.from) || res.sigma_min.at(e.from) == e.to) bmin.add_edge(e.from, e.to, e.price, e.reward);
        if (inst.is_min(e.from) || res.sigma_max.at(e.from) == e.to) bmax.add_edge(e.from, e.to, e.price, e.reward);
    }
    GameGraph gmin = std::move(bmin).build(), gmax = std::move(bmax).build();
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        CHECK(one_player_optimum(gmin, inst.objective, false, v).value == res.values[v]);
        CHECK(one_player_optimum(gmax, inst.objective, true, v).value == res.values[v]);
    }
}

}  // namespace

TEST_CASE("coalition games of the two-player example")
{
    GameDocument doc = load_document("reach_average.json");
    const GameGraph& g = doc.graph;
    SolveResult r1 = solve(MinMaxInstance::for_player(g, 0, doc.specs.at(0)));
    CHECK(r1.values[g.vertex("A")] == ExtRational::pos_inf());
    CHECK(r1.values[g.vertex("C")] == ExtRational(0));
    CHECK(r1.sigma_min.at(g.vertex("A")) == g.vertex("B"));
    CHECK(r1.sigma_max.at(g.vertex("B")) == g.vertex("A"));

    SolveResult r2 = solve(MinMaxInstance::for_player(g, 1, doc.specs.at(1)));
    for (Vertex v = 0; v < 4; ++v) CHECK(r2.values[v] == ExtRational(2));
    CHECK(r2.sigma_min.at(g.vertex("B")) == g.vertex("C"));
    CHECK(r2.sigma_max.at(g.vertex("A")) == g.vertex("D"));
}

TEST_CASE("attractor")
{
    GameDocument doc = load_document("reach_average.json");
    const GameGraph& g = doc.graph;
    MinMaxInstance inst = MinMaxInstance::for_player(g, 0, doc.specs.at(0));
    std::vector<bool> goal{false, false, true, false};
    CHECK(attractor(inst, goal, Side::Min) == std::vector<bool>{false, false, true, false});
    // player 2 as Min can always reach C through B
    MinMaxInstance inst2 = MinMaxInstance::for_player(g, 1, doc.specs.at(1));
    CHECK(attractor(inst2, goal, Side::Min) == std::vector<bool>{true, true, true, true});
}

TEST_CASE("reachability with negative prices is rejected")
{
    GameGraph::Builder b;
    PlayerId p = b.add_player("p");
    b.add_vertex("A", p);
    b.add_edge("A", "A", -1);
    GameGraph g = std::move(b).build();
    CHECK_THROWS_AS(solve(MinMaxInstance::single_side(g, Side::Min, make_reachability({0}))), GameError);
    CHECK_THROWS_AS(solve(MinMaxInstance::single_side(g, Side::Min, EnergySup{1})), GameError);
}

TEST_CASE("solvers agree with brute force and play optimally")
{
    Rng rng(2024);
    for (ObjectiveKind kind : kSolvableKinds) {
        SUBCASE(kind_name(kind))
        {
            for (int round = 0; round < 60; ++round) {
                RandomMinMax r = random_min_max(rng, kind, 5);
                const MinMaxInstance& inst = r.instance;
                SolveResult res = solve(inst);
                BruteForceResult bf = brute_force_value(inst);
                CHECK(bf.determined());
                CHECK(res.values == bf.min_max);
                CHECK(bellman_residual(inst, res.values) == 0);
                check_strategies_optimal(inst, res);
            }
        }
    }
}

TEST_CASE("approximate discounted mode returns an exactly evaluated profile")
{
    Rng rng(5);
    for (int round = 0; round < 40; ++round) {
        RandomMinMax r = random_min_max(rng, ObjectiveKind::Discounted, 6);
        SolveResult exact = solve_discounted(r.instance);
        SolveResult approx = solve_discounted(r.instance, ApproxMode{1e-9});
        for (Vertex v = 0; v < exact.values.size(); ++v) {
            CHECK(std::abs(approx.values[v].to_double() - exact.values[v].to_double()) < 1e-6);
        }
    }
}

TEST_CASE("one-player optima")
{
    GameDocument doc = load_document("average.json");
    const GameGraph& g = doc.graph;
    OnePlayerOptimum lo = one_player_optimum(g, MeanPayoff{}, true, 1);
    CHECK(lo.value == ExtRational(0));
    CHECK(lo.witness == LassoPlay({1}, {0}));
    OnePlayerOptimum hi = one_player_optimum(g, MeanPayoff{}, false, 0);
    CHECK(hi.value == ExtRational(1));
    CHECK(hi.witness == LassoPlay({0}, {1}));
    OnePlayerOptimum ratio = one_player_optimum(g, RatioAverage{}, false, 0);
    CHECK(ratio.value == ExtRational(1));
    OnePlayerOptimum reach = one_player_optimum(g, make_reachability({1}), false, 0);
    CHECK(reach.value == ExtRational::pos_inf());
    CHECK(reach.witness == LassoPlay({}, {0}));
}

TEST_CASE("one-player ratio optimum with fractional answer")
{
    GameGraph::Builder b;
    PlayerId p = b.add_player("p");
    b.add_vertex("A", p);
    b.add_vertex("B", p);
    b.add_edge("A", "B", 3, 2);
    b.add_edge("B", "A", 4, 5);
    b.add_edge("B", "B", 5, 4);
    GameGraph g = std::move(b).build();
    OnePlayerOptimum lo = one_player_optimum(g, RatioAverage{}, true, 0);
    CHECK(lo.value == ExtRational(Rational(1)));
    CHECK(eval_lasso(RatioAverage{}, lo.witness, g) == lo.value);
    OnePlayerOptimum hi = one_player_optimum(g, RatioAverage{}, false, 0);
    CHECK(hi.value == ExtRational(Rational(5, 4)));
    CHECK(eval_lasso(RatioAverage{}, hi.witness, g) == hi.value);
}
