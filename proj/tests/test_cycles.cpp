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

#include "costgames/cycles.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <tuple>

using namespace costgames;

namespace {

WeightedGraph graph(std::initializer_list<std::tuple<std::size_t, std::size_t, long>> arcs, std::size_t n)
{
    WeightedGraph g(n);
    for (auto [u, v, w] : arcs) g[u].push_back({v, Rational(w)});
    return g;
}

// Exhaustive optimum over simple cycles reachable from s.
Rational brute_cycle_mean(const WeightedGraph& g, std::size_t s, bool minimize)
{
    const std::size_t n = g.size();
    std::vector<bool> reach(n, false);
    std::vector<std::size_t> stack{s};
    reach[s] = true;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto& a : g[u]) {
            if (!reach[a.to]) {
                reach[a.to] = true;
                stack.push_back(a.to);
            }
        }
    }
    std::optional<Rational> best;
    std::vector<std::size_t> path;
    std::vector<bool> on(n, false);
    std::function<void(std::size_t, std::size_t, Rational)> dfs = [&](std::size_t root, std::size_t u, Rational sum) {
        for (auto& a : g[u]) {
            if (a.to == root) {
                Rational m = (sum + a.weight) / static_cast<long>(path.size());
                if (!best || (minimize ? m < *best : m > *best)) best = m;
            } else if (a.to > root && !on[a.to]) {
                on[a.to] = true;
                path.push_back(a.to);
                dfs(root, a.to, sum + a.weight);
                path.pop_back();
                on[a.to] = false;
            }
        }
    };
    for (std::size_t r = 0; r < n; ++r) {
        if (!reach[r]) continue;
        path = {r};
        on.assign(n, false);
        on[r] = true;
        dfs(r, r, 0);
    }
    return *best;
}

}  // namespace

TEST_CASE("strongly connected components")
{
    WeightedGraph g = graph({{0, 1, 0}, {1, 0, 0}, {1, 2, 0}, {2, 2, 0}}, 3);
    auto comps = strongly_connected_components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<std::size_t>{2});  // sinks come first
    CHECK(comps[1] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("minimum cycle mean")
{
    WeightedGraph g = graph({{0, 1, 1}, {1, 0, 2}, {1, 2, 5}, {2, 2, -1}}, 3);
    CHECK(min_cycle_mean(g) == Rational(-1));
    CHECK_FALSE(min_cycle_mean(graph({{0, 1, 1}}, 2)));
    auto lo = reachable_cycle_mean(g, true);
    auto hi = reachable_cycle_mean(g, false);
    CHECK(lo == std::vector<Rational>{-1, -1, -1});
    CHECK(hi == std::vector<Rational>{Rational(3, 2), Rational(3, 2), -1});
}

TEST_CASE("best reachable cycle matches exhaustive search")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 300; ++round) {
        std::size_t n = 1 + rng() % 6;
        WeightedGraph g(n);
        for (std::size_t u = 0; u < n; ++u) {
            std::size_t deg = 1 + rng() % 3;
            for (std::size_t k = 0; k < deg; ++k) {
                std::size_t v = rng() % n;
                bool dup = std::any_of(g[u].begin(), g[u].end(), [&](auto& a) { return a.to == v; });
                Rational w(static_cast<long>(rng() % 9) - 4, static_cast<unsigned long>(1 + rng() % 2));
                w.canonicalize();
                if (!dup) g[u].push_back({v, w});
            }
        }
        for (bool minimize : {true, false}) {
            std::size_t s = rng() % n;
            CycleWitness w = best_reachable_cycle(g, s, minimize);
            CHECK(w.mean == brute_cycle_mean(g, s, minimize));
            CHECK(reachable_cycle_mean(g, minimize)[s] == w.mean);
            // the witness is a real path followed by a real cycle with that mean
            std::vector<std::size_t> walk = w.path;
            walk.insert(walk.end(), w.cycle.begin(), w.cycle.end());
            walk.push_back(w.cycle.front());
            CHECK(walk.front() == s);
            Rational sum = 0;
            for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
                auto it = std::find_if(g[walk[i]].begin(), g[walk[i]].end(),
                                       [&](auto& a) { return a.to == walk[i + 1]; });
                REQUIRE(it != g[walk[i]].end());
                if (i >= w.path.size()) sum += it->weight;
            }
            CHECK(sum / static_cast<long>(w.cycle.size()) == w.mean);
        }
    }
}
