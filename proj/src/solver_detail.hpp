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

#ifndef COSTGAMES_SOLVER_DETAIL_HPP
#define COSTGAMES_SOLVER_DETAIL_HPP

#include "costgames/cycles.hpp"
#include "costgames/solvers.hpp"

#include <functional>
#include <vector>

namespace costgames::detail {

struct Arc {
    Vertex to;
    EdgeId edge;
};

/// Game arena with a mutable arc set, used for edge fixing.
struct Arena {
    std::vector<std::vector<Arc>> out;
    std::vector<bool> is_min;
};

Arena make_arena(const MinMaxInstance& inst);

/// Exact mean-payoff values by finite-horizon DP and rounding. `weight` is indexed by edge id.
std::vector<Rational> mean_payoff_values_horizon(const Arena& arena, const std::vector<Rational>& weight);

/**
 * Exact mean-payoff values. Floating value iteration proposes greedy
 * strategies; the values are accepted once the one-player bounds they induce
 * (Karp on each side) coincide. Falls back to the horizon method.
 */
std::vector<Rational> mean_payoff_values_certified(const Arena& arena, const std::vector<Rational>& weight);

using ValuesFn = std::function<std::vector<Rational>(const Arena&)>;

/**
 * Pin each listed vertex, in order, to its first outgoing arc that leaves
 * every value unchanged. Returns the chosen successor per listed vertex.
 */
std::vector<std::pair<Vertex, Vertex>> fix_edges(Arena arena, const std::vector<Vertex>& vertices,
                                                 const std::vector<Rational>& target, ValuesFn values);

/// Simplest fraction (least denominator) in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

/// One-player graph of a combined profile restricted to free vertices of one side.
WeightedGraph one_player_graph(const Arena& arena, const std::vector<Rational>& weight,
                               const std::vector<std::optional<Vertex>>& fixed);

}  // namespace costgames::detail

#endif
