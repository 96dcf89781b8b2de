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

#ifndef COSTGAMES_SOLVERS_HPP
#define COSTGAMES_SOLVERS_HPP

#include "costgames/cost.hpp"
#include "costgames/game.hpp"

#include <optional>
#include <vector>

namespace costgames {

enum class Side { Min, Max };

/**
 * Two-player zero-sum view of a game: Min owns `min_vertices`, Max the rest.
 * Max's gain is the counterpart of Min's cost (liminf for the averaging
 * objectives); both agree on the lasso outcomes of positional profiles.
 */
struct MinMaxInstance {
    const GameGraph* graph = nullptr;
    std::vector<bool> min_vertices;
    CostSpec objective;

    /// Player i against the coalition of all other players.
    static MinMaxInstance for_player(const GameGraph& g, PlayerId i, CostSpec objective);
    /// Every vertex belongs to the given side.
    static MinMaxInstance single_side(const GameGraph& g, Side side, CostSpec objective);

    [[nodiscard]] bool is_min(Vertex v) const { return min_vertices.at(v); }
    [[nodiscard]] const GameGraph& game() const { return *graph; }
};

struct SolveResult {
    std::vector<ExtRational> values;
    PositionalStrategy sigma_min;
    PositionalStrategy sigma_max;
};

/// Outcome of the positional profile (sigma_min, sigma_max) from `start`.
LassoPlay profile_outcome(const GameGraph& g, const PositionalStrategy& sigma_min,
                          const PositionalStrategy& sigma_max, Vertex start);

/// Least superset of `target` from which `forcing` can force a visit to it.
std::vector<bool> attractor(const MinMaxInstance& inst, const std::vector<bool>& target, Side forcing);

/// Generalized Dijkstra; prices must be nonnegative.
SolveResult solve_reachability_price(const MinMaxInstance& inst);

/// Value iteration tolerance for the approximate discounted mode.
struct ApproxMode {
    double epsilon;
};

/**
 * Exact mode (default): strategy iteration with exact lasso evaluation.
 * Approximate mode: floating value iteration, greedy strategies, exact
 * re-evaluation of the extracted profile.
 */
SolveResult solve_discounted(const MinMaxInstance& inst, std::optional<ApproxMode> approx = std::nullopt);

/// Finite-horizon dynamic programming with rational rounding; edge fixing for strategies.
SolveResult solve_mean_payoff(const MinMaxInstance& inst);

/// Bisection on the price-per-reward threshold; rewards must diverge.
SolveResult solve_ratio(const MinMaxInstance& inst);

/// Dispatch on the objective. EnergySup throws GameError.
SolveResult solve(const MinMaxInstance& inst);

struct BruteForceResult {
    std::vector<ExtRational> min_max;  // inf over Min, sup over Max
    std::vector<ExtRational> max_min;  // sup over Max, inf over Min

    [[nodiscard]] bool determined() const { return min_max == max_min; }
};

/// Enumerates every pair of positional strategies. Throws GameError past `cap` profiles.
BruteForceResult brute_force_value(const MinMaxInstance& inst, std::size_t cap = 1'000'000);

struct OnePlayerOptimum {
    ExtRational value;
    LassoPlay witness;
};

/// Optimum over every play from `start` when a single agent chooses all moves.
OnePlayerOptimum one_player_optimum(const GameGraph& g, const CostSpec& spec, bool minimize, Vertex start);

}  // namespace costgames

#endif
