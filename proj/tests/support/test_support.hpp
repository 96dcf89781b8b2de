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

#ifndef COSTGAMES_TEST_SUPPORT_HPP
#define COSTGAMES_TEST_SUPPORT_HPP

#include "costgames/equilibrium.hpp"
#include "costgames/io.hpp"

#include <memory>
#include <random>
#include <string>

namespace costgames::testing {

using Rng = std::mt19937_64;

std::string data_path(const std::string& name);
GameDocument load_document(const std::string& name);

enum class ObjectiveKind { Reachability, Discounted, MeanPayoff, Ratio };
inline constexpr ObjectiveKind kSolvableKinds[] = {ObjectiveKind::Reachability, ObjectiveKind::Discounted,
                                                   ObjectiveKind::MeanPayoff, ObjectiveKind::Ratio};
const char* kind_name(ObjectiveKind k);

struct GraphShape {
    std::size_t min_vertices = 2;
    std::size_t max_vertices = 6;
    std::size_t players = 2;
    std::size_t max_out_degree = 3;
    bool negative_prices = false;
    bool fractional_prices = true;
    bool rewards = false;  // draw rewards in 1..3 instead of all ones
};

GameGraph random_graph(Rng& rng, const GraphShape& shape);
CostSpec random_spec(Rng& rng, const GameGraph& g, ObjectiveKind kind);

/// Owns its graph so the instance pointer stays valid.
struct RandomMinMax {
    std::unique_ptr<GameGraph> graph;
    MinMaxInstance instance;
};
RandomMinMax random_min_max(Rng& rng, ObjectiveKind kind, std::size_t max_vertices = 6);

/// Multiplayer game with one solvable objective per player, types mixed.
GameDocument random_equilibrium_game(Rng& rng, std::size_t max_vertices, std::size_t min_players,
                                     std::size_t max_players);

/// Largest violation of the one-step optimality equations; finite values only
/// for reachability, over all vertices otherwise.
Rational bellman_residual(const MinMaxInstance& inst, const std::vector<ExtRational>& values);

/// Two-state automaton that toggles on every step and plays `s` in both states.
StrategyAutomaton toggle_wrapper(const GameGraph& g, PlayerId player, bool coalition, const PositionalStrategy& s);

/// Move of the equilibrium strategy of player i after history h, computed
/// directly from its definition: follow rho until someone leaves it, then
/// play the punishment of the first deviator.
Vertex reference_move(const GameGraph& g, PlayerId i, const LassoPlay& rho, const PositionalStrategy& sigma_i,
                      const std::map<PlayerId, PositionalStrategy>& punish, const History& h);

/// Move of a Mealy automaton after history h.
std::optional<Vertex> automaton_move(const StrategyAutomaton& a, const History& h);

/// Generates v0 (price 1 -> B, price 0 -> A) for the blocks 1^(2^m) 0^(2^m), m < blocks.
History oscillating_history(const GameGraph& g, std::size_t blocks);

}  // namespace costgames::testing

#endif
