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

#ifndef COSTGAMES_EQUILIBRIUM_HPP
#define COSTGAMES_EQUILIBRIUM_HPP

#include "costgames/solvers.hpp"

#include <map>

namespace costgames {

/// Per player: vertex -> successor to use in place of the solver's choice.
using Overrides = std::map<PlayerId, std::map<Vertex, Vertex>>;

/// Finite-memory optimal strategies supplied for the general construction.
struct SuppliedStrategies {
    std::map<PlayerId, StrategyAutomaton> optimal;    // sigma*_i, controls V_i
    std::map<PlayerId, StrategyAutomaton> coalition;  // sigma*_{-i}, controls V \ V_i
};

struct NashProfile {
    Vertex initial = 0;
    std::map<PlayerId, StrategyAutomaton> automata;
    LassoPlay outcome{{}, {0}};
    std::map<PlayerId, ExtRational> costs;
    std::map<PlayerId, ExtRational> values;  // val^i at the initial vertex
    SuppliedStrategies strategies;           // the optimal strategies the profile was built from
};

struct PlayerCheck {
    PlayerId player = 0;
    ExtRational outcome_cost;
    ExtRational best_response;
    LassoPlay witness{{}, {0}};  // best deviation, projected to game vertices
    [[nodiscard]] bool profitable() const { return best_response < outcome_cost; }
};

struct VerificationReport {
    LassoPlay outcome{{}, {0}};
    std::vector<PlayerCheck> players;
    [[nodiscard]] bool is_equilibrium() const;
};

/**
 * Solves every player's coalition game, plays the optimal strategies, and
 * wraps them with punishment of the first deviator. `overrides` replaces
 * choices of sigma*_i; each must keep the strategy optimal.
 */
NashProfile synthesize_ne(const GameGraph& g, const SpecMap& specs, Vertex v0, const Overrides& overrides = {},
                          bool parallel = true);

/// Mealy automaton for player i following rho and punishing deviators with `punish[j]`.
StrategyAutomaton build_strategy_automaton(const GameGraph& g, PlayerId i, const LassoPlay& rho,
                                           const PositionalStrategy& sigma_i,
                                           const std::map<PlayerId, PositionalStrategy>& punish);

/// Same construction over the product of vertices and supplied automata memories.
NashProfile synthesize_ne_general(const GameGraph& g, const SpecMap& specs, Vertex v0,
                                  const SuppliedStrategies& supplied);

/// Play of the automata profile from v0.
LassoPlay outcome_of(const GameGraph& g, const std::map<PlayerId, StrategyAutomaton>& automata, Vertex v0);

/// Best unilateral deviation of every player against the profile.
VerificationReport verify_ne(const GameGraph& g, const SpecMap& specs,
                             const std::map<PlayerId, StrategyAutomaton>& automata, Vertex v0, bool parallel = true);

}  // namespace costgames

#endif
