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

#ifndef COSTGAMES_IO_HPP
#define COSTGAMES_IO_HPP

#include "costgames/game.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace costgames {

struct GameDocument {
    GameGraph graph;
    SpecMap specs;
    Vertex initial = 0;

    bool operator==(const GameDocument&) const = default;
};

/// Every problem found while reading a document, each prefixed by its JSON path.
class ParseError : public GameError {
public:
    explicit ParseError(std::vector<std::string> errors);
    [[nodiscard]] const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

GameDocument parse_game(std::string_view text);
/// Canonical form: sorted keys, edges in input order, rationals as strings.
std::string serialize_game(const GameDocument& doc);

using AutomatonProfile = std::map<PlayerId, StrategyAutomaton>;

/// Reads the "automata" member; other members are ignored.
AutomatonProfile parse_profile(const GameGraph& g, std::string_view text);
std::string serialize_profile(const GameGraph& g, const AutomatonProfile& profile);

struct DotHighlight {
    std::vector<Vertex> shaded;
    std::optional<LassoPlay> lasso;  // its vertices are shaded and its edges drawn bold
};

std::string export_dot(const GameGraph& g, const DotHighlight& highlight = {});
struct AutomatonTransition {
    std::size_t from;
    std::size_t to;
    Vertex read;
    std::optional<Vertex> advice;
};

/// Transitions reachable from `start` (any vertex when absent) while the owner follows the advice.
std::vector<AutomatonTransition> reachable_transitions(const GameGraph& g, const StrategyAutomaton& a,
                                                       std::optional<Vertex> start = std::nullopt);
/// Label "v/w", or "v/-" without advice.
std::string transition_label(const GameGraph& g, const AutomatonTransition& t);

/// Transitions reachable from `start` (any vertex when absent) while the owner follows the advice.
std::string export_automaton_dot(const GameGraph& g, const StrategyAutomaton& a,
                                 std::optional<Vertex> start = std::nullopt);

}  // namespace costgames

#endif
