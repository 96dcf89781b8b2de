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

#ifndef COSTGAMES_GAME_HPP
#define COSTGAMES_GAME_HPP

#include "costgames/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace costgames {

using Vertex = std::size_t;
using PlayerId = std::size_t;
using EdgeId = std::size_t;

/// Malformed input: unknown ids, duplicate edges, paths that leave the graph.
class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A postcondition or invariant of the library itself failed.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Edge {
    Vertex from;
    Vertex to;
    Rational price;
    Rational reward;

    bool operator==(const Edge&) const = default;
};

/**
 * Finite arena of a multiplayer cost game: players, vertices partitioned by
 * owner, and price/reward labelled edges. At most one edge per ordered pair.
 * Sink vertices are representable so that validate_game can report them.
 *
 * Immutable once built; use GameGraph::Builder.
 */
class GameGraph {
public:
    class Builder {
    public:
        PlayerId add_player(std::string name);
        Vertex add_vertex(std::string name, PlayerId owner);
        EdgeId add_edge(Vertex from, Vertex to, Rational price, Rational reward = 1);
        EdgeId add_edge(std::string_view from, std::string_view to, Rational price, Rational reward = 1);

        [[nodiscard]] std::optional<PlayerId> find_player(std::string_view name) const;
        [[nodiscard]] std::optional<Vertex> find_vertex(std::string_view name) const;

        GameGraph build() &&;

    private:
        std::vector<std::string> players_;
        std::vector<std::string> vertices_;
        std::vector<PlayerId> owner_;
        std::vector<Edge> edges_;
        std::unordered_map<std::string, PlayerId> player_index_;
        std::unordered_map<std::string, Vertex> vertex_index_;
        std::unordered_map<std::size_t, EdgeId> pair_index_;
    };

    [[nodiscard]] std::size_t num_players() const { return players_.size(); }
    [[nodiscard]] std::size_t num_vertices() const { return vertices_.size(); }
    [[nodiscard]] std::size_t num_edges() const { return edges_.size(); }

    [[nodiscard]] const std::string& player_name(PlayerId p) const { return players_.at(p); }
    [[nodiscard]] const std::string& vertex_name(Vertex v) const { return vertices_.at(v); }
    [[nodiscard]] PlayerId owner(Vertex v) const { return owner_.at(v); }

    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    /// Outgoing edge ids of v, in input order.
    [[nodiscard]] std::span<const EdgeId> out_edges(Vertex v) const { return out_.at(v); }
    [[nodiscard]] std::optional<EdgeId> find_edge(Vertex from, Vertex to) const;
    /// Like find_edge, but throws GameError when (from, to) is not an edge.
    [[nodiscard]] const Edge& edge_between(Vertex from, Vertex to) const;

    [[nodiscard]] std::optional<PlayerId> find_player(std::string_view name) const;
    [[nodiscard]] std::optional<Vertex> find_vertex(std::string_view name) const;
    /// Throwing lookups for user-facing names.
    [[nodiscard]] PlayerId player(std::string_view name) const;
    [[nodiscard]] Vertex vertex(std::string_view name) const;

    [[nodiscard]] std::vector<Vertex> vertices_of(PlayerId p) const;
    /// True when every reward equals 1.
    [[nodiscard]] bool has_unit_rewards() const;

    bool operator==(const GameGraph& other) const;

private:
    std::vector<std::string> players_;
    std::vector<std::string> vertices_;
    std::vector<PlayerId> owner_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> out_;
    std::unordered_map<std::string, PlayerId> player_index_;
    std::unordered_map<std::string, Vertex> vertex_index_;
    std::unordered_map<std::size_t, EdgeId> pair_index_;
};

// Objectives. Each player's cost function is one of these.

struct ReachabilityPrice {
    std::vector<Vertex> goal;  // sorted, unique
    bool operator==(const ReachabilityPrice&) const = default;
};
struct DiscountedPrice {
    Rational lambda;
    bool operator==(const DiscountedPrice&) const = default;
};
struct MeanPayoff {
    bool operator==(const MeanPayoff&) const = default;
};
struct RatioAverage {
    bool operator==(const RatioAverage&) const = default;
};
/// Evaluation only: not prefix-linear, so no equilibrium synthesis.
struct EnergySup {
    Rational threshold;
    bool operator==(const EnergySup&) const = default;
};

using CostSpec = std::variant<ReachabilityPrice, DiscountedPrice, MeanPayoff, RatioAverage, EnergySup>;
using SpecMap = std::map<PlayerId, CostSpec>;

ReachabilityPrice make_reachability(std::vector<Vertex> goal);
/// "reachability_price", "discounted", "mean_payoff", "ratio", "energy_sup".
std::string_view spec_type_name(const CostSpec& spec);
bool is_solvable(const CostSpec& spec);

/// Nonempty vertex sequence following edges.
using History = std::vector<Vertex>;
void check_history(const GameGraph& g, const History& h);

/**
 * Ultimately periodic play prefix . cycle^omega.
 *
 * Stored canonically: the cycle is primitive (not a power of a shorter word)
 * and the prefix is as short as possible, so two lassos denote the same play
 * iff they compare equal.
 */
class LassoPlay {
public:
    LassoPlay(std::vector<Vertex> prefix, std::vector<Vertex> cycle);

    [[nodiscard]] const std::vector<Vertex>& prefix() const { return prefix_; }
    [[nodiscard]] const std::vector<Vertex>& cycle() const { return cycle_; }
    [[nodiscard]] Vertex first() const { return prefix_.empty() ? cycle_.front() : prefix_.front(); }
    /// i-th vertex of the infinite play.
    [[nodiscard]] Vertex at(std::size_t i) const;
    /// First `count` vertices of the play.
    [[nodiscard]] std::vector<Vertex> unroll(std::size_t count) const;

    bool operator==(const LassoPlay&) const = default;

private:
    std::vector<Vertex> prefix_;
    std::vector<Vertex> cycle_;
};

void check_lasso(const GameGraph& g, const LassoPlay& play);
/// "A;(B,C)", or "(A,B)" when the prefix is empty.
std::string format_lasso(const GameGraph& g, const LassoPlay& play);
/// Accepts "v0,v1;c0,c1", parentheses around the cycle optional; no ';' means cycle only.
LassoPlay parse_lasso(const GameGraph& g, std::string_view text);

/// Positional strategy: the current vertex determines the successor.
struct PositionalStrategy {
    std::vector<std::optional<Vertex>> choice;  // indexed by vertex; set on controlled vertices

    [[nodiscard]] bool controls(Vertex v) const { return v < choice.size() && choice[v].has_value(); }
    [[nodiscard]] Vertex at(Vertex v) const;

    bool operator==(const PositionalStrategy&) const = default;
};

void check_strategy(const GameGraph& g, const PositionalStrategy& s);

/**
 * Mealy machine (M, m0, delta, nu) computing a finite-memory strategy.
 *
 * Reading vertex v in state m, the machine advises nu(m, v) when it controls
 * v and moves to delta(m, v). A player automaton controls the vertices of
 * `player`; a coalition automaton controls every other vertex.
 */
struct StrategyAutomaton {
    PlayerId player = 0;
    bool coalition = false;
    std::vector<std::string> states;
    std::size_t initial = 0;
    std::vector<std::vector<std::size_t>> update;            // [state][vertex]
    std::vector<std::vector<std::optional<Vertex>>> advice;  // [state][vertex]

    [[nodiscard]] std::size_t size() const { return states.size(); }
    [[nodiscard]] bool controls(const GameGraph& g, Vertex v) const
    {
        return (g.owner(v) == player) != coalition;
    }

    /// Single-state automaton playing `s` on the controlled vertices.
    static StrategyAutomaton from_positional(const GameGraph& g, PlayerId player, bool coalition,
                                             const PositionalStrategy& s);

    bool operator==(const StrategyAutomaton&) const = default;
};

/// Totality of delta and nu, and advice along edges. Throws GameError.
void check_automaton(const GameGraph& g, const StrategyAutomaton& a);

struct Violation {
    enum class Kind {
        SinkVertex,
        MissingObjective,
        UnknownPlayer,
        DiscountOutOfRange,
        EmptyGoal,
        GoalOutOfRange,
        NegativePrice,
        NonDivergingReward,
    };
    Kind kind;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Structural checks; the game is usable iff the report is empty.
ValidationReport validate_game(const GameGraph& g, const SpecMap& specs);

}  // namespace costgames

#endif
