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

#include "costgames/game.hpp"
#include "costgames/cycles.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace costgames {

namespace {

std::size_t pair_key(Vertex from, Vertex to)
{
    return (from << 32) ^ to;
}

}  // namespace

PlayerId GameGraph::Builder::add_player(std::string name)
{
    if (player_index_.contains(name)) throw GameError("duplicate player '" + name + "'");
    PlayerId id = players_.size();
    player_index_.emplace(name, id);
    players_.push_back(std::move(name));
    return id;
}

Vertex GameGraph::Builder::add_vertex(std::string name, PlayerId owner)
{
    if (owner >= players_.size()) throw GameError("vertex '" + name + "' has an unknown owner");
    if (vertex_index_.contains(name)) throw GameError("duplicate vertex '" + name + "'");
    Vertex id = vertices_.size();
    vertex_index_.emplace(name, id);
    vertices_.push_back(std::move(name));
    owner_.push_back(owner);
    return id;
}

EdgeId GameGraph::Builder::add_edge(Vertex from, Vertex to, Rational price, Rational reward)
{
    if (from >= vertices_.size() || to >= vertices_.size()) throw GameError("edge endpoint out of range");
    auto key = pair_key(from, to);
    if (pair_index_.contains(key)) {
        throw GameError("duplicate edge " + vertices_[from] + "->" + vertices_[to]);
    }
    EdgeId id = edges_.size();
    pair_index_.emplace(key, id);
    price.canonicalize();
    reward.canonicalize();
    edges_.push_back(Edge{from, to, std::move(price), std::move(reward)});
    return id;
}

EdgeId GameGraph::Builder::add_edge(std::string_view from, std::string_view to, Rational price, Rational reward)
{
    auto f = find_vertex(from);
    auto t = find_vertex(to);
    if (!f) throw GameError("unknown vertex '" + std::string(from) + "'");
    if (!t) throw GameError("unknown vertex '" + std::string(to) + "'");
    return add_edge(*f, *t, std::move(price), std::move(reward));
}

std::optional<PlayerId> GameGraph::Builder::find_player(std::string_view name) const
{
    auto it = player_index_.find(std::string(name));
    if (it == player_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Vertex> GameGraph::Builder::find_vertex(std::string_view name) const
{
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

GameGraph GameGraph::Builder::build() &&
{
    GameGraph g;
    g.players_ = std::move(players_);
    g.vertices_ = std::move(vertices_);
    g.owner_ = std::move(owner_);
    g.edges_ = std::move(edges_);
    g.player_index_ = std::move(player_index_);
    g.vertex_index_ = std::move(vertex_index_);
    g.pair_index_ = std::move(pair_index_);
    g.out_.resize(g.vertices_.size());
    for (EdgeId e = 0; e < g.edges_.size(); ++e) g.out_[g.edges_[e].from].push_back(e);
    return g;
}

std::optional<EdgeId> GameGraph::find_edge(Vertex from, Vertex to) const
{
    auto it = pair_index_.find(pair_key(from, to));
    if (it == pair_index_.end()) return std::nullopt;
    return it->second;
}

const Edge& GameGraph::edge_between(Vertex from, Vertex to) const
{
    auto e = find_edge(from, to);
    if (!e) throw GameError("no edge " + vertex_name(from) + "->" + vertex_name(to));
    return edges_[*e];
}

std::optional<PlayerId> GameGraph::find_player(std::string_view name) const
{
    auto it = player_index_.find(std::string(name));
    if (it == player_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Vertex> GameGraph::find_vertex(std::string_view name) const
{
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

PlayerId GameGraph::player(std::string_view name) const
{
    auto p = find_player(name);
    if (!p) throw GameError("unknown player '" + std::string(name) + "'");
    return *p;
}

Vertex GameGraph::vertex(std::string_view name) const
{
    auto v = find_vertex(name);
    if (!v) throw GameError("unknown vertex '" + std::string(name) + "'");
    return *v;
}

std::vector<Vertex> GameGraph::vertices_of(PlayerId p) const
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < owner_.size(); ++v) {
        if (owner_[v] == p) out.push_back(v);
    }
    return out;
}

bool GameGraph::has_unit_rewards() const
{
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.reward == 1; });
}

bool GameGraph::operator==(const GameGraph& other) const
{
    return players_ == other.players_ && vertices_ == other.vertices_ && owner_ == other.owner_ &&
           edges_ == other.edges_;
}

ReachabilityPrice make_reachability(std::vector<Vertex> goal)
{
    std::sort(goal.begin(), goal.end());
    goal.erase(std::unique(goal.begin(), goal.end()), goal.end());
    return ReachabilityPrice{std::move(goal)};
}

std::string_view spec_type_name(const CostSpec& spec)
{
    struct Name {
        std::string_view operator()(const ReachabilityPrice&) const { return "reachability_price"; }
        std::string_view operator()(const DiscountedPrice&) const { return "discounted"; }
        std::string_view operator()(const MeanPayoff&) const { return "mean_payoff"; }
        std::string_view operator()(const RatioAverage&) const { return "ratio"; }
        std::string_view operator()(const EnergySup&) const { return "energy_sup"; }
    };
    return std::visit(Name{}, spec);
}

bool is_solvable(const CostSpec& spec)
{
    return !std::holds_alternative<EnergySup>(spec);
}

void check_history(const GameGraph& g, const History& h)
{
    if (h.empty()) throw GameError("empty history");
    for (Vertex v : h) {
        if (v >= g.num_vertices()) throw GameError("history vertex out of range");
    }
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (!g.find_edge(h[i - 1], h[i])) {
            throw GameError("history leaves the graph at " + g.vertex_name(h[i - 1]) + "->" + g.vertex_name(h[i]));
        }
    }
}

LassoPlay::LassoPlay(std::vector<Vertex> prefix, std::vector<Vertex> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle))
{
    if (cycle_.empty()) throw GameError("lasso with an empty cycle");
    // primitive root of the cycle
    const std::size_t c = cycle_.size();
    for (std::size_t d = 1; d < c; ++d) {
        if (c % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < c && periodic; ++i) periodic = cycle_[i] == cycle_[i - d];
        if (periodic) {
            cycle_.resize(d);
            break;
        }
    }
    // fold the prefix tail into the cycle
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
        prefix_.pop_back();
        std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
    }
}

Vertex LassoPlay::at(std::size_t i) const
{
    if (i < prefix_.size()) return prefix_[i];
    return cycle_[(i - prefix_.size()) % cycle_.size()];
}

std::vector<Vertex> LassoPlay::unroll(std::size_t count) const
{
    std::vector<Vertex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(at(i));
    return out;
}

void check_lasso(const GameGraph& g, const LassoPlay& play)
{
    History path = play.unroll(play.prefix().size() + play.cycle().size() + 1);
    check_history(g, path);
}

std::string format_lasso(const GameGraph& g, const LassoPlay& play)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < play.prefix().size(); ++i) {
        if (i) out << ',';
        out << g.vertex_name(play.prefix()[i]);
    }
    if (!play.prefix().empty()) out << ';';
    out << '(';
    for (std::size_t i = 0; i < play.cycle().size(); ++i) {
        if (i) out << ',';
        out << g.vertex_name(play.cycle()[i]);
    }
    out << ')';
    return out.str();
}

namespace {

std::vector<Vertex> parse_vertex_list(const GameGraph& g, std::string_view text)
{
    std::vector<Vertex> out;
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '(')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == ')')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        auto comma = text.find(',', pos);
        auto token = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        out.push_back(g.vertex(token));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

LassoPlay parse_lasso(const GameGraph& g, std::string_view text)
{
    auto semi = text.find(';');
    std::vector<Vertex> prefix;
    std::string_view cycle_text = text;
    if (semi != std::string_view::npos) {
        prefix = parse_vertex_list(g, text.substr(0, semi));
        cycle_text = text.substr(semi + 1);
    }
    std::vector<Vertex> cycle = parse_vertex_list(g, cycle_text);
    if (cycle.empty()) throw GameError("lasso '" + std::string(text) + "' has an empty cycle");
    LassoPlay play(std::move(prefix), std::move(cycle));
    check_lasso(g, play);
    return play;
}

Vertex PositionalStrategy::at(Vertex v) const
{
    if (!controls(v)) throw GameError("strategy does not control vertex " + std::to_string(v));
    return *choice[v];
}

void check_strategy(const GameGraph& g, const PositionalStrategy& s)
{
    if (s.choice.size() != g.num_vertices()) throw GameError("strategy size does not match the graph");
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (s.choice[v] && !g.find_edge(v, *s.choice[v])) {
            throw GameError("strategy move " + g.vertex_name(v) + "->" + g.vertex_name(*s.choice[v]) +
                            " is not an edge");
        }
    }
}

StrategyAutomaton StrategyAutomaton::from_positional(const GameGraph& g, PlayerId player, bool coalition,
                                                     const PositionalStrategy& s)
{
    StrategyAutomaton a;
    a.player = player;
    a.coalition = coalition;
    a.states = {"m0"};
    a.update.assign(1, std::vector<std::size_t>(g.num_vertices(), 0));
    a.advice.assign(1, std::vector<std::optional<Vertex>>(g.num_vertices()));
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (a.controls(g, v)) a.advice[0][v] = s.at(v);
    }
    return a;
}

void check_automaton(const GameGraph& g, const StrategyAutomaton& a)
{
    const std::size_t m = a.states.size();
    if (m == 0) throw GameError("automaton without states");
    if (a.initial >= m) throw GameError("automaton initial state out of range");
    if (a.update.size() != m || a.advice.size() != m) throw GameError("automaton tables do not match its states");
    for (std::size_t s = 0; s < m; ++s) {
        if (a.update[s].size() != g.num_vertices() || a.advice[s].size() != g.num_vertices()) {
            throw GameError("automaton tables do not cover every vertex");
        }
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
            if (a.update[s][v] >= m) throw GameError("automaton update leaves the state set");
            const auto& adv = a.advice[s][v];
            if (a.controls(g, v)) {
                if (!adv) {
                    throw GameError("automaton gives no advice in state " + a.states[s] + " at " + g.vertex_name(v));
                }
                if (!g.find_edge(v, *adv)) {
                    throw GameError("automaton advice " + g.vertex_name(v) + "->" + g.vertex_name(*adv) +
                                    " is not an edge");
                }
            } else if (adv) {
                throw GameError("automaton advises at uncontrolled vertex " + g.vertex_name(v));
            }
        }
    }
}

ValidationReport validate_game(const GameGraph& g, const SpecMap& specs)
{
    ValidationReport report;
    using K = Violation::Kind;

    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (g.out_edges(v).empty()) report.push_back({K::SinkVertex, "sink vertex " + g.vertex_name(v)});
    }
    for (PlayerId p = 0; p < g.num_players(); ++p) {
        if (!specs.contains(p)) {
            report.push_back({K::MissingObjective, "no objective for player " + g.player_name(p)});
        }
    }
    bool needs_nonnegative = false;
    bool needs_diverging = false;
    for (const auto& [p, spec] : specs) {
        if (p >= g.num_players()) {
            report.push_back({K::UnknownPlayer, "objective for unknown player #" + std::to_string(p)});
            continue;
        }
        const std::string& who = g.player_name(p);
        if (const auto* rp = std::get_if<ReachabilityPrice>(&spec)) {
            needs_nonnegative = true;
            if (rp->goal.empty()) report.push_back({K::EmptyGoal, "empty goal set for player " + who});
            for (Vertex v : rp->goal) {
                if (v >= g.num_vertices()) {
                    report.push_back({K::GoalOutOfRange, "goal vertex out of range for player " + who});
                }
            }
        } else if (const auto* dp = std::get_if<DiscountedPrice>(&spec)) {
            if (dp->lambda <= 0 || dp->lambda >= 1) {
                report.push_back({K::DiscountOutOfRange, "lambda out of range (0,1) for player " + who});
            }
        } else if (std::holds_alternative<RatioAverage>(spec)) {
            needs_diverging = true;
        }
    }
    if (needs_nonnegative) {
        for (const Edge& e : g.edges()) {
            if (e.price < 0) {
                report.push_back({K::NegativePrice, "negative price on " + g.vertex_name(e.from) + "->" +
                                                        g.vertex_name(e.to) + " with a reachability-price objective"});
            }
        }
    }
    if (needs_diverging) {
        WeightedGraph rewards(g.num_vertices());
        for (const Edge& e : g.edges()) rewards[e.from].push_back({e.to, e.reward});
        auto m = min_cycle_mean(rewards);
        if (m && *m <= 0) {
            report.push_back({K::NonDivergingReward, "non-diverging reward: some cycle has reward sum <= 0"});
        }
    }
    return report;
}

}  // namespace costgames
