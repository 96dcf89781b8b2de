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

#include "costgames/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace costgames {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) out += '\n';
        out += l;
    }
    return out;
}

class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

    std::optional<Rational> rational(const json& j, const std::string& path)
    {
        try {
            if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
            if (j.is_string()) return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            fail(path, e.what());
            return std::nullopt;
        }
        fail(path, "expected a rational as an integer or a \"num/den\" string");
        return std::nullopt;
    }

    const json* member(const json& obj, const std::string& key, const std::string& path, bool required = true)
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(path, "missing key \"" + key + "\"");
            return nullptr;
        }
        return &*it;
    }

    std::optional<std::string> string(const json& obj, const std::string& key, const std::string& path)
    {
        const json* j = member(obj, key, path);
        if (!j) return std::nullopt;
        if (!j->is_string()) {
            fail(path + "." + key, "expected a string");
            return std::nullopt;
        }
        return j->get<std::string>();
    }
};

json parse_json(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError({std::string("malformed JSON: ") + e.what()});
    }
}

std::optional<CostSpec> read_objective(Reader& r, const GameGraph::Builder& b, const json& obj,
                                       const std::string& path)
{
    if (!obj.is_object()) {
        r.fail(path, "expected an object");
        return std::nullopt;
    }
    auto type = r.string(obj, "type", path);
    if (!type) return std::nullopt;
    if (*type == "reachability_price") {
        const json* goal = r.member(obj, "goal", path);
        if (!goal) return std::nullopt;
        if (!goal->is_array()) {
            r.fail(path + ".goal", "expected a list of vertex ids");
            return std::nullopt;
        }
        std::vector<Vertex> vs;
        for (std::size_t k = 0; k < goal->size(); ++k) {
            const json& x = (*goal)[k];
            auto v = x.is_string() ? b.find_vertex(x.get<std::string>()) : std::nullopt;
            if (!v) {
                r.fail(path + ".goal[" + std::to_string(k) + "]", "unknown vertex " + x.dump());
                continue;
            }
            vs.push_back(*v);
        }
        return make_reachability(std::move(vs));
    }
    if (*type == "discounted") {
        const json* l = r.member(obj, "lambda", path);
        if (!l) return std::nullopt;
        auto lambda = r.rational(*l, path + ".lambda");
        if (!lambda) return std::nullopt;
        if (*lambda <= 0 || *lambda >= 1) {
            r.fail(path + ".lambda", "lambda out of range (0,1)");
            return std::nullopt;
        }
        return DiscountedPrice{*lambda};
    }
    if (*type == "mean_payoff") return MeanPayoff{};
    if (*type == "ratio") return RatioAverage{};
    if (*type == "energy_sup") {
        const json* t = r.member(obj, "threshold", path);
        if (!t) return std::nullopt;
        auto threshold = r.rational(*t, path + ".threshold");
        if (!threshold) return std::nullopt;
        return EnergySup{*threshold};
    }
    r.fail(path + ".type", "unknown objective type \"" + *type + "\"");
    return std::nullopt;
}

std::string rational_string(const Rational& q) { return format_rational(q); }

}  // namespace

ParseError::ParseError(std::vector<std::string> errors) : GameError(join(errors)), errors_(std::move(errors)) {}

GameDocument parse_game(std::string_view text)
{
    json doc = parse_json(text);
    Reader r;
    if (!doc.is_object()) throw ParseError({".: expected an object"});

    GameGraph::Builder b;
    if (const json* players = r.member(doc, "players", ".")) {
        if (!players->is_array()) r.fail(".players", "expected a list of names");
        for (std::size_t k = 0; players->is_array() && k < players->size(); ++k) {
            const json& p = (*players)[k];
            std::string path = ".players[" + std::to_string(k) + "]";
            if (!p.is_string()) {
                r.fail(path, "expected a string");
            } else if (b.find_player(p.get<std::string>())) {
                r.fail(path, "duplicate player " + p.get<std::string>());
            } else {
                b.add_player(p.get<std::string>());
            }
        }
    }
    if (const json* vertices = r.member(doc, "vertices", ".")) {
        if (!vertices->is_array()) r.fail(".vertices", "expected a list");
        for (std::size_t k = 0; vertices->is_array() && k < vertices->size(); ++k) {
            const json& v = (*vertices)[k];
            std::string path = ".vertices[" + std::to_string(k) + "]";
            if (!v.is_object()) {
                r.fail(path, "expected an object");
                continue;
            }
            auto id = r.string(v, "id", path);
            auto owner = r.string(v, "owner", path);
            if (!id || !owner) continue;
            auto p = b.find_player(*owner);
            if (!p) {
                r.fail(path + ".owner", "unknown player " + *owner);
            } else if (b.find_vertex(*id)) {
                r.fail(path + ".id", "duplicate vertex " + *id);
            } else {
                b.add_vertex(*id, *p);
            }
        }
    }
    if (const json* edges = r.member(doc, "edges", ".")) {
        if (!edges->is_array()) r.fail(".edges", "expected a list");
        for (std::size_t k = 0; edges->is_array() && k < edges->size(); ++k) {
            const json& e = (*edges)[k];
            std::string path = ".edges[" + std::to_string(k) + "]";
            if (!e.is_object()) {
                r.fail(path, "expected an object");
                continue;
            }
            auto from = r.string(e, "from", path);
            auto to = r.string(e, "to", path);
            const json* pj = r.member(e, "price", path);
            std::optional<Rational> price = pj ? r.rational(*pj, path + ".price") : std::nullopt;
            std::optional<Rational> reward = Rational(1);
            if (const json* rj = r.member(e, "reward", path, false)) reward = r.rational(*rj, path + ".reward");
            if (!from || !to || !price || !reward) continue;
            if (!b.find_vertex(*from)) {
                r.fail(path + ".from", "unknown vertex " + *from);
                continue;
            }
            if (!b.find_vertex(*to)) {
                r.fail(path + ".to", "unknown vertex " + *to);
                continue;
            }
            try {
                b.add_edge(*from, *to, *price, *reward);
            } catch (const GameError& err) {
                r.fail(path, err.what());
            }
        }
    }
    std::optional<Vertex> initial;
    if (auto name = r.string(doc, "initial", ".")) {
        initial = b.find_vertex(*name);
        if (!initial) r.fail(".initial", "unknown vertex " + *name);
    }
    SpecMap specs;
    if (const json* objectives = r.member(doc, "objectives", ".")) {
        if (!objectives->is_object()) r.fail(".objectives", "expected an object keyed by player");
        for (auto it = objectives->begin(); objectives->is_object() && it != objectives->end(); ++it) {
            std::string path = ".objectives." + it.key();
            auto p = b.find_player(it.key());
            if (!p) {
                r.fail(path, "unknown player " + it.key());
                continue;
            }
            if (auto spec = read_objective(r, b, it.value(), path)) specs.emplace(*p, *spec);
        }
    }
    if (!r.errors.empty()) throw ParseError(r.errors);
    return GameDocument{std::move(b).build(), std::move(specs), *initial};
}

std::string serialize_game(const GameDocument& doc)
{
    const GameGraph& g = doc.graph;
    json out = json::object();
    out["players"] = json::array();
    for (PlayerId p = 0; p < g.num_players(); ++p) out["players"].push_back(g.player_name(p));
    out["vertices"] = json::array();
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        out["vertices"].push_back({{"id", g.vertex_name(v)}, {"owner", g.player_name(g.owner(v))}});
    }
    out["edges"] = json::array();
    for (const Edge& e : g.edges()) {
        out["edges"].push_back({{"from", g.vertex_name(e.from)},
                                {"to", g.vertex_name(e.to)},
                                {"price", rational_string(e.price)},
                                {"reward", rational_string(e.reward)}});
    }
    out["initial"] = g.vertex_name(doc.initial);
    out["objectives"] = json::object();
    for (const auto& [p, spec] : doc.specs) {
        json o = {{"type", std::string(spec_type_name(spec))}};
        if (const auto* rp = std::get_if<ReachabilityPrice>(&spec)) {
            o["goal"] = json::array();
            for (Vertex v : rp->goal) o["goal"].push_back(g.vertex_name(v));
        } else if (const auto* dp = std::get_if<DiscountedPrice>(&spec)) {
            o["lambda"] = rational_string(dp->lambda);
        } else if (const auto* es = std::get_if<EnergySup>(&spec)) {
            o["threshold"] = rational_string(es->threshold);
        }
        out["objectives"][g.player_name(p)] = o;
    }
    return out.dump(2) + "\n";
}

AutomatonProfile parse_profile(const GameGraph& g, std::string_view text)
{
    json doc = parse_json(text);
    Reader r;
    if (!doc.is_object()) throw ParseError({".: expected an object"});
    const json* automata = r.member(doc, "automata", ".");
    if (!automata || !automata->is_object()) {
        if (automata) r.fail(".automata", "expected an object keyed by player");
        throw ParseError(r.errors);
    }
    AutomatonProfile out;
    for (auto it = automata->begin(); it != automata->end(); ++it) {
        const std::string path = ".automata." + it.key();
        const json& a = it.value();
        auto p = g.find_player(it.key());
        if (!p) {
            r.fail(path, "unknown player " + it.key());
            continue;
        }
        if (!a.is_object()) {
            r.fail(path, "expected an object");
            continue;
        }
        StrategyAutomaton aut;
        aut.player = *p;
        if (const json* c = r.member(a, "coalition", path, false)) {
            if (!c->is_boolean()) {
                r.fail(path + ".coalition", "expected a boolean");
                continue;
            }
            aut.coalition = c->get<bool>();
        }
        const std::size_t before = r.errors.size();
        std::map<std::string, std::size_t> state_index;
        if (const json* states = r.member(a, "states", path)) {
            for (std::size_t k = 0; states->is_array() && k < states->size(); ++k) {
                const json& s = (*states)[k];
                if (!s.is_string() || !state_index.emplace(s.get<std::string>(), k).second) {
                    r.fail(path + ".states[" + std::to_string(k) + "]", "expected a unique state name");
                    continue;
                }
                aut.states.push_back(s.get<std::string>());
            }
            if (!states->is_array() || states->empty()) r.fail(path + ".states", "expected a non-empty list");
        }
        if (auto init = r.string(a, "initial", path)) {
            if (!state_index.count(*init)) {
                r.fail(path + ".initial", "unknown state " + *init);
            } else {
                aut.initial = state_index.at(*init);
            }
        }
        if (r.errors.size() != before) continue;
        const std::size_t m = aut.states.size();
        aut.update.assign(m, std::vector<std::size_t>(g.num_vertices(), m));
        aut.advice.assign(m, std::vector<std::optional<Vertex>>(g.num_vertices()));
        auto read_table = [&](const char* key, bool to_state) {
            const json* table = r.member(a, key, path);
            if (!table) return;
            const std::string tpath = path + "." + key;
            if (!table->is_object()) {
                r.fail(tpath, "expected an object keyed by state");
                return;
            }
            for (auto st = table->begin(); st != table->end(); ++st) {
                auto s = state_index.find(st.key());
                if (s == state_index.end() || !st.value().is_object()) {
                    r.fail(tpath + "." + st.key(), "unknown state or malformed row");
                    continue;
                }
                for (auto cell = st.value().begin(); cell != st.value().end(); ++cell) {
                    const std::string cpath = tpath + "." + st.key() + "." + cell.key();
                    auto v = g.find_vertex(cell.key());
                    if (!v || !cell.value().is_string()) {
                        r.fail(cpath, "unknown vertex or non-string entry");
                        continue;
                    }
                    const std::string target = cell.value().get<std::string>();
                    if (to_state) {
                        auto t = state_index.find(target);
                        if (t == state_index.end()) {
                            r.fail(cpath, "unknown state " + target);
                        } else {
                            aut.update[s->second][*v] = t->second;
                        }
                    } else if (auto w = g.find_vertex(target)) {
                        aut.advice[s->second][*v] = *w;
                    } else {
                        r.fail(cpath, "unknown vertex " + target);
                    }
                }
            }
        };
        read_table("update", true);
        read_table("advice", false);
        if (r.errors.size() != before) continue;
        for (std::size_t s = 0; s < m; ++s) {
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                if (aut.update[s][v] == m) {
                    r.fail(path + ".update." + aut.states[s], "no transition on " + g.vertex_name(v));
                }
            }
        }
        if (r.errors.size() != before) continue;
        try {
            check_automaton(g, aut);
        } catch (const GameError& e) {
            r.fail(path, e.what());
            continue;
        }
        out.emplace(*p, std::move(aut));
    }
    if (!r.errors.empty()) throw ParseError(r.errors);
    return out;
}

std::string serialize_profile(const GameGraph& g, const AutomatonProfile& profile)
{
    json automata = json::object();
    for (const auto& [p, a] : profile) {
        json update = json::object(), advice = json::object();
        for (std::size_t s = 0; s < a.size(); ++s) {
            json urow = json::object(), arow = json::object();
            for (Vertex v = 0; v < g.num_vertices(); ++v) {
                urow[g.vertex_name(v)] = a.states[a.update[s][v]];
                if (a.advice[s][v]) arow[g.vertex_name(v)] = g.vertex_name(*a.advice[s][v]);
            }
            update[a.states[s]] = urow;
            if (!arow.empty()) advice[a.states[s]] = arow;
        }
        automata[g.player_name(p)] = {{"states", a.states},    {"initial", a.states[a.initial]},
                                      {"coalition", a.coalition}, {"update", update},
                                      {"advice", advice}};
    }
    return json{{"automata", automata}}.dump(2) + "\n";
}

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const GameGraph& g, const DotHighlight& highlight)
{
    std::set<Vertex> shaded(highlight.shaded.begin(), highlight.shaded.end());
    std::set<std::pair<Vertex, Vertex>> bold;
    if (highlight.lasso) {
        const auto& pre = highlight.lasso->prefix();
        const auto& cyc = highlight.lasso->cycle();
        shaded.insert(pre.begin(), pre.end());
        shaded.insert(cyc.begin(), cyc.end());
        std::vector<Vertex> walk = highlight.lasso->unroll(pre.size() + cyc.size() + 1);
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) bold.emplace(walk[i], walk[i + 1]);
    }
    const bool with_rewards = std::any_of(g.edges().begin(), g.edges().end(), [](const Edge& e) { return e.reward != 1; });

    std::ostringstream out;
    out << "digraph game {\n  rankdir=LR;\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const bool circle = g.num_players() == 2 && g.owner(v) == 0;
        out << "  " << quote(g.vertex_name(v)) << " [shape=" << (circle ? "circle" : "box");
        if (shaded.count(v)) out << ", style=filled, fillcolor=lightgray";
        out << "];\n";
    }
    for (const Edge& e : g.edges()) {
        std::string label = format_rational(e.price);
        if (with_rewards) label += "/" + format_rational(e.reward);
        out << "  " << quote(g.vertex_name(e.from)) << " -> " << quote(g.vertex_name(e.to)) << " [label="
            << quote(label);
        if (bold.count({e.from, e.to})) out << ", penwidth=2";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::vector<AutomatonTransition> reachable_transitions(const GameGraph& g, const StrategyAutomaton& a,
                                                       std::optional<Vertex> start)
{
    check_automaton(g, a);
    // explore (state, vertex about to be read) from the start of the play
    std::set<std::pair<std::size_t, Vertex>> seen;
    std::vector<std::pair<std::size_t, Vertex>> stack;
    for (Vertex v0 = g.num_vertices(); v0-- > 0;) {
        if (!start || *start == v0) stack.emplace_back(a.initial, v0);
    }
    std::vector<AutomatonTransition> out;
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;
        auto [s, v] = cur;
        const std::size_t t = a.update[s][v];
        out.push_back({s, t, v, a.advice[s][v]});
        if (a.advice[s][v]) {
            stack.emplace_back(t, *a.advice[s][v]);
        } else {
            auto outs = g.out_edges(v);
            for (std::size_t k = outs.size(); k-- > 0;) stack.emplace_back(t, g.edge(outs[k]).to);
        }
    }
    std::sort(out.begin(), out.end(), [](const AutomatonTransition& x, const AutomatonTransition& y) {
        return std::tie(x.from, x.read) < std::tie(y.from, y.read);
    });
    return out;
}

std::string transition_label(const GameGraph& g, const AutomatonTransition& t)
{
    return g.vertex_name(t.read) + "/" + (t.advice ? g.vertex_name(*t.advice) : "-");
}

std::string export_automaton_dot(const GameGraph& g, const StrategyAutomaton& a, std::optional<Vertex> start)
{
    std::vector<AutomatonTransition> transitions = reachable_transitions(g, a, start);
    std::set<std::size_t> states{a.initial};
    for (const auto& t : transitions) {
        states.insert(t.from);
        states.insert(t.to);
    }
    std::ostringstream out;
    out << "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
    for (std::size_t s : states) out << "  " << quote(a.states[s]) << " [shape=circle];\n";
    out << "  start -> " << quote(a.states[a.initial]) << ";\n";
    for (const auto& t : transitions) {
        out << "  " << quote(a.states[t.from]) << " -> " << quote(a.states[t.to])
            << " [label=" << quote(transition_label(g, t)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace costgames
