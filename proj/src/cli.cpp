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

#include "costgames/cli.hpp"

#include "costgames/equilibrium.hpp"
#include "costgames/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace costgames {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GameError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GameError("cannot write " + path.string());
    out << text;
}

GameDocument load(const std::string& path, bool require_valid)
{
    GameDocument doc = parse_game(read_file(path));
    if (require_valid) {
        ValidationReport report = validate_game(doc.graph, doc.specs);
        if (!report.empty()) {
            std::vector<std::string> msgs;
            for (const auto& v : report) msgs.push_back(v.message);
            throw ParseError(msgs);
        }
    }
    return doc;
}

PlayerId player_arg(const GameDocument& doc, const std::string& name)
{
    auto p = doc.graph.find_player(name);
    if (!p) throw GameError("unknown player " + name);
    if (!doc.specs.count(*p)) throw GameError("no objective for player " + name);
    return *p;
}

void print_strategy(std::ostream& out, const GameGraph& g, const std::string& title, const PositionalStrategy& s)
{
    out << title << ":\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        if (s.controls(v)) out << "  " << g.vertex_name(v) << " -> " << g.vertex_name(s.at(v)) << "\n";
    }
}

void print_automaton(std::ostream& out, const GameGraph& g, const StrategyAutomaton& a, Vertex v0)
{
    out << "automaton " << g.player_name(a.player) << ": " << a.size() << " states, initial "
        << a.states[a.initial] << "\n";
    for (const auto& t : reachable_transitions(g, a, v0)) {
        out << "  " << a.states[t.from] << " --" << transition_label(g, t) << "--> " << a.states[t.to] << "\n";
    }
}

Overrides parse_overrides(const GameGraph& g, const std::vector<std::string>& items)
{
    Overrides out;
    for (const std::string& item : items) {
        auto eq = item.find('=');
        auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || colon == std::string::npos) {
            throw GameError("override \"" + item + "\" is not of the form player=FROM:TO");
        }
        PlayerId p = g.player(item.substr(0, eq));
        Vertex from = g.vertex(item.substr(eq + 1, colon - eq - 1));
        Vertex to = g.vertex(item.substr(colon + 1));
        out[p][from] = to;
    }
    return out;
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err)
{
    GameDocument doc = load(file, false);
    ValidationReport report = validate_game(doc.graph, doc.specs);
    for (const auto& v : report) err << "invalid: " << v.message << "\n";
    if (!report.empty()) return kExitInvalid;
    out << "valid: " << doc.graph.num_players() << " players, " << doc.graph.num_vertices() << " vertices, "
        << doc.graph.num_edges() << " edges\n";
    return kExitOk;
}

int cmd_eval(const std::string& file, const std::string& player, const std::string& lasso, std::ostream& out)
{
    GameDocument doc = load(file, false);
    PlayerId p = player_arg(doc, player);
    out << eval_lasso(doc.specs.at(p), parse_lasso(doc.graph, lasso), doc.graph).to_string() << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& file, const std::string& player, std::ostream& out)
{
    GameDocument doc = load(file, true);
    const GameGraph& g = doc.graph;
    PlayerId p = player_arg(doc, player);
    SolveResult res = solve(MinMaxInstance::for_player(g, p, doc.specs.at(p)));
    out << "values (" << spec_type_name(doc.specs.at(p)) << ", " << player << " minimizes):\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        out << "  " << g.vertex_name(v) << " " << res.values[v].to_string() << "\n";
    }
    print_strategy(out, g, "strategy of " + player, res.sigma_min);
    print_strategy(out, g, "strategy of the coalition against " + player, res.sigma_max);
    return kExitOk;
}

int cmd_synthesize(const std::string& file, const std::vector<std::string>& overrides, const std::string& dot_dir,
                   const std::string& json_file, std::ostream& out)
{
    GameDocument doc = load(file, true);
    const GameGraph& g = doc.graph;
    NashProfile ne = synthesize_ne(g, doc.specs, doc.initial, parse_overrides(g, overrides));
    out << "outcome: " << format_lasso(g, ne.outcome) << "\n";
    out << "costs:";
    for (const auto& [p, c] : ne.costs) out << " " << g.player_name(p) << "=" << c.to_string();
    out << "\n";
    for (const auto& [p, a] : ne.automata) print_automaton(out, g, a, doc.initial);

    if (!dot_dir.empty()) {
        std::filesystem::path dir(dot_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "game.dot", export_dot(g, DotHighlight{{}, ne.outcome}));
        for (const auto& [p, a] : ne.automata) {
            write_file(dir / ("automaton_" + g.player_name(p) + ".dot"), export_automaton_dot(g, a, doc.initial));
        }
    }
    if (!json_file.empty()) {
        nlohmann::json j = nlohmann::json::parse(serialize_profile(g, ne.automata));
        j["initial"] = g.vertex_name(doc.initial);
        j["outcome"] = format_lasso(g, ne.outcome);
        for (const auto& [p, c] : ne.costs) j["costs"][g.player_name(p)] = c.to_string();
        write_file(json_file, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& profile_file, std::ostream& out)
{
    GameDocument doc = load(file, true);
    const GameGraph& g = doc.graph;
    AutomatonProfile profile = parse_profile(g, read_file(profile_file));
    VerificationReport report = verify_ne(g, doc.specs, profile, doc.initial);
    out << "outcome: " << format_lasso(g, report.outcome) << "\n";
    for (const auto& c : report.players) {
        out << g.player_name(c.player) << ": cost " << c.outcome_cost.to_string() << ", best response "
            << c.best_response.to_string();
        if (c.profitable()) out << ", profitable deviation " << format_lasso(g, c.witness);
        out << "\n";
    }
    out << (report.is_equilibrium() ? "nash equilibrium\n" : "not a nash equilibrium\n");
    return report.is_equilibrium() ? kExitOk : kExitDeviation;
}

int cmd_oracle(const std::string& file, const std::string& player, std::ostream& out)
{
    GameDocument doc = load(file, true);
    const GameGraph& g = doc.graph;
    PlayerId p = player_arg(doc, player);
    BruteForceResult bf = brute_force_value(MinMaxInstance::for_player(g, p, doc.specs.at(p)));
    out << "vertex min-max max-min\n";
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        out << g.vertex_name(v) << " " << bf.min_max[v].to_string() << " " << bf.max_min[v].to_string() << "\n";
    }
    out << (bf.determined() ? "determined\n" : "not determined\n");
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Nash equilibria in multiplayer cost games on graphs", "costgames"};
    app.require_subcommand(1);

    std::string file, player, lasso, profile, dot_dir, json_file;
    std::vector<std::string> overrides;

    auto* validate = app.add_subcommand("validate", "Check a game document");
    validate->add_option("game", file, "Game JSON")->required();

    auto* eval = app.add_subcommand("eval", "Cost of a lasso play for one player");
    eval->add_option("game", file, "Game JSON")->required();
    eval->add_option("--player", player, "Player name")->required();
    eval->add_option("--lasso", lasso, "Play as \"prefix;cycle\", e.g. \"A;B,C\"")->required();

    auto* solve_cmd = app.add_subcommand("solve", "Values and optimal strategies of a player against the others");
    solve_cmd->add_option("game", file, "Game JSON")->required();
    solve_cmd->add_option("--player", player, "Player name")->required();

    auto* synth = app.add_subcommand("synthesize", "Build a Nash equilibrium with finite-memory strategies");
    synth->add_option("game", file, "Game JSON")->required();
    synth->add_option("--override", overrides, "Replace optimal moves, e.g. p1=A:D")->delimiter(',');
    synth->add_option("--emit-dot", dot_dir, "Write DOT renderings into this directory");
    synth->add_option("--emit-json", json_file, "Write the strategy profile as JSON");

    auto* verify = app.add_subcommand("verify", "Search for a profitable unilateral deviation");
    verify->add_option("game", file, "Game JSON")->required();
    verify->add_option("--profile", profile, "Profile JSON")->required();

    auto* oracle = app.add_subcommand("oracle", "Brute-force values over positional strategies");
    oracle->add_option("game", file, "Game JSON")->required();
    oracle->add_option("--player", player, "Player name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (*validate) return cmd_validate(file, out, err);
        if (*eval) return cmd_eval(file, player, lasso, out);
        if (*solve_cmd) return cmd_solve(file, player, out);
        if (*synth) return cmd_synthesize(file, overrides, dot_dir, json_file, out);
        if (*verify) return cmd_verify(file, profile, out);
        if (*oracle) return cmd_oracle(file, player, out);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace costgames
