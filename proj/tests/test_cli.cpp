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
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace costgames;
using namespace costgames::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "costgames");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: synthesize and eval")
{
    const std::string game = data_path("reach_average.json");
    Run s = run({"synthesize", game});
    CHECK(s.code == kExitOk);
    CHECK(s.out.find("outcome: A;(B,C)\ncosts: p1=2 p2=2\n") == 0);
    CHECK(s.out.find("BC --A/D--> p2") != std::string::npos);
    CHECK(run({"synthesize", game}).out == s.out);

    Run o = run({"synthesize", game, "--override", "p1=A:D"});
    CHECK(o.out.find("outcome: A,D;(B,C)\ncosts: p1=6 p2=2\n") == 0);

    Run e = run({"eval", game, "--player", "p2", "--lasso", "A;B,C"});
    CHECK(e.code == kExitOk);
    CHECK(e.out == "2\n");
}

TEST_CASE("cli: verify exit codes")
{
    const std::string game = data_path("reach_average.json");
    Run bad = run({"verify", game, "--profile", data_path("no-punish.json")});
    CHECK(bad.code == kExitDeviation);
    CHECK(bad.out.find("p2: cost 2, best response 1") != std::string::npos);

    auto tmp = std::filesystem::temp_directory_path() / "costgames_cli_test";
    std::filesystem::create_directories(tmp);
    Run s = run({"synthesize", game, "--emit-json", (tmp / "ne.json").string(), "--emit-dot", (tmp / "dot").string()});
    CHECK(s.code == kExitOk);
    CHECK(std::filesystem::exists(tmp / "dot" / "automaton_p1.dot"));
    Run good = run({"verify", game, "--profile", (tmp / "ne.json").string()});
    CHECK(good.code == kExitOk);
    CHECK(good.out.find("nash equilibrium") != std::string::npos);
    std::filesystem::remove_all(tmp);
}

TEST_CASE("cli: errors")
{
    Run missing = run({"validate", data_path("does-not-exist.json")});
    CHECK(missing.code == kExitInvalid);
    CHECK(!missing.err.empty());
    CHECK(missing.out.empty());
    CHECK(run({"frobnicate"}).code == kExitInvalid);
    CHECK(run({"validate", data_path("reach_average.json")}).code == kExitOk);
    CHECK(run({"solve", data_path("energy.json"), "--player", "p1"}).code == kExitInvalid);
    Run oracle = run({"oracle", data_path("reach_average.json"), "--player", "p2"});
    CHECK(oracle.code == kExitOk);
    CHECK(oracle.out.find("determined") != std::string::npos);
}
