// Copyright 2026 The Tauforge Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "tauforge/io.hpp"
#include "tauforge/machine.hpp"
#include "tauforge/polynomial.hpp"

using namespace tauforge;
using tauforge::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return io::parse_json(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tauforge");
  std::vector<const char *> argv;
  for (const std::string &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string &name, const std::string &contents) {
  auto dir = std::filesystem::temp_directory_path() / "tauforge_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << contents;
  return path.string();
}

const char *kSquareMinusOne =
    R"({"arity": 1, "terms": [{"exp": [2], "coef": "1"}, {"exp": [0], "coef": "-1"}]})";

std::string machine_set() {
  Json entries = Json::array();
  for (unsigned m : {2u, 3u, 5u})
    entries.push_back(
        Json{{"size", m}, {"builtin", {{"name", "membership"}, {"param", m}}}});
  entries.push_back(Json{{"size", 2}, {"builtin", {{"name", "example2"}, {"param", 2}}}});
  return Json{{"entries", entries}}.dump();
}

}  // namespace

TEST_CASE("tau reports the minimal length and a witness") {
  Run r = run({"tau", scratch("sq.json", kSquareMinusOne)});
  REQUIRE(r.code == 0);
  Json j = r.json();
  CHECK(j["tool"] == "tauforge");
  CHECK(j["version"] == TAUFORGE_VERSION);
  CHECK(j["command"] == "tau");
  CHECK(j["result"]["tau"] == 3);
  Slp w = parse_slp(j["result"]["witness"].get<std::string>());
  CHECK(expand_to_polynomial(w, 64) == io::poly_from_json(io::parse_json(kSquareMinusOne)));
  CHECK(j["config"]["caps"].contains("factor_budget"));

  Run miss = run({"tau", scratch("sq.json", kSquareMinusOne), "--max-len", "2"});
  REQUIRE(miss.code == 0);
  CHECK(miss.json()["result"]["found"] == false);
}

TEST_CASE("usage errors exit 2 and print the synopsis") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"scan", "--max-len", "0"},
        {},
        {"scan"},
        {"frobnicate"},
        {"scan", "--max-len", "3", "--format", "xml"},
        {"pd-probe", "--d", "31", "--max-len", "3"},
        {"tau", "/nonexistent/poly.json"},
        {"simulate", "builtin:membership:3", "--input", "1/0"},
        {"canonical", "builtin:membership:3", "full", "--format", "csv"}}) {
    Run r = run(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("domain errors exit 1") {
  Run over = run({"scan", "--max-len", "9"});
  CHECK(over.code == 1);
  CHECK(over.err.find("CAP_EXCEEDED") != std::string::npos);
  CHECK(run({"slp", "check", scratch("bad.slp", "arity 1\n%2 = mul %3 %1\n")}).code == 1);
  CHECK(run({"simulate", scratch("bad.json", "{\"name\": 1}")}).code == 1);
  CHECK(run({"simulate", "builtin:membership:0"}).code == 1);
  CHECK(run({"simulate", "builtin:membership:3", "--input", "1,2"}).code == 1);
}

TEST_CASE("scan csv carries the fixed columns and quoted witnesses") {
  Run r = run({"scan", "--max-len", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string preamble, header;
  std::getline(lines, preamble);
  std::getline(lines, header);
  CHECK(preamble.starts_with("# tauforge " TAUFORGE_VERSION " scan {"));
  CHECK(header ==
        "length,programs_visited,max_integer_roots,witness,skipped_expansion,"
        "skipped_factorization");
  CHECK(r.out.find("\n1,1,1,\"arity 1\n\",0,0\n") != std::string::npos);
}

TEST_CASE("reports are byte-identical across worker counts") {
  std::string set = scratch("set.json", machine_set());
  for (const char *format : {"json", "csv"}) {
    Run base = run({"scan", "--max-len", "4", "--format", format, "--workers", "1"});
    REQUIRE(base.code == 0);
    for (const char *w : {"2", "8"})
      CHECK(run({"scan", "--max-len", "4", "--format", format, "--workers", w}).out ==
            base.out);
  }
  Run base = run({"ultimate", set, "--workers", "1"});
  REQUIRE(base.code == 0);
  for (const char *w : {"2", "8"})
    CHECK(run({"ultimate", set, "--workers", w}).out == base.out);
  Json u = base.json()["result"]["u_bound"];
  REQUIRE(u.size() == 3);
  CHECK(u[0]["size"] == 2);
  CHECK(u[0]["u_bound"] >= 2);
  CHECK(u[2]["size"] == 5);
  CHECK(u[2]["u_bound"] >= 5);
}

TEST_CASE("TAUFORGE_SEED overrides the configured seed") {
  ::setenv("TAUFORGE_SEED", "12345", 1);
  Run r = run({"scan", "--max-len", "2", "--seed", "7"});
  ::setenv("TAUFORGE_SEED", "0x10", 1);
  Run hex = run({"scan", "--max-len", "2"});
  ::setenv("TAUFORGE_SEED", "twelve", 1);
  Run bad = run({"scan", "--max-len", "2"});
  ::unsetenv("TAUFORGE_SEED");
  Run plain = run({"scan", "--max-len", "2", "--seed", "7"});
  CHECK(r.json()["config"]["seed"] == 12345);
  CHECK(hex.json()["config"]["seed"] == 16);
  CHECK(bad.code == 2);
  CHECK(plain.json()["config"]["seed"] == 7);
}

TEST_CASE("canonical recovers p_m with the yes side in the zero set") {
  Run r = run({"canonical", "builtin:membership:5", "full"});
  REQUIRE(r.code == 0);
  Json res = r.json()["result"];
  CHECK(io::poly_from_json(res["f_expansion"]) == pd(5));
  CHECK(res["dichotomy"]["side"] == "YES_IN_ZERO_SET");
  CHECK(res["f_is_one"] == false);
  for (const Json &s : res["samples"]) {
    mpq_class x = io::parse_rational(s["point"][0].get<std::string>());
    bool root = x >= 1 && x <= 5;
    CHECK((s["f"] == "0") == root);
    CHECK((s["label"] == "yes") == root);
  }

  ComponentSpec point{"two", 1, 0, {parse_slp("arity 0\n%1 = add %0 %0")}, {{2}}, {}};
  std::string file = scratch("two.json", io::component_to_json(point).dump());
  Json p = run({"canonical", "builtin:membership:3", file}).json()["result"];
  // The whole component accepts: f = x - 1 is nonzero there and only the
  // empty no side is contained.
  CHECK(p["dichotomy"]["side"] == "VACUOUS");
  CHECK(p["f_expansion"]["terms"].size() == 2);
  CHECK(p["samples"][0]["f"] == "1");
}

TEST_CASE("simulate and reduce agree on example2") {
  Json sim = run({"simulate", "builtin:example2:3", "--input", "6", "--guess", "0,1,1"})
                 .json()["result"];
  CHECK(sim["accepted"] == true);
  CHECK(sim["status"] == "HALTED");

  Run red = run({"reduce", "builtin:example2:3", "--input", "6", "--time", "6", "--guess",
                 "0,1,1", "--solve", "0,1", "--emit-system"});
  REQUIRE(red.code == 0);
  Json res = red.json()["result"];
  CHECK(res["trace"]["accepts"] == true);
  CHECK(res["trace"]["verified"] == true);
  CHECK(res["solve"]["satisfiable"] == true);
  CHECK(res["solve"]["solution"]["g_1"] == "1");
  HnSystem sys = io::system_from_json(res["system"]);
  CHECK(sys.m() == res["equations"]);
  CHECK(encode_size(sys).total == res["size"]["total"]);

  Json bad = run({"reduce", "builtin:example2:3", "--input", "8", "--time", "6", "--guess",
                  "0,1,1", "--solve", "0,1"})
                 .json()["result"];
  CHECK(bad["trace"]["accepts"] == false);
  CHECK(bad["trace"]["witness"].is_null());
  CHECK(bad["solve"]["satisfiable"] == false);
}

TEST_CASE("slp fmt normalizes and builtin emits loadable machines") {
  std::string file = scratch("p.slp", "arity 1\n%2   =  mul %1 %1\n%3 = sub %2 %0");
  Run fmt = run({"slp", "fmt", file});
  REQUIRE(fmt.code == 0);
  CHECK(fmt.out == format_slp(parse_slp("arity 1\n%2 = mul %1 %1\n%3 = sub %2 %0")) + "\n");
  Json check = run({"slp", "check", file}).json()["result"];
  CHECK(check["length"] == 3);

  Run bi = run({"builtin", "membership", "--param", "4"});
  REQUIRE(bi.code == 0);
  CHECK(io::machine_from_json(bi.json()) == membership_machine(4).description());
  std::string machine = scratch("m4.json", bi.out);
  CHECK(run({"simulate", machine, "--input", "4"}).json()["result"]["accepted"] == true);
}

TEST_CASE("--output writes the same report to a file") {
  auto path = (std::filesystem::temp_directory_path() / "tauforge_cli_test" / "out.json").string();
  std::filesystem::remove(path);
  Run to_file = run({"scan", "--max-len", "2", "-o", path});
  Run to_stdout = run({"scan", "--max-len", "2"});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == to_stdout.out);
}
