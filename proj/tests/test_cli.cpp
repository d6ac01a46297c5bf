/*
   Copyright 2026 The scrollkit authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "scrollkit/suites.hpp"

using namespace scrollkit;

namespace {

std::string binary() {
    const char* b = std::getenv("SCROLLKIT_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args) {
    std::string cmd = binary() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_config(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

const char* kQuickConfig = R"({
  "p": 11,
  "curve": {"kind": "hyperelliptic", "f": [0, -1, 0, 0, 0, 1]},
  "suites": ["rr", "equiv", "fixed-spaces"],
  "seed": 42,
  "trials": 12
})";

}  // namespace

TEST_CASE("run exits 0 and emits both report files") {
    write_config("/tmp/sk_quick.json", kQuickConfig);
    int rc = run("run --config /tmp/sk_quick.json --out /tmp/sk_out1");
    CHECK(rc == 0);
    std::string rep = slurp("/tmp/sk_out1/report.json");
    CHECK(rep.find("\"verdict\": \"fail\"") == std::string::npos);
    CHECK(rep.find("toolkit_version") != std::string::npos);
    std::string csv = slurp("/tmp/sk_out1/summary.csv");
    CHECK(csv.rfind("suite,check,expected,observed,verdict", 0) == 0);
}

TEST_CASE("identical config and seed give byte-identical reports") {
    write_config("/tmp/sk_det.json", kQuickConfig);
    REQUIRE(run("run --config /tmp/sk_det.json --out /tmp/sk_det_a") == 0);
    REQUIRE(run("run --config /tmp/sk_det.json --out /tmp/sk_det_b") == 0);
    CHECK(slurp("/tmp/sk_det_a/report.json") == slurp("/tmp/sk_det_b/report.json"));
    CHECK(slurp("/tmp/sk_det_a/summary.csv") == slurp("/tmp/sk_det_b/summary.csv"));
}

TEST_CASE("schema violations exit with code 2") {
    write_config("/tmp/sk_bad1.json", R"({"p": 12, "seed": 1})");
    CHECK(run("run --config /tmp/sk_bad1.json --out /tmp/sk_bad_out") == 2);
    write_config("/tmp/sk_bad2.json", R"({"p": 11})");
    CHECK(run("run --config /tmp/sk_bad2.json --out /tmp/sk_bad_out") == 2);  // missing seed
    write_config("/tmp/sk_bad3.json", R"({"p": 11, "seed": 1, "suites": ["nope"]})");
    CHECK(run("run --config /tmp/sk_bad3.json --out /tmp/sk_bad_out") == 2);
    write_config("/tmp/sk_bad4.json", R"(not json)");
    CHECK(run("run --config /tmp/sk_bad4.json --out /tmp/sk_bad_out") == 2);
    CHECK(run("run --config /tmp/sk_missing.json") == 2);
}

TEST_CASE("config validation rejects off-curve divisor points") {
    write_config("/tmp/sk_bad5.json", R"({
      "p": 11,
      "curve": {"kind": "hyperelliptic", "f": [0, -1, 0, 0, 0, 1]},
      "suites": ["canonical"],
      "seed": 3,
      "b_divisor": {"points": [[5, 1, 1]], "inf": 3}
    })");
    // f(5) = 5^5 - 5 = 3120 = 7 mod 11, and 1^2 != 7
    CHECK(run("run --config /tmp/sk_bad5.json --out /tmp/sk_bad_out") == 2);
}

TEST_CASE("suite listing works") {
    CHECK(run("suites") == 0);
}

TEST_CASE("config round trip through RunConfig") {
    nlohmann::json j = nlohmann::json::parse(kQuickConfig);
    RunConfig cfg = RunConfig::from_json(j);
    CHECK(cfg.p == 11);
    CHECK(cfg.suites.size() == 3);
    CHECK(cfg.seed == 42);
    auto X = cfg.build_curve();
    CHECK(X->genus() == 2);
}
