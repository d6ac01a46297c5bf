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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "scrollkit/suites.hpp"

namespace fs = std::filesystem;
using namespace scrollkit;

namespace {

int run_command(const std::string& config_path, const std::vector<std::string>& suites,
                const std::string& out_dir, std::optional<std::uint64_t> seed,
                std::optional<std::uint64_t> p) {
    nlohmann::json raw;
    {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot open config file: " + config_path);
        try {
            in >> raw;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    RunConfig cfg = RunConfig::from_json(raw);
    if (!suites.empty()) {
        for (const std::string& s : suites) {
            const auto& names = all_suite_names();
            if (std::find(names.begin(), names.end(), s) == names.end())
                throw ConfigError("unknown suite: " + s);
        }
        cfg.suites = suites;
    }
    if (seed) cfg.seed = *seed;
    if (p) {
        cfg.p = *p;
        if (cfg.p < 3 || cfg.p % 2 == 0 || !is_prime_u64(cfg.p))
            throw ConfigError("p must be an odd prime >= 3");
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = ".";

    Report rep = run_suites(cfg);

    fs::create_directories(cfg.out_dir);
    {
        std::ofstream out(fs::path(cfg.out_dir) / "report.json");
        out << rep.to_json(cfg).dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(cfg.out_dir) / "summary.csv");
        out << rep.to_csv();
    }
    std::cout << "scrollkit " << kToolkitVersion << ": " << rep.pass << " pass, " << rep.fail
              << " fail, " << rep.indeterminate << " indeterminate\n";
    for (const CheckRecord& r : rep.records)
        if (r.verdict == "fail")
            std::cout << "  FAIL " << r.suite << "/" << r.check << ": expected " << r.expected
                      << ", observed " << r.observed << "\n";
    return rep.fail == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scrollkit: exact verification campaigns for curves, Jacobians and scrolls over F_p"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute verification suites from a JSON config");
    std::string config_path;
    std::vector<std::string> suites;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> p;
    run->add_option("--config", config_path, "path to the JSON configuration")->required();
    run->add_option("--suite", suites, "suite selection (repeatable; default: all)");
    run->add_option("--out", out_dir, "output directory for report.json and summary.csv");
    run->add_option("--seed", seed, "override the seed");
    run->add_option("--p", p, "override the field modulus");

    auto* list = app.add_subcommand("suites", "list available suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const std::string& s : all_suite_names()) std::cout << s << "\n";
            return 0;
        }
        return run_command(config_path, suites, out_dir, seed, p);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
