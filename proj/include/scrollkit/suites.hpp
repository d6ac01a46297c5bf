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

#ifndef SCROLLKIT_SUITES_HPP
#define SCROLLKIT_SUITES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scrollkit/curve.hpp"

namespace scrollkit {

/// Raised on malformed configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisorSpec {
    std::vector<std::array<std::int64_t, 3>> points;  // x, y, multiplicity
    int inf = 0;                                      // multiplicity at infinity
};

struct RunConfig {
    std::uint64_t p = 11;
    std::string curve_kind = "hyperelliptic";
    std::vector<std::int64_t> f_coeffs{0, -1, 0, 0, 0, 1};
    std::vector<std::vector<std::int64_t>> q_rows;  // plane models: rows by y-power
    std::vector<std::string> suites;                // empty means all
    std::uint64_t seed = 1;
    int trials = 0;  // 0 uses per-suite defaults
    int k_max = 4;
    std::string out_dir;
    std::optional<DivisorSpec> b_divisor;

    static RunConfig from_json(const nlohmann::json& j);
    CurvePtr build_curve() const;
    Divisor build_divisor(const CurvePtr& X, const DivisorSpec& spec) const;
};

struct CheckRecord {
    std::string suite;
    std::string check;
    std::string anchor;    // id of the verified rule in the result catalog
    std::string expected;
    std::string observed;
    std::string verdict;   // pass / fail / indeterminate-over-F_p
};

struct Report {
    std::vector<CheckRecord> records;
    int pass = 0;
    int fail = 0;
    int indeterminate = 0;

    void add(CheckRecord rec);
    nlohmann::ordered_json to_json(const RunConfig& cfg) const;
    std::string to_csv() const;
};

const std::vector<std::string>& all_suite_names();

/// Execute the selected suites. Internal consistency violations escape as
/// InternalError (CLI exit code 3); bad configuration as ConfigError (2).
Report run_suites(const RunConfig& cfg);

extern const char* kToolkitVersion;

}  // namespace scrollkit

#endif
