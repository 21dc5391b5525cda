#pragma once

// Scenario runner: each scenario reads one JSON config, writes CSV/JSON
// tables into an output directory and returns verdicts against the
// expectations declared in that config.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypdyn/entropy.hpp"
#include "hypdyn/maps.hpp"

namespace hypdyn::lab {

using json = nlohmann::json;

struct ScenarioInfo {
    std::string name;
    std::string claim;  // the statement the scenario checks
};

/// Stable order.
const std::vector<ScenarioInfo>& catalog();

struct RunOptions {
    std::string out_dir;
    std::optional<std::uint64_t> seed;  // overrides the config
    int threads = 1;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunResult {
    std::string scenario;
    json config;        // as run, seed override applied
    json expectations;  // copied from the config
    json summary;       // fits and measured values
    std::vector<std::string> files;
    std::vector<Verdict> verdicts;
    bool passed() const;
};

/// Throws ConfigError for schema violations or unknown scenarios and
/// InvariantViolation when a runtime invariant breaks.
RunResult run(const std::string& scenario, const json& config, const RunOptions& opts);

json default_config(const std::string& scenario);

/// Exit status for a finished run: 0 all verdicts pass, 1 otherwise.
int exit_code(const RunResult& r);

/// Fast invariant checks over every module; returns the number of failures.
int selftest(std::ostream& out);

// Config helpers, exposed for tests.
StarHomeo homeo_from_json(const json& j, const std::string& pointer);
EdgeMap edge_map_from_json(const json& j, const std::string& pointer);

// Output helpers.
std::string format_double(double x);
json fit_to_json(const GrowthFit& fit);
json estimate_to_json(const EntropyEstimate& est);

}  // namespace hypdyn::lab
