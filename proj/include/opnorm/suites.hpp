#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace opnorm {

// Raised for malformed configs and unknown suite/constructor names; the
// message carries the position ("suites[2]: ...") so callers can print it
// verbatim and exit with the invalid-input code.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One suite invocation. Leaving `constructor` empty picks the suite's
// default model; `samples` 0 picks the suite's default count; `tol` 0 the
// suite's default tolerance. `params` are constructor parameters, checked
// against the constructor's accepted keys.
struct SuiteSpec {
    std::string name;
    std::string constructor;
    nlohmann::json params = nlohmann::json::object();
    std::size_t samples = 0;
    std::size_t f_samples = 0;   // C(K) suites: function samples per pair
    double tol = 0.0;
};

struct SuiteConfig {
    std::uint64_t master_seed = 42;
    std::string format = "json";   // "json" | "text"
    std::string output_path;       // empty: stdout only
    std::vector<SuiteSpec> suites;

    // Both throw ConfigError with position information on malformed input,
    // unknown fields, unknown suite or constructor names, non-positive
    // tolerances, or zero counts.
    static SuiteConfig from_json(const nlohmann::json& j);
    static SuiteConfig from_file(const std::string& path);

    nlohmann::json echo() const;   // parsed config, with defaults left implicit
};

struct SuiteResult {
    std::string name;
    std::string constructor_label;   // resolved constructor with parameters
    std::string claim;               // the property this suite verifies
    bool passed = true;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    std::vector<std::string> witnesses;
    double wall_ms = 0.0;            // excluded from determinism comparisons
    nlohmann::json details = nlohmann::json::object();
};

struct RunReport {
    int schema = 1;
    std::string version;
    bool passed = true;
    nlohmann::json config_echo;
    std::vector<SuiteResult> suites;
    std::vector<std::string> notes;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

// Executes every suite in config order. Per-suite randomness derives from
// the master seed at a fixed per-suite offset, so results depend only on
// (config, master seed), never on execution order.
RunReport run_suites(const SuiteConfig& config);

const std::vector<std::string>& known_suites();
const std::vector<std::string>& known_constructors();

// Human-readable description of a suite or constructor: parameters,
// defaults, and the property verified. Throws ConfigError on unknown names.
std::string describe(const std::string& name);

}  // namespace opnorm
