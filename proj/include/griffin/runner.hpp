#pragma once

#include "griffin/verify.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>

namespace griffin {

/// Experiment description, the JSON schema of the command line driver.
struct ExperimentConfig {
    int schema_version = 1;
    Grid grid{1, 63, 10.0};
    PotentialKind potential = YukawaCutoff{1.0, 4};
    std::optional<std::pair<int, int>> family; // n_lo, n_hi
    std::vector<std::string> checks;
    std::uint64_t seed = 1;
    VerifyOptions options;
    std::vector<double> semigroup_betas{0.5, 1.0, 2.0}; // set by beta sweeps
    std::string csv_path;
    std::string json_path;

    std::string canonical() const; // deterministic digest input
};

/// Thrown for malformed configs; the driver maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

const std::vector<std::string>& known_check_ids();

nlohmann::json potential_to_json(const Potential& p);
Potential potential_from_json(const nlohmann::json& j);
nlohmann::json test_function_to_json(const TestFunction& f);
TestFunction test_function_from_json(const nlohmann::json& j);

/// Run every requested check; reports carry the config digest.
std::vector<VerificationReport> run_checks(const ExperimentConfig& cfg);

/// Run the configured checks at each value of a swept parameter
/// (one of "n", "lambda", "N", "beta"); rows are tagged with the
/// parameter and value, and for "n"/"lambda" cross-value monotonicity of
/// the momentum distribution and of a reference expectation is appended.
std::vector<VerificationReport> run_sweep(const ExperimentConfig& cfg,
                                          const std::string& parameter,
                                          const std::vector<double>& values);

/// 0 when every non-skipped check passed, 1 when a theorem check recorded
/// a genuine violation.
int exit_code_for(const std::vector<VerificationReport>& reports);

/// Write the CSV/JSON outputs named by the config (if any).
void write_outputs(const ExperimentConfig& cfg,
                   const std::vector<VerificationReport>& reports);

} // namespace griffin
