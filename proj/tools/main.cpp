#include "griffin/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

using namespace griffin;

void print_reports(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports) {
        if (r.skipped) {
            std::cout << "SKIP " << r.check_id;
            if (!r.notes.empty()) std::cout << "  (" << r.notes.front() << ")";
            std::cout << '\n';
            continue;
        }
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.check_id << "  instances="
                  << r.instances << "  worst_margin=" << r.worst_margin
                  << "  tol=" << r.tolerance << '\n';
    }
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void apply_overrides(ExperimentConfig& cfg, double tol, const std::string& csv,
                     const std::string& js) {
    if (tol > 0.0) cfg.options.tol = tol;
    if (!csv.empty()) cfg.csv_path = csv;
    if (!js.empty()) cfg.json_path = js;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground-state correlation inequality verifier"};
    app.require_subcommand(1);

    std::string config_path, param, values_csv, out_csv, out_json;
    double tol = 0.0;
    int cone_size = 8;
    std::uint64_t seed = 1;

    auto* verify = app.add_subcommand("verify", "run the checks named in a config");
    verify->add_option("--config", config_path, "experiment config (JSON)")->required();
    verify->add_option("--tol", tol, "override the base tolerance");
    verify->add_option("--out-csv", out_csv, "write per-instance margins as CSV");
    verify->add_option("--out-json", out_json, "write a JSON summary");

    auto* sweep = app.add_subcommand("sweep", "re-run checks across a parameter range");
    sweep->add_option("--config", config_path, "experiment config (JSON)")->required();
    sweep->add_option("--param", param, "one of n, lambda, N, beta")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();
    sweep->add_option("--tol", tol, "override the base tolerance");
    sweep->add_option("--out-csv", out_csv, "write per-instance margins as CSV");
    sweep->add_option("--out-json", out_json, "write a JSON summary");

    auto* cone = app.add_subcommand("cone", "random-instance cone theory suite");
    cone->add_option("--size", cone_size, "matrix size (<= 32)");
    cone->add_option("--seed", seed, "RNG seed");
    cone->add_option("--tol", tol, "override the base tolerance");
    cone->add_option("--out-csv", out_csv, "write per-instance margins as CSV");
    cone->add_option("--out-json", out_json, "write a JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<VerificationReport> reports;
        ExperimentConfig cfg;
        if (verify->parsed()) {
            cfg = load_config(config_path);
            apply_overrides(cfg, tol, out_csv, out_json);
            reports = run_checks(cfg);
        } else if (sweep->parsed()) {
            cfg = load_config(config_path);
            apply_overrides(cfg, tol, out_csv, out_json);
            reports = run_sweep(cfg, param, parse_values(values_csv));
        } else {
            cfg.checks = {"cone.axioms", "thm3.10", "thm3.11", "thm3.13", "thm3.15"};
            cfg.csv_path = out_csv;
            cfg.json_path = out_json;
            reports = verify_cone_theory({cone_size}, 500, seed,
                                         tol > 0.0 ? tol : 1e-10);
            for (auto& r : reports)
                r.config_digest = digest_string("cone size=" + std::to_string(cone_size) +
                                                " seed=" + std::to_string(seed));
        }
        print_reports(reports);
        write_outputs(cfg, reports);
        return exit_code_for(reports);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
