#include "griffin/runner.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace griffin {

namespace {

using nlohmann::json;

Grid grid_from_json(const json& j) {
    const int d = j.at("d").get<int>();
    const int n = j.at("N").get<int>();
    const double len = j.at("L").get<double>();
    if (n % 2 == 0) throw ConfigError("coordinate change requires odd N");
    try {
        return Grid(d, n, len);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

PotentialKind kind_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const json params = j.value("params", json::object());
    if (kind == "yukawa_cutoff")
        return YukawaCutoff{params.at("mass").get<double>(), params.at("cutoff").get<int>()};
    if (kind == "gaussian_well")
        return GaussianWell{params.at("depth").get<double>(), params.at("width").get<double>()};
    if (kind == "custom_fourier") {
        auto vals = j.at("hat_values").get<std::vector<double>>();
        return CustomFourier{Eigen::Map<VectorXd>(vals.data(), (long)vals.size())};
    }
    throw ConfigError("unknown potential kind: " + kind);
}

json kind_to_json(const PotentialKind& kind) {
    json j;
    if (const auto* y = std::get_if<YukawaCutoff>(&kind)) {
        j["kind"] = "yukawa_cutoff";
        j["params"] = {{"mass", y->mass}, {"cutoff", y->cutoff}};
    } else if (const auto* g = std::get_if<GaussianWell>(&kind)) {
        j["kind"] = "gaussian_well";
        j["params"] = {{"depth", g->depth}, {"width", g->width}};
    } else {
        j["kind"] = "custom_fourier";
        j["params"] = json::object();
    }
    return j;
}

TestFunction reference_even_function(const Grid& g) {
    VectorXd hat(g.total());
    for (int k = 0; k < g.total(); ++k) hat[k] = std::exp(-g.momentum_sq(k));
    return make_test_function(FunctionClass::AEven, hat, g);
}

} // namespace

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << "v" << schema_version << " d=" << grid.dim << " N=" << grid.n
       << " L=" << grid.half_len << " pot=";
    if (const auto* y = std::get_if<YukawaCutoff>(&potential))
        os << "yukawa(" << y->mass << "," << y->cutoff << ")";
    else if (const auto* g = std::get_if<GaussianWell>(&potential))
        os << "gauss(" << g->depth << "," << g->width << ")";
    else
        os << "custom";
    if (family) os << " family=" << family->first << ".." << family->second;
    os << " seed=" << seed << " checks=";
    for (const auto& c : checks) os << c << ";";
    return os.str();
}

const std::vector<std::string>& known_check_ids() {
    static const std::vector<std::string> ids{
        "prop2.7",  "thm2.8",  "thm2.9",  "thm2.10",  "thm2.12", "thm2.14",
        "thm2.15",  "thm2.16", "cone.axioms", "thm3.10", "thm3.11", "thm3.13",
        "thm3.15",  "lemma5.1", "lemma5.3", "thm6.2",  "cor6.3",  "prop6.1"};
    return ids;
}

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig cfg;
    try {
        cfg.schema_version = j.value("schema_version", 1);
        if (cfg.schema_version != 1) throw ConfigError("unsupported schema_version");
        cfg.grid = grid_from_json(j.at("grid"));
        if (j.contains("potential")) cfg.potential = kind_from_json(j.at("potential"));
        if (j.contains("family")) {
            const int lo = j["family"].at("n_lo").get<int>();
            const int hi = j["family"].at("n_hi").get<int>();
            if (lo < 1 || lo > hi) throw ConfigError("family requires 1 <= n_lo <= n_hi");
            cfg.family = {lo, hi};
        }
        cfg.checks = j.at("checks").get<std::vector<std::string>>();
        if (cfg.checks.empty()) throw ConfigError("no checks requested");
        const auto& known = known_check_ids();
        for (const auto& c : cfg.checks)
            if (std::find(known.begin(), known.end(), c) == known.end() && c != "all")
                throw ConfigError("unknown check id: " + c);
        cfg.seed = j.value("seed", 1ULL);
        if (j.contains("tolerances")) {
            const auto& t = j["tolerances"];
            cfg.options.tol = t.value("tol", cfg.options.tol);
            cfg.options.strict_margin = t.value("strict_margin", cfg.options.strict_margin);
            cfg.options.conv_tol = t.value("conv_tol", cfg.options.conv_tol);
            cfg.options.sample_size = t.value("sample_size", cfg.options.sample_size);
            cfg.options.pair_count = t.value("pair_count", cfg.options.pair_count);
        }
        if (j.contains("output")) {
            cfg.csv_path = j["output"].value("csv_path", "");
            cfg.json_path = j["output"].value("json_path", "");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    cfg.options.seed = cfg.seed;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

json potential_to_json(const Potential& p) {
    json j = kind_to_json(p.kind);
    j["grid"] = {{"d", p.grid.dim}, {"N", p.grid.n}, {"L", p.grid.half_len}};
    if (std::holds_alternative<CustomFourier>(p.kind))
        j["hat_values"] = std::vector<double>(p.hat.data(), p.hat.data() + p.hat.size());
    return j;
}

Potential potential_from_json(const json& j) {
    Grid g = grid_from_json(j.at("grid"));
    return realize_potential(kind_from_json(j), g);
}

json test_function_to_json(const TestFunction& f) {
    json j;
    j["kind"] = "test_function";
    j["class"] = f.cls == FunctionClass::A ? "A" : "A_even";
    j["grid"] = {{"d", f.grid.dim}, {"N", f.grid.n}, {"L", f.grid.half_len}};
    j["hat_values"] = std::vector<double>(f.hat.data(), f.hat.data() + f.hat.size());
    return j;
}

TestFunction test_function_from_json(const json& j) {
    Grid g = grid_from_json(j.at("grid"));
    auto vals = j.at("hat_values").get<std::vector<double>>();
    const std::string cls = j.at("class").get<std::string>();
    if (cls != "A" && cls != "A_even") throw ConfigError("unknown test function class");
    return make_test_function(cls == "A" ? FunctionClass::A : FunctionClass::AEven,
                              Eigen::Map<VectorXd>(vals.data(), (long)vals.size()), g);
}

namespace {

bool wants(const std::vector<std::string>& checks, const std::string& id) {
    for (const auto& c : checks)
        if (c == "all" || id.rfind(c, 0) == 0) return true;
    return false;
}

VectorXd scaled_hat(const VectorXd& hat, double s) { return s * hat; }

} // namespace

std::vector<VerificationReport> run_checks(const ExperimentConfig& cfg) {
    const std::string digest = digest_string(cfg.canonical());
    std::vector<VerificationReport> reports;
    auto add = [&](VerificationReport r) {
        if (r.config_digest.empty()) r.config_digest = digest;
        reports.push_back(std::move(r));
    };
    auto add_all = [&](std::vector<VerificationReport> rs) {
        for (auto& r : rs) add(std::move(r));
    };

    Potential pot = realize_potential(cfg.potential, cfg.grid);
    Hamiltonian model = assemble(cfg.grid, pot);

    if (wants(cfg.checks, "prop2.7")) add(verify_ground_positivity(model, cfg.options));
    if (wants(cfg.checks, "thm2.8")) add_all(verify_first_inequality(model, cfg.options));
    if (wants(cfg.checks, "thm2.10")) add_all(verify_second_inequality(model, cfg.options));

    const bool need_family = wants(cfg.checks, "thm2.9") || wants(cfg.checks, "thm2.15") ||
                             wants(cfg.checks, "thm2.14");
    if (need_family) {
        ModelFamily family = [&] {
            if (cfg.family) {
                const auto* y = std::get_if<YukawaCutoff>(&cfg.potential);
                const double mass = y ? y->mass : 1.0;
                return make_yukawa_family(cfg.grid, mass, cfg.family->first,
                                          cfg.family->second);
            }
            // single-member pseudo-family: the 2.14 checks run, the
            // in-family monotonicity ones need a real family
            ModelFamily f{cfg.grid, 1.0, 0, 0, {model}, model};
            return f;
        }();
        if (wants(cfg.checks, "thm2.9")) {
            if (family.members.size() < 3)
                throw ConfigError("thm2.9 requires a family block with at least 3 cutoffs");
            add(verify_monotone_in_n(family, reference_even_function(cfg.grid), cfg.options));
        }
        if (wants(cfg.checks, "thm2.15") && family.members.size() < 2)
            throw ConfigError("thm2.15 requires a family block");
        auto rs = verify_momentum_theorems(family, cfg.options);
        for (auto& r : rs) {
            const bool is_214 = r.check_id.rfind("thm2.14", 0) == 0;
            const bool is_215 = r.check_id == "thm2.15";
            if ((is_214 && wants(cfg.checks, "thm2.14")) ||
                (is_215 && wants(cfg.checks, "thm2.15") && family.members.size() >= 2))
                add(std::move(r));
        }
    }

    if (wants(cfg.checks, "thm2.12") || wants(cfg.checks, "thm2.16")) {
        Hamiltonian strong =
            assemble(cfg.grid, realize_potential(CustomFourier{scaled_hat(pot.hat, 2.0)},
                                                 cfg.grid));
        auto rs = verify_potential_order(strong, model, cfg.options);
        for (auto& r : rs) {
            const bool is_216 = r.check_id == "thm2.16";
            if ((is_216 && wants(cfg.checks, "thm2.16")) ||
                (!is_216 && wants(cfg.checks, "thm2.12")))
                add(std::move(r));
        }
    }

    if (wants(cfg.checks, "cone.axioms") || wants(cfg.checks, "thm3.10") ||
        wants(cfg.checks, "thm3.11") || wants(cfg.checks, "thm3.13") ||
        wants(cfg.checks, "thm3.15")) {
        auto rs = verify_cone_theory({4, 8, 16}, 100, cfg.seed, cfg.options.tol);
        for (auto& r : rs)
            if (wants(cfg.checks, r.check_id)) add(std::move(r));
    }

    auto tag = [](VerificationReport r, const std::string& suffix) {
        r.check_id += suffix;
        return r;
    };
    if (wants(cfg.checks, "lemma5.1")) {
        add(tag(check_potential_doubling(pot, DoublingSign::Plus), ".V.plus"));
        auto fs = sample_test_functions(FunctionClass::AEven, 4, cfg.seed, cfg.grid);
        for (size_t i = 0; i < fs.size(); ++i) {
            const std::string stem = ".f" + std::to_string(i);
            add(tag(check_potential_doubling(fs[i], DoublingSign::Plus), stem + ".plus"));
            add(tag(check_potential_doubling(fs[i], DoublingSign::Minus), stem + ".minus"));
        }
    }
    if (wants(cfg.checks, "lemma5.3")) {
        auto fs = sample_test_functions(FunctionClass::AEven, 3, cfg.seed, cfg.grid);
        for (size_t i = 0; i < fs.size(); ++i) {
            const std::string stem = ".f" + std::to_string(i);
            add(tag(check_momentum_doubling(fs[i], DoublingSign::Plus), stem + ".plus"));
            add(tag(check_momentum_doubling(fs[i], DoublingSign::Minus), stem + ".minus"));
        }
    }
    if ((wants(cfg.checks, "thm6.2") || wants(cfg.checks, "prop6.1")) && cfg.grid.dim != 1) {
        // the probe floors scale like e^{-beta p_max^2 / 2}; affordable
        // 2-d/3-d windows cannot push them below tolerance
        if (wants(cfg.checks, "thm6.2"))
            add(make_skipped("thm6.2", "doubled semigroup probes run at d = 1 only"));
        if (wants(cfg.checks, "prop6.1"))
            add(make_skipped("prop6.1", "doubled semigroup probes run at d = 1 only"));
    }
    if ((wants(cfg.checks, "thm6.2") && cfg.grid.dim == 1) ||
        wants(cfg.checks, "cor6.3") ||
        (wants(cfg.checks, "prop6.1") && cfg.grid.dim == 1)) {
        Hamiltonian coarse = [&] {
            if (const auto* y = std::get_if<YukawaCutoff>(&cfg.potential);
                y && y->cutoff > 1) {
                return assemble(cfg.grid, realize_potential(
                                              YukawaCutoff{y->mass,
                                                           std::max(1, y->cutoff / 2)},
                                              cfg.grid));
            }
            return assemble(cfg.grid,
                            realize_potential(CustomFourier{scaled_hat(pot.hat, 0.5)},
                                              cfg.grid));
        }();
        auto res = extended_semigroup_positivity(coarse, model, cfg.semigroup_betas);
        if (wants(cfg.checks, "thm6.2") && cfg.grid.dim == 1) add(std::move(res.probes));
        if (wants(cfg.checks, "cor6.3")) add(std::move(res.ground_pair));
        if (wants(cfg.checks, "prop6.1") && cfg.grid.dim == 1) add(std::move(res.ordering));
    }

    if (reports.empty()) throw ConfigError("requested checks produced no reports");
    return reports;
}

std::vector<VerificationReport> run_sweep(const ExperimentConfig& cfg,
                                          const std::string& parameter,
                                          const std::vector<double>& values) {
    static const std::set<std::string> allowed{"n", "lambda", "N", "beta"};
    if (!allowed.count(parameter))
        throw ConfigError("sweep parameter must be one of n, lambda, N, beta");
    if (values.empty()) throw ConfigError("sweep requires at least one value");

    std::vector<VerificationReport> all;
    std::vector<VectorXd> rho_by_value;
    std::vector<double> expect_by_value;

    for (double value : values) {
        ExperimentConfig local = cfg;
        if (parameter == "n") {
            auto* y = std::get_if<YukawaCutoff>(&local.potential);
            if (!y) throw ConfigError("sweep over n requires a yukawa_cutoff potential");
            y->cutoff = (int)std::llround(value);
        } else if (parameter == "N") {
            const int n = (int)std::llround(value);
            if (n % 2 == 0) throw ConfigError("coordinate change requires odd N");
            local.grid = Grid(local.grid.dim, n, local.grid.half_len);
        } else if (parameter == "beta") {
            if (value < 0.0) throw ConfigError("beta must be >= 0");
            local.semigroup_betas = {value};
        }
        Potential base = realize_potential(local.potential, local.grid);
        if (parameter == "lambda") {
            if (!(value > 0.0)) throw ConfigError("lambda must be > 0");
            base = realize_potential(CustomFourier{VectorXd(value * base.hat)}, local.grid);
            local.potential = base.kind;
        }
        auto reports = run_checks(local);
        for (auto& r : reports) {
            for (auto& inst : r.detail) {
                inst.parameter = parameter;
                inst.value = value;
                inst.has_value = true;
            }
            all.push_back(std::move(r));
        }
        if (parameter == "n" || parameter == "lambda") {
            Hamiltonian h = assemble(local.grid, base);
            GroundState gs = ground_state(h);
            rho_by_value.push_back(momentum_distribution(gs));
            expect_by_value.push_back(
                expectation_position(gs, reference_even_function(local.grid)));
        }
    }

    if (rho_by_value.size() >= 2) {
        std::vector<double> rho_margins, exp_margins;
        for (size_t i = 1; i < rho_by_value.size(); ++i) {
            VectorXd d = rho_by_value[i] - rho_by_value[i - 1];
            for (int k = 0; k < d.size(); ++k) rho_margins.push_back(d[k]);
            exp_margins.push_back(expect_by_value[i] - expect_by_value[i - 1]);
        }
        all.push_back(make_report("sweep.rho_monotone", cfg.options.tol,
                                  std::move(rho_margins),
                                  {"nodewise monotonicity of rho^ across swept values"}));
        all.push_back(make_report("sweep.expectation_monotone", cfg.options.tol,
                                  std::move(exp_margins),
                                  {"monotonicity of a reference <f> across swept values"}));
    }
    return all;
}

int exit_code_for(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.skipped && !r.passed) return 1;
    return 0;
}

void write_outputs(const ExperimentConfig& cfg,
                   const std::vector<VerificationReport>& reports) {
    if (!cfg.csv_path.empty()) {
        std::ofstream os(cfg.csv_path);
        if (!os) throw ConfigError("cannot write csv: " + cfg.csv_path);
        write_csv(os, reports);
    }
    if (!cfg.json_path.empty()) {
        std::ofstream os(cfg.json_path);
        if (!os) throw ConfigError("cannot write json: " + cfg.json_path);
        write_json_summary(os, reports, digest_string(cfg.canonical()));
    }
}

} // namespace griffin
