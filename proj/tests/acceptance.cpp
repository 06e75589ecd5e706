// Acceptance suite: one line per criterion, exit 0 only if all pass.
#include "griffin/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

using namespace griffin;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void line(int idx, const char* name, bool ok, double worst, double tol, double secs) {
    std::printf("%s  %2d. %-28s worst_margin=% .3e  tol=%.1e  (%.1fs)\n",
                ok ? "PASS" : "FAIL", idx, name, worst, tol, secs);
    if (!ok) ++failures;
}

Hamiltonian yukawa_1d() {
    Grid g(1, 63, 10.0);
    return assemble(g, realize_potential(YukawaCutoff{1.0, 4}, g));
}

double worst_of(const std::vector<VerificationReport>& rs) {
    double w = 1e300;
    for (const auto& r : rs)
        if (!r.skipped) w = std::min(w, r.worst_margin);
    return w;
}

bool all_passed(const std::vector<VerificationReport>& rs) {
    for (const auto& r : rs)
        if (r.skipped || !r.passed) return false;
    return true;
}

void criterion_1_normalization_anchor() {
    Timer t;
    double worst = 1e300;
    const struct { int d, n; double len; } models[] = {{1, 63, 10.0}, {2, 15, 6.0}, {3, 9, 6.0}};
    for (const auto& m : models) {
        Grid g(m.d, m.n, m.len);
        Hamiltonian h = assemble(g, realize_potential(YukawaCutoff{1.0, 4}, g));
        VectorXd rho = momentum_distribution(ground_state(h));
        std::array<int, 3> zero{0, 0, 0};
        const double anchor = std::pow(2.0 * M_PI, -0.5 * m.d);
        worst = std::min(worst, 1e-10 - std::abs(rho[g.flatten(zero)] - anchor));
    }
    line(1, "normalization anchor", worst >= 0.0, worst, 1e-10, t.seconds());
}

void criterion_2_first_inequality() {
    Timer t;
    Hamiltonian h = yukawa_1d();
    VerifyOptions opt;
    opt.sample_size = 200;
    opt.seed = 1;
    opt.strict_margin = 1e-8;
    auto rs = verify_first_inequality(h, opt);
    line(2, "first inequality", all_passed(rs) && t.seconds() < 30.0, worst_of(rs), 1e-10,
         t.seconds());
}

void criterion_3_second_inequality() {
    Timer t;
    Hamiltonian h = yukawa_1d();
    VerifyOptions opt;
    opt.pair_count = 100;
    opt.seed = 2;
    auto rs = verify_second_inequality(h, opt);
    line(3, "second inequality", all_passed(rs) && t.seconds() < 60.0, worst_of(rs), 1e-10,
         t.seconds());
}

void criterion_4_monotone_in_n() {
    Timer t;
    Grid g(1, 63, 10.0);
    ModelFamily family = make_yukawa_family(g, 1.0, 2, 8);
    VectorXd hat(g.total());
    for (int k = 0; k < g.total(); ++k) hat[k] = std::exp(-g.momentum_sq(k));
    TestFunction f = make_test_function(FunctionClass::AEven, hat, g);
    VerifyOptions opt;
    opt.conv_tol = 1e-4;
    auto r = verify_monotone_in_n(family, f, opt);
    line(4, "monotonicity in n", r.passed && t.seconds() < 60.0, r.worst_margin, 1e-10,
         t.seconds());
}

void criterion_5_potential_order() {
    Timer t;
    Grid g(1, 63, 10.0);
    Potential w = realize_potential(YukawaCutoff{1.0, 4}, g);
    Hamiltonian weak = assemble(g, w);
    Hamiltonian strong =
        assemble(g, realize_potential(CustomFourier{VectorXd(2.0 * w.hat)}, g));
    VerifyOptions opt;
    opt.sample_size = 100;
    opt.seed = 3;
    auto rs = verify_potential_order(strong, weak, opt);
    line(5, "potential ordering", all_passed(rs), worst_of(rs), 1e-10, t.seconds());
}

void criterion_6_momentum_suite() {
    Timer t;
    Grid g(1, 63, 10.0);
    ModelFamily family = make_yukawa_family(g, 1.0, 2, 8);
    VerifyOptions opt;
    opt.strict_margin = 1e-8;
    auto rs = verify_momentum_theorems(family, opt);
    line(6, "momentum distribution suite", all_passed(rs), worst_of(rs), 1e-10, t.seconds());
}

void criterion_7_cone_theory() {
    Timer t;
    auto rs = verify_cone_theory({4, 8, 16}, 500, 7, 1e-10);
    bool ok = all_passed(rs) && t.seconds() < 60.0;
    // thm3.15 margins must be strictly positive (min entry > 0)
    for (const auto& r : rs)
        if (r.check_id == "thm3.15" && r.worst_margin <= 0.0) ok = false;
    line(7, "cone theory suite", ok, worst_of(rs), 1e-9, t.seconds());
}

void criterion_8_doubled_space() {
    Timer t;
    // L = 8 keeps the kinetic tail e^{-beta p_max^2 / 2} far below the
    // 1e-9 slack at the smallest beta tested
    Grid g(1, 63, 8.0);
    Hamiltonian coarse = assemble(g, realize_potential(YukawaCutoff{1.0, 3}, g));
    Hamiltonian fine = assemble(g, realize_potential(YukawaCutoff{1.0, 6}, g));

    std::vector<VerificationReport> rs;
    rs.push_back(check_potential_doubling(fine.potential(), DoublingSign::Plus));
    auto fs = sample_test_functions(FunctionClass::AEven, 3, 8, g);
    for (const auto& f : fs) {
        rs.push_back(check_potential_doubling(f, DoublingSign::Plus));
        rs.push_back(check_potential_doubling(f, DoublingSign::Minus));
        rs.push_back(check_momentum_doubling(f, DoublingSign::Plus));
        rs.push_back(check_momentum_doubling(f, DoublingSign::Minus));
    }
    auto ext = extended_semigroup_positivity(coarse, fine, {0.5, 1.0, 2.0});
    rs.push_back(ext.probes);
    rs.push_back(ext.ground_pair);
    rs.push_back(ext.ordering);
    line(8, "doubled-space suite", all_passed(rs) && t.seconds() < 120.0, worst_of(rs), 1e-9,
         t.seconds());
}

void criterion_9_oracle_equivalences() {
    Timer t;
    double worst = 1e300;

    // two-representation agreement for momentum expectations
    Hamiltonian h = yukawa_1d();
    GroundState gs = ground_state(h);
    Fourier fr(h.grid());
    auto fs = sample_test_functions(FunctionClass::A, 50, 4, h.grid());
    for (const auto& f : fs) {
        double em = expectation_momentum(gs, f);
        VectorXcd w = fr.idft(f.momentum_values().cwiseProduct(fr.dft(gs.psi.cast<Complex>())));
        double via_pos = (gs.psi.cast<Complex>().dot(w) * h.grid().weight_x()).real();
        worst = std::min(worst, 1e-10 - std::abs(em - via_pos));
    }

    // finite-beta agreement at beta = 40 on a well-gapped model
    {
        Grid g(1, 63, 10.0);
        Hamiltonian hg = assemble(g, realize_potential(GaussianWell{5.0, 1.0}, g));
        GroundState gg = ground_state(hg);
        auto fe = sample_test_functions(FunctionClass::AEven, 3, 5, g)[2];
        MatrixXd obs = MatrixXd(fe.values.real().asDiagonal());
        double err = std::abs(finite_beta_expectation(hg, obs, 40.0) -
                              expectation_position(gg, fe));
        worst = std::min(worst, 1e-8 - err);
    }

    // trotter step-doubling ratio
    {
        MatrixXd kinetic = h.kinetic_matrix();
        MatrixXd pot = MatrixXd(h.potential().values.asDiagonal());
        MatrixXd exact = semigroup(h, 0.5);
        double e8 = (trotter_product(kinetic, pot, 0.5, 8) - exact).cwiseAbs().maxCoeff();
        double e16 = (trotter_product(kinetic, pot, 0.5, 16) - exact).cwiseAbs().maxCoeff();
        double e32 = (trotter_product(kinetic, pot, 0.5, 32) - exact).cwiseAbs().maxCoeff();
        for (double ratio : {e8 / e16, e16 / e32})
            worst = std::min(worst, std::min(ratio - 1.5, 2.5 - ratio));
    }

    // duhamel commuting closed form within the quadrature tolerance
    {
        VectorXd ad = VectorXd::LinSpaced(6, 0.5, 2.0);
        VectorXd cd = VectorXd::LinSpaced(6, 0.1, 0.9);
        auto ex = duhamel_partial_sum(MatrixXd(ad.asDiagonal()), MatrixXd(cd.asDiagonal()),
                                      1.0, 4, 64);
        for (int n = 0; n <= 4; ++n) {
            MatrixXd closed = ((cd.array()).pow(n) / std::tgamma(n + 1.0) *
                               (-ad.array()).exp())
                                  .matrix()
                                  .asDiagonal();
            double tol = std::max(4.0 * ex.quadrature_error, 1e-12);
            worst = std::min(worst,
                             tol - (ex.terms[n] - closed).cwiseAbs().maxCoeff());
        }
    }
    line(9, "oracle equivalences", worst >= 0.0, worst, 0.0, t.seconds());
}

void criterion_10_negative_controls() {
    Timer t;
    bool ok = true;

    // sign-indefinite Fourier data must be rejected
    Grid g(1, 31, 5.0);
    VectorXd bad = VectorXd::Ones(g.total());
    bad[2] = -1.0;
    try {
        realize_potential(CustomFourier{bad}, g);
        ok = false;
    } catch (const std::invalid_argument&) {}

    // non-even f must be flagged, never asserted, for even-class checks
    VectorXd asym = VectorXd::Ones(g.total());
    asym[0] += 1.0;
    TestFunction fa = make_test_function(FunctionClass::A, asym, g);
    if (!check_potential_doubling(fa, DoublingSign::Minus).skipped) ok = false;
    if (!check_momentum_doubling(fa, DoublingSign::Plus).skipped) ok = false;

    // reducible support graphs must be detected as non-ergodic
    MatrixXd blocks = MatrixXd::Zero(8, 8);
    blocks.topLeftCorner(4, 4).setOnes();
    blocks.bottomRightCorner(4, 4).setOnes();
    if (is_ergodic(ConeMap(blocks.cast<Complex>(), ConeDescriptor::orthant(8)))) ok = false;

    // the flat-potential control violates (B) and its psi_hat strictness fails
    std::array<int, 3> zero{0, 0, 0};
    VectorXd hat = VectorXd::Zero(g.total());
    hat[g.flatten(zero)] = std::sqrt(2.0 * M_PI) / g.weight_p();
    GroundState flat =
        ground_state(assemble(g, realize_potential_unchecked(CustomFourier{hat}, g)));
    if (flat.positive()) ok = false;

    line(10, "negative controls", ok, ok ? 1.0 : -1.0, 0.0, t.seconds());
}

} // namespace

int main() {
    criterion_1_normalization_anchor();
    criterion_2_first_inequality();
    criterion_3_second_inequality();
    criterion_4_monotone_in_n();
    criterion_5_potential_order();
    criterion_6_momentum_suite();
    criterion_7_cone_theory();
    criterion_8_doubled_space();
    criterion_9_oracle_equivalences();
    criterion_10_negative_controls();
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
