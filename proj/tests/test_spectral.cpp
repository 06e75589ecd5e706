#include "griffin/cone.hpp"
#include "griffin/hamiltonian.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace griffin;

namespace {

Hamiltonian yukawa_model(int n = 63, double len = 10.0, int cutoff = 4, double mass = 1.0) {
    Grid g(1, n, len);
    return assemble(g, realize_potential(YukawaCutoff{mass, cutoff}, g));
}

} // namespace

TEST_CASE("free hamiltonian has spectrum {p^2}") {
    Grid g(1, 31, 5.0);
    VectorXd zero_hat = VectorXd::Zero(g.total());
    Potential p = realize_potential_unchecked(CustomFourier{zero_hat}, g);
    Hamiltonian h = assemble(g, p);
    std::vector<double> expect;
    for (int k = 0; k < g.total(); ++k) expect.push_back(g.momentum_sq(k));
    std::sort(expect.begin(), expect.end());
    for (int k = 0; k < g.total(); ++k)
        CHECK(h.eigensystem().values[k] == doctest::Approx(expect[k]).epsilon(1e-10));
}

TEST_CASE("constant potential shifts the spectrum") {
    Grid g(1, 31, 5.0);
    std::array<int, 3> zero{0, 0, 0};
    // hat = c * (2pi)^{d/2} / dp^d at p = 0 realizes to the constant c
    const double c = 1.7;
    VectorXd hat = VectorXd::Zero(g.total());
    hat[g.flatten(zero)] = c * std::sqrt(2.0 * M_PI) / g.weight_p();
    Potential p = realize_potential_unchecked(CustomFourier{hat}, g);
    CHECK(p.values.maxCoeff() == doctest::Approx(c).epsilon(1e-12));
    Hamiltonian h = assemble(g, p);
    CHECK(h.eigensystem().values[0] == doctest::Approx(-c).epsilon(1e-10));
}

TEST_CASE("momentum representation matches the convolution build") {
    Hamiltonian h = yukawa_model();
    Fourier f(h.grid());
    MatrixXcd via_dft = f.unitary() * h.matrix() * f.unitary().adjoint();
    MatrixXd direct = h.momentum_matrix();
    CHECK((via_dft - direct.cast<Complex>()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(h.momentum_convolution().minCoeff() >= 0.0);
    CHECK_THROWS(assemble(Grid(1, 31, 5.0), h.potential())); // grid mismatch
}

TEST_CASE("ground state positivity and uniqueness certificate") {
    Hamiltonian h = yukawa_model();
    GroundState gs = ground_state(h);
    CHECK(gs.energy < 0.0);
    CHECK(gs.gap > 1e-10 * h.operator_norm());
    CHECK(gs.min_psi > 1e-10);
    CHECK(gs.min_psi_hat > 1e-10);
    CHECK(gs.residual < 1e-8);
    CHECK(gs.positive());
    // weighted normalization
    CHECK(gs.psi.squaredNorm() * h.grid().weight_x() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant potential is the canonical negative control") {
    // constant V realizes from a Fourier delta at p = 0, which violates the
    // support clause of (B)(ii); its ground state is flat and psi_hat is a
    // lattice delta, so strict momentum positivity must fail
    Grid g(1, 31, 5.0);
    std::array<int, 3> zero{0, 0, 0};
    VectorXd hat = VectorXd::Zero(g.total());
    hat[g.flatten(zero)] = std::sqrt(2.0 * M_PI) / g.weight_p();
    Hamiltonian h = assemble(g, realize_potential_unchecked(CustomFourier{hat}, g));
    GroundState gs = ground_state(h);
    CHECK(gs.min_psi > 0.0);
    CHECK(gs.min_psi_hat < 1e-10); // flagged, not silently repaired
    CHECK_FALSE(gs.positive());
}

TEST_CASE("gaussian well ground state is positive in both bases") {
    Grid g(1, 63, 10.0);
    Hamiltonian h = assemble(g, realize_potential(GaussianWell{5.0, 1.0}, g));
    GroundState gs = ground_state(h);
    CHECK(gs.min_psi > 1e-10);
    CHECK(gs.min_psi_hat > 1e-10);
}

TEST_CASE("semigroup basics") {
    Hamiltonian h = yukawa_model(31, 6.0);
    CHECK(semigroup(h, 0.0).isIdentity(1e-14));
    MatrixXd ea = semigroup(h, 0.4), eb = semigroup(h, 0.7), eab = semigroup(h, 1.1);
    CHECK((ea * eb - eab).cwiseAbs().maxCoeff() <
          1e-9 * std::max(1.0, eab.cwiseAbs().maxCoeff()));
    CHECK_THROWS(semigroup(h, -1.0));
}

TEST_CASE("position-basis semigroup is entrywise positive at adequate resolution") {
    // truncation ringing scales like e^{-beta p_max^2}; this grid keeps it
    // below tolerance for every beta tested
    Hamiltonian h = yukawa_model(63, 6.0);
    for (double beta : {0.1, 1.0, 10.0}) {
        MatrixXd e = semigroup(h, beta);
        CHECK(e.minCoeff() >= -1e-10 * std::max(1.0, e.maxCoeff()));
    }
    MatrixXd e1 = semigroup(h, 1.0);
    CHECK(e1.minCoeff() > 1e-10); // strictly positive, Perron regime
}

TEST_CASE("momentum-basis semigroup positivity via the nonnegative product route") {
    Hamiltonian h = yukawa_model();
    MatrixXd g = momentum_semigroup_nonneg(h, 1.0);
    CHECK(g.minCoeff() > 0.0); // exact nonnegativity by construction, strict by ergodicity
    // cross-check against the eigendecomposition of the momentum matrix
    MatrixXd exact = expm_sym(h.momentum_matrix(), -1.0);
    CHECK((g - exact).cwiseAbs().maxCoeff() < 1e-6 * exact.cwiseAbs().maxCoeff());
}

TEST_CASE("momentum convolution is ergodic and the semigroup improves positivity") {
    Hamiltonian h = yukawa_model();
    ConeMap conv(h.momentum_convolution().cast<Complex>(),
                 ConeDescriptor::orthant(h.grid().total()));
    CHECK(preserves_positivity(conv));
    CHECK(is_ergodic(conv));
    CHECK(momentum_semigroup_nonneg(h, 0.5).minCoeff() > 0.0);
}

TEST_CASE("perron-frobenius-faris consistency on the lattice model") {
    Hamiltonian h = yukawa_model(63, 6.0);
    GroundState gs = ground_state(h);
    MatrixXd e = semigroup(h, 1.0);
    const bool semigroup_positive = e.minCoeff() > 1e-12 * e.maxCoeff();
    const bool unique_positive = gs.gap > 1e-10 * h.operator_norm() && gs.min_psi > 1e-10;
    CHECK(semigroup_positive == unique_positive);
}

TEST_CASE("trotter product error halves when steps double") {
    Hamiltonian h = yukawa_model();
    MatrixXd kinetic = h.kinetic_matrix();
    MatrixXd pot = MatrixXd(h.potential().values.asDiagonal());
    MatrixXd exact = semigroup(h, 0.5);
    double prev = -1.0;
    for (int steps : {8, 16, 32}) {
        double err = (trotter_product(kinetic, pot, 0.5, steps) - exact).cwiseAbs().maxCoeff();
        if (prev > 0.0) {
            double ratio = prev / err;
            CHECK(ratio > 1.5);
            CHECK(ratio < 2.5);
        }
        prev = err;
    }
    // V = 0 and commuting diagonal pieces are exact for any step count
    MatrixXd zero = MatrixXd::Zero(kinetic.rows(), kinetic.cols());
    CHECK((trotter_product(kinetic, zero, 0.5, 3) - expm_sym(kinetic, -0.5))
              .cwiseAbs()
              .maxCoeff() < 1e-11);
    MatrixXd d1 = VectorXd::LinSpaced(10, 0.1, 1.0).asDiagonal();
    MatrixXd d2 = VectorXd::LinSpaced(10, 0.3, 0.9).asDiagonal();
    CHECK((trotter_product(d1, d2, 0.8, 5) - expm_sym(d1 - d2, -0.8)).cwiseAbs().maxCoeff() <
          1e-13);
}

TEST_CASE("duhamel expansion: closed form, positivity and remainder bound") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // commuting case: D_n = (beta C)^n / n! * e^{-beta A}
    VectorXd ad = VectorXd::LinSpaced(6, 0.5, 2.0);
    VectorXd cd = VectorXd::LinSpaced(6, 0.1, 0.9);
    const double beta = 1.0;
    auto exp_diag = duhamel_partial_sum(MatrixXd(ad.asDiagonal()), MatrixXd(cd.asDiagonal()),
                                        beta, 4, 64);
    REQUIRE(exp_diag.terms.size() == 5);
    for (int n = 0; n <= 4; ++n) {
        MatrixXd closed =
            ((beta * cd.array()).pow(n) / std::tgamma(n + 1.0) * (-beta * ad.array()).exp())
                .matrix()
                .asDiagonal();
        double tol = std::max(4.0 * exp_diag.quadrature_error, 1e-12);
        CHECK((exp_diag.terms[n] - closed).cwiseAbs().maxCoeff() <= tol);
    }
    CHECK(exp_diag.terms[0].isApprox(expm_sym(MatrixXd(ad.asDiagonal()), -beta), 1e-12));

    // random 8x8, A diagonal positive and C symmetric nonnegative
    VectorXd d(8);
    MatrixXd c(8, 8);
    for (int i = 0; i < 8; ++i) {
        d[i] = 0.5 + 1.5 * uni(rng);
        for (int j = 0; j < 8; ++j) c(i, j) = 0.5 * uni(rng);
    }
    c = 0.5 * (c + c.transpose());
    const int order = 6;
    auto ex = duhamel_partial_sum(MatrixXd(d.asDiagonal()), c, beta, order, 64);
    // termwise positivity w.r.t. the orthant, tolerance folded with the
    // quadrature estimate
    for (const auto& t : ex.terms)
        CHECK(t.minCoeff() >= -(1e-10 + 4.0 * ex.quadrature_error));
    // remainder bound
    MatrixXd exact = expm_sym(MatrixXd(d.asDiagonal()) - c, -beta);
    const double nc = c.operatorNorm();
    const double bound = std::exp(beta * (nc - d.minCoeff())) *
                             std::pow(beta * nc, order + 1) / std::tgamma(order + 2.0) +
                         4.0 * ex.quadrature_error;
    CHECK((exact - ex.partial_sum).cwiseAbs().maxCoeff() <= bound);
    // K = 0 returns e^{-beta A} alone
    auto k0 = duhamel_partial_sum(MatrixXd(d.asDiagonal()), c, beta, 0, 8);
    CHECK(k0.partial_sum.isApprox(expm_sym(MatrixXd(d.asDiagonal()), -beta), 1e-12));
    CHECK_THROWS(duhamel_partial_sum(MatrixXd(d.asDiagonal()), c, beta, -1, 64));
    CHECK_THROWS(duhamel_partial_sum(MatrixXd(d.asDiagonal()), c, beta, 2, 0));
}

TEST_CASE("expectations: normalization, positivity, two representations") {
    Hamiltonian h = yukawa_model();
    GroundState gs = ground_state(h);
    const Grid& g = h.grid();

    auto fs = sample_test_functions(FunctionClass::A, 24, 3, g);
    CHECK(expectation_position(gs, fs[0]) ==
          doctest::Approx(fs[0].values[0].real()).epsilon(1e-10)); // constant f
    Fourier fr(g);
    for (const auto& f : fs) {
        double ep = expectation_position(gs, f);
        double em = expectation_momentum(gs, f);
        CHECK(ep >= -1e-10);
        CHECK(em >= -1e-10);
        // momentum expectation via the position-basis operator
        VectorXcd w = fr.idft(f.momentum_values().cwiseProduct(
            fr.dft(gs.psi.cast<Complex>())));
        double via_pos = (gs.psi.cast<Complex>().dot(w) * g.weight_x()).real();
        CHECK(std::abs(via_pos - em) < 1e-10 * std::max(1.0, std::abs(em)));
    }
}

TEST_CASE("momentum distribution anchors") {
    Hamiltonian h = yukawa_model();
    GroundState gs = ground_state(h);
    VectorXd rho = momentum_distribution(gs);
    const Grid& g = h.grid();
    std::array<int, 3> zero{0, 0, 0};
    const int k0 = g.flatten(zero);
    CHECK(std::abs(rho[k0] - std::pow(2.0 * M_PI, -0.5)) < 1e-12);
    CHECK(rho.minCoeff() > 0.0);
    for (int a = 0; a < g.total(); ++a)
        for (int b = 0; b < g.total(); ++b) {
            double lhs = std::sqrt(2.0 * M_PI) * rho[a] * rho[b];
            double rhs = 0.5 * rho[g.wrap_diff(a, b)] + 0.5 * rho[g.wrap_sum(a, b)];
            CHECK(rhs - lhs >= -1e-10);
        }
}

TEST_CASE("energy responds to constant shifts with unit slope") {
    Grid g(1, 63, 10.0);
    Potential base = realize_potential(YukawaCutoff{1.0, 4}, g);
    std::array<int, 3> zero{0, 0, 0};
    auto shifted = [&](double c) {
        VectorXd hat = base.hat;
        hat[g.flatten(zero)] += c * std::sqrt(2.0 * M_PI) / g.weight_p();
        return assemble(g, realize_potential(CustomFourier{hat}, g));
    };
    const double h0 = shifted(0.0).eigensystem().values[0];
    const double h1 = shifted(1e-4).eigensystem().values[0];
    CHECK((h0 - h1) / 1e-4 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("finite-beta trial states converge to the ground expectation") {
    Grid g(1, 63, 10.0);
    Hamiltonian h = assemble(g, realize_potential(GaussianWell{5.0, 1.0}, g));
    GroundState gs = ground_state(h);
    auto fs = sample_test_functions(FunctionClass::AEven, 3, 5, g);
    const TestFunction& f = fs[2];
    MatrixXd obs = MatrixXd(f.values.real().asDiagonal());
    const double exact = expectation_position(gs, f);

    TrialState t0 = trial_state(h, 0.0);
    CHECK((t0.phi - t0.omega).cwiseAbs().maxCoeff() < 1e-12); // beta = 0 keeps Omega
    CHECK(t0.z > 0.0);

    double prev = 1e9;
    for (double beta : {5.0, 10.0, 20.0, 40.0}) {
        double err = std::abs(finite_beta_expectation(h, obs, beta) - exact);
        CHECK(err <= prev + 1e-12); // monotone approach
        prev = err;
    }
    CHECK(prev < 1e-8); // beta = 40 agreement

    // the yukawa model has a smaller even-sector gap; agreement is looser
    Hamiltonian hy = yukawa_model();
    GroundState gy = ground_state(hy);
    auto fsy = sample_test_functions(FunctionClass::AEven, 3, 5, hy.grid());
    MatrixXd obsy = MatrixXd(fsy[2].values.real().asDiagonal());
    CHECK(std::abs(finite_beta_expectation(hy, obsy, 40.0) -
                   expectation_position(gy, fsy[2])) < 1e-6);
}

TEST_CASE("trotter semigroup method approaches the eigen route") {
    Hamiltonian h = yukawa_model(31, 6.0);
    MatrixXd exact = semigroup(h, 0.5);
    MatrixXd split = semigroup(h, 0.5, SemigroupMethod::Trotter, 64);
    CHECK((split - exact).cwiseAbs().maxCoeff() < 1e-2);
    CHECK((semigroup(h, 0.5, SemigroupMethod::Trotter, 512) - exact).cwiseAbs().maxCoeff() <
          (split - exact).cwiseAbs().maxCoeff());
}

TEST_CASE("gaussian well convolution is ergodic too") {
    Grid g(1, 63, 10.0);
    Hamiltonian h = assemble(g, realize_potential(GaussianWell{5.0, 1.0}, g));
    ConeMap conv(h.momentum_convolution().cast<Complex>(),
                 ConeDescriptor::orthant(g.total()));
    CHECK(is_ergodic(conv));
    CHECK(momentum_semigroup_nonneg(h, 0.5).minCoeff() > 0.0);
}

TEST_CASE("lanczos ground state matches the dense route") {
    Hamiltonian h1 = yukawa_model();
    GroundState dense = ground_state(h1);
    GroundState kry = ground_state_lanczos(h1);
    CHECK(std::abs(kry.energy - dense.energy) < 1e-10 * h1.operator_norm());
    CHECK(std::abs(kry.gap - dense.gap) < 1e-8);
    CHECK(std::abs(kry.psi.dot(dense.psi) * h1.grid().weight_x()) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(kry.min_psi > 1e-10);
    CHECK(kry.min_psi_hat > 1e-10);

    Grid g2(2, 15, 6.0);
    Hamiltonian h2 = assemble(g2, realize_potential(YukawaCutoff{1.0, 4}, g2));
    GroundState d2 = ground_state(h2);
    GroundState k2 = ground_state_lanczos(h2);
    CHECK(std::abs(k2.energy - d2.energy) < 1e-9 * std::max(1.0, h2.operator_norm()));
    CHECK(std::abs(k2.psi.dot(d2.psi) * g2.weight_x()) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("zero test function has exactly zero expectation") {
    Hamiltonian h = yukawa_model(31, 6.0);
    GroundState gs = ground_state(h);
    TestFunction zero = make_test_function(FunctionClass::AEven,
                                           VectorXd::Zero(h.grid().total()), h.grid());
    CHECK(expectation_position(gs, zero) == 0.0);
    CHECK(expectation_momentum(gs, zero) == 0.0);
}

TEST_CASE("constant test function has unit momentum expectation") {
    Hamiltonian h = yukawa_model(31, 6.0);
    GroundState gs = ground_state(h);
    auto fs = sample_test_functions(FunctionClass::AEven, 1, 0, h.grid());
    const double c = fs[0].values[0].real();
    CHECK(expectation_momentum(gs, fs[0]) == doctest::Approx(c).epsilon(1e-10));
}

TEST_CASE("lattice semigroup improves positivity as a cone map") {
    Hamiltonian h = yukawa_model(63, 6.0);
    MatrixXd e1 = semigroup(h, 1.0);
    ConeMap m(e1.cast<Complex>(), ConeDescriptor::orthant(h.grid().total()));
    CHECK(preserves_positivity(m));
    CHECK(improves_positivity(m));
}

TEST_CASE("two-by-two ergodic instance has strictly positive semigroup") {
    MatrixXd a(2, 2), b(2, 2);
    a << 1, 0, 0, 2;
    b << 0, 1, 1, 0;
    CHECK(is_ergodic(ConeMap(b.cast<Complex>(), ConeDescriptor::orthant(2))));
    CHECK(expm_sym(a - b, -1.0).minCoeff() > 0.0);
    // reducible control: no coupling means exactly zero off-blocks
    MatrixXd azero = MatrixXd::Zero(2, 2);
    azero(0, 0) = 1.0;
    azero(1, 1) = 2.0;
    MatrixXd e = expm_sym(azero, -1.0);
    CHECK(e(0, 1) == 0.0);
    CHECK(e(1, 0) == 0.0);
}
