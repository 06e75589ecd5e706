#include "griffin/verify.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace griffin {

namespace {

std::string family_digest(const ModelFamily& f) {
    std::ostringstream os;
    os << "yukawa d=" << f.grid.dim << " n=" << f.grid.n << " L=" << f.grid.half_len
       << " m=" << f.mass << " range=" << f.n_lo << ".." << f.n_hi;
    return digest_string(os.str());
}

} // namespace

ModelFamily make_yukawa_family(const Grid& grid, double mass, int n_lo, int n_hi) {
    if (n_lo < 1 || n_hi < n_lo)
        throw std::invalid_argument("cutoff family requires 1 <= n_lo <= n_hi");
    std::vector<Hamiltonian> members;
    members.reserve(n_hi - n_lo + 1);
    VectorXd prev;
    for (int n = n_lo; n <= n_hi; ++n) {
        Potential p = realize_potential(YukawaCutoff{mass, n}, grid);
        if (prev.size() && (p.hat - prev).minCoeff() < 0.0)
            throw std::runtime_error("cutoff family hats are not nondecreasing in n");
        prev = p.hat;
        members.push_back(assemble(grid, p));
    }
    VectorXd hat_inf(grid.total());
    for (int k = 0; k < grid.total(); ++k)
        hat_inf[k] = yukawa_hat_limit(std::sqrt(grid.momentum_sq(k)), mass, grid.dim);
    Hamiltonian limit = assemble(grid, realize_potential(CustomFourier{hat_inf}, grid));
    return ModelFamily{grid, mass, n_lo, n_hi, std::move(members), std::move(limit)};
}

VerificationReport verify_ground_positivity(const Hamiltonian& h, const VerifyOptions& opt) {
    GroundState gs = ground_state(h);
    std::vector<double> margins{gs.min_psi, gs.min_psi_hat,
                                gs.gap - 1e-10 * h.operator_norm()};
    std::vector<std::string> notes{
        "margins: min psi entry, min psi_hat entry, gap above the uniqueness threshold"};
    return make_report("prop2.7", opt.tol, std::move(margins), std::move(notes));
}

std::vector<VerificationReport> verify_first_inequality(const Hamiltonian& h,
                                                        const VerifyOptions& opt) {
    GroundState gs = ground_state(h);
    auto fs = sample_test_functions(FunctionClass::A, opt.sample_size, opt.seed, h.grid());

    std::vector<double> pos, mom, strict_pos, strict_mom;
    for (const auto& f : fs) {
        pos.push_back(expectation_position(gs, f));
        mom.push_back(expectation_momentum(gs, f));
        if (f.hat_l1() > 0.0) {
            TestFunction n = f.normalized();
            strict_pos.push_back(expectation_position(gs, n) - opt.strict_margin);
            strict_mom.push_back(expectation_momentum(gs, n) - opt.strict_margin);
        }
    }
    std::vector<VerificationReport> out;
    out.push_back(make_report("thm2.8.i", opt.tol, std::move(pos),
                              {"<f> over class-A samples"}));
    out.push_back(make_report("thm2.8.ii", opt.tol, std::move(mom),
                              {"<f(-i grad)> over class-A samples"}));
    out.push_back(make_report("thm2.8.strict", opt.tol, std::move(strict_pos),
                              {"strict clause: <f> - strict_margin on l1-normalized f"}));
    out.push_back(make_report("thm2.8.strict_momentum", opt.tol, std::move(strict_mom),
                              {"strict clause, momentum side"}));
    return out;
}

std::vector<VerificationReport> verify_second_inequality(const Hamiltonian& h,
                                                         const VerifyOptions& opt) {
    GroundState gs = ground_state(h);
    const Grid& g = h.grid();
    auto fs = sample_test_functions(FunctionClass::AEven, 2 * opt.pair_count, opt.seed, g);
    Fourier fr(g);

    std::vector<double> cov_pos, cov_mom, cov_mixed;
    std::vector<std::string> notes{"margins: (i) cov(f,g); (ii) momentum cov; (iii) -mixed"};
    double worst_resid = 0.0;
    for (int t = 0; t < opt.pair_count; ++t) {
        const TestFunction& f = fs[2 * t];
        const TestFunction& gfn = fs[2 * t + 1];
        // (i) positions multiply pointwise
        {
            Complex acc = 0.0;
            for (int j = 0; j < g.total(); ++j)
                acc += f.values[j] * gfn.values[j] * gs.psi[j] * gs.psi[j];
            double fg = (acc * g.weight_x()).real();
            cov_pos.push_back(fg - expectation_position(gs, f) * expectation_position(gs, gfn));
        }
        // (ii) momentum versions multiply pointwise on the momentum diagonal
        {
            VectorXcd fp = f.momentum_values(), gp = gfn.momentum_values();
            Complex acc = 0.0;
            for (int k = 0; k < g.total(); ++k)
                acc += fp[k] * gp[k] * gs.psi_hat[k] * gs.psi_hat[k];
            double fg = (acc * g.weight_p()).real();
            cov_mom.push_back(fg - expectation_momentum(gs, f) * expectation_momentum(gs, gfn));
        }
        // (iii) mixed product f(-i grad) g: momentum diagonal then position diagonal
        {
            VectorXcd v = gfn.values.cwiseProduct(gs.psi.cast<Complex>());
            VectorXcd vhat = fr.dft(v);
            vhat = vhat.cwiseProduct(f.momentum_values());
            VectorXcd w = fr.idft(vhat);
            Complex acc = 0.0;
            for (int j = 0; j < g.total(); ++j) acc += gs.psi[j] * w[j];
            Complex mixed = acc * g.weight_x();
            worst_resid = std::max(worst_resid, std::abs(mixed.imag()));
            double cov =
                mixed.real() - expectation_momentum(gs, f) * expectation_position(gs, gfn);
            cov_mixed.push_back(-cov); // margin: the mixed covariance must be <= 0
        }
    }
    if (worst_resid > 1e-10)
        throw std::runtime_error("mixed covariance has imaginary residue above 1e-10");
    std::vector<VerificationReport> out;
    out.push_back(make_report("thm2.10.i", opt.tol, std::move(cov_pos),
                              {"cov(f,g) over A_e pairs"}));
    out.push_back(make_report("thm2.10.ii", opt.tol, std::move(cov_mom),
                              {"momentum covariance over A_e pairs"}));
    out.push_back(make_report("thm2.10.iii", opt.tol, std::move(cov_mixed),
                              {"negated mixed covariance over A_e pairs"}));
    return out;
}

VerificationReport verify_monotone_in_n(const ModelFamily& family, const TestFunction& f,
                                        const VerifyOptions& opt,
                                        const std::vector<double>& beta_schedule) {
    if ((int)family.members.size() < 3)
        throw std::invalid_argument("cutoff family needs at least 3 members");
    if (f.cls != FunctionClass::AEven)
        throw std::invalid_argument("verify_monotone_in_n requires f in class A_e");

    std::vector<double> pos_seq, mom_seq;
    for (const auto& h : family.members) {
        GroundState gs = ground_state(h);
        pos_seq.push_back(expectation_position(gs, f));
        mom_seq.push_back(expectation_momentum(gs, f));
    }
    GroundState gl = ground_state(family.limit);
    const double lim_pos = expectation_position(gl, f);
    const double lim_mom = expectation_momentum(gl, f);

    std::vector<double> margins;
    for (size_t i = 1; i < pos_seq.size(); ++i) margins.push_back(pos_seq[i] - pos_seq[i - 1]);
    for (size_t i = 1; i < mom_seq.size(); ++i) margins.push_back(mom_seq[i - 1] - mom_seq[i]);
    // proximity to the limit model, scaled into the same margin convention
    margins.push_back(opt.conv_tol - std::abs(pos_seq.back() - lim_pos));
    margins.push_back(opt.conv_tol - std::abs(mom_seq.back() - lim_mom));

    std::ostringstream note;
    note << "successive differences then limit proximity; |<f>_hi - <f>_lim| = "
         << std::abs(pos_seq.back() - lim_pos)
         << ", momentum side " << std::abs(mom_seq.back() - lim_mom)
         << "; conv_tol = " << opt.conv_tol
         << " (finite cutoff certifies decrease plus proximity, not the limit itself)";
    std::vector<std::string> notes{note.str()};

    if (!beta_schedule.empty()) {
        // imaginary-time oracle on the last member: the trial-state
        // expectation approaches <f>_n monotonically along the schedule
        const Hamiltonian& h = family.members.back();
        MatrixXd obs = MatrixXd(f.values.real().asDiagonal());
        std::vector<double> errs;
        for (double beta : beta_schedule)
            errs.push_back(std::abs(finite_beta_expectation(h, obs, beta) - pos_seq.back()));
        for (size_t i = 1; i < errs.size(); ++i) margins.push_back(errs[i - 1] - errs[i]);
        std::ostringstream onote;
        onote << "trial-state oracle deviation at beta = " << beta_schedule.back() << ": "
              << errs.back();
        notes.push_back(onote.str());
    }
    return make_report("thm2.9", opt.tol, std::move(margins), std::move(notes),
                       family_digest(family));
}

std::vector<VerificationReport> verify_potential_order(const Hamiltonian& strong,
                                                       const Hamiltonian& weak,
                                                       const VerifyOptions& opt) {
    if (!(strong.grid() == weak.grid()))
        throw std::invalid_argument("potential order: grid mismatch");
    if ((strong.potential().hat - weak.potential().hat).minCoeff() < 0.0)
        throw std::invalid_argument("potentials not comparable: hat ordering fails at a node");

    GroundState gs1 = ground_state(strong), gs2 = ground_state(weak);
    auto fs = sample_test_functions(FunctionClass::AEven, opt.sample_size, opt.seed,
                                    strong.grid());
    std::vector<double> pos, mom;
    for (const auto& f : fs) {
        pos.push_back(expectation_position(gs1, f) - expectation_position(gs2, f));
        mom.push_back(expectation_momentum(gs2, f) - expectation_momentum(gs1, f));
    }
    VectorXd r1 = momentum_distribution(gs1), r2 = momentum_distribution(gs2);
    std::vector<double> rho((size_t)r1.size());
    for (int k = 0; k < r1.size(); ++k) rho[k] = r1[k] - r2[k];

    std::vector<VerificationReport> out;
    out.push_back(make_report("thm2.12.i", opt.tol, std::move(pos),
                              {"<f> ordering over A_e samples"}));
    out.push_back(make_report("thm2.12.ii", opt.tol, std::move(mom),
                              {"momentum expectation ordering (reversed)"}));
    out.push_back(make_report("thm2.16", opt.tol, std::move(rho),
                              {"momentum distribution nodewise ordering"}));
    return out;
}

std::vector<VerificationReport> verify_momentum_theorems(const ModelFamily& family,
                                                         const VerifyOptions& opt) {
    const Grid& g = family.grid;
    const Hamiltonian& h = family.members.back();
    GroundState gs = ground_state(h);
    VectorXd rho = momentum_distribution(gs);

    std::array<int, 3> zero{0, 0, 0};
    const int k0 = g.flatten(zero);
    const double anchor = std::pow(2.0 * M_PI, -0.5 * g.dim);

    std::vector<VerificationReport> out;
    {
        std::vector<double> m(rho.data(), rho.data() + rho.size());
        out.push_back(make_report("thm2.14.i", opt.tol, std::move(m),
                                  {"momentum distribution positivity at all nodes"}));
    }
    {
        std::vector<double> m{-(std::abs(rho[k0] - anchor))};
        for (int k = 0; k < g.total(); ++k)
            if (k != k0) m.push_back(rho[k0] - rho[k] - opt.strict_margin);
        out.push_back(make_report("thm2.14.ii", opt.tol, std::move(m),
                                  {"anchor rho^(0) = (2pi)^{-d/2} and strict maximum at 0"}));
    }
    {
        std::vector<double> m;
        m.reserve((size_t)g.total() * g.total());
        const double scale = std::pow(2.0 * M_PI, 0.5 * g.dim);
        for (int a = 0; a < g.total(); ++a)
            for (int b = 0; b < g.total(); ++b) {
                const double rhs =
                    0.5 * rho[g.wrap_diff(a, b)] + 0.5 * rho[g.wrap_sum(a, b)];
                m.push_back(rhs - scale * rho[a] * rho[b]);
            }
        out.push_back(make_report("thm2.14.iii", opt.tol, std::move(m),
                                  {"wrapped convolution inequality over all node pairs"}));
    }
    {
        std::vector<double> m;
        VectorXd prev;
        for (const auto& hn : family.members) {
            VectorXd r = momentum_distribution(ground_state(hn));
            if (prev.size())
                for (int k = 0; k < r.size(); ++k) m.push_back(r[k] - prev[k]);
            prev = r;
        }
        out.push_back(make_report("thm2.15", opt.tol, std::move(m),
                                  {"nodewise monotonicity of rho^ in the cutoff index"}));
    }
    for (auto& r : out) r.config_digest = family_digest(family);
    return out;
}

namespace {

MatrixXd random_nonneg(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = uni(rng);
    return m;
}

/// Symmetric nonnegative matrix with a connecting ring plus random extra
/// edges: irreducible with small diameter, so strict-positivity margins
/// stay well above rounding noise.
MatrixXd ring_plus_edges(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    MatrixXd b = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double w = 0.5 + 0.5 * uni(rng);
        b(i, (i + 1) % n) = w;
        b((i + 1) % n, i) = w;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uni(rng) < 0.3) {
                double w = 0.2 + 0.8 * uni(rng);
                b(i, j) += w;
                b(j, i) += w;
            }
    return b;
}

MatrixXd two_blocks(int n, std::mt19937_64& rng) {
    const int k = n / 2;
    MatrixXd b = MatrixXd::Zero(n, n);
    b.topLeftCorner(k, k) = ring_plus_edges(k, rng);
    b.bottomRightCorner(n - k, n - k) = ring_plus_edges(n - k, rng);
    return b;
}

} // namespace

std::vector<VerificationReport> verify_cone_theory(const std::vector<int>& sizes,
                                                   int instances_per_size,
                                                   std::uint64_t seed, double tol) {
    for (int s : sizes)
        if (s < 2 || s > 32)
            throw std::invalid_argument("cone theory sizes must be in [2, 32]");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> axiom_margins;   // decompose reconstruction/orthogonality, pairings
    std::vector<double> thm310, thm311, thm315;
    std::vector<double> pff_agree;       // 1 if the three PFF sides agree, else -1
    int pff_total = 0;

    for (int n : sizes) {
        ConeDescriptor orth = ConeDescriptor::orthant(n);
        ConeDescriptor psd = ConeDescriptor::psd(n);
        for (int t = 0; t < instances_per_size; ++t) {
            // --- Hilbert-cone axioms ---
            {
                VectorXd v(n);
                for (int i = 0; i < n; ++i) v[i] = gauss(rng);
                ConeElement x(VectorXcd(v.cast<Complex>()), orth);
                auto [plus, minus] = decompose(x);
                double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
                axiom_margins.push_back(
                    tol - (plus.data - minus.data - x.data).cwiseAbs().maxCoeff() / scale);
                axiom_margins.push_back(
                    tol - std::abs((plus.data.adjoint() * minus.data)(0, 0)) /
                              (scale * scale));
                // cone pairing nonnegative on the parts
                axiom_margins.push_back((plus.data.adjoint() * plus.data)(0, 0).real());
            }
            {
                MatrixXcd a(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
                MatrixXcd herm = 0.5 * (a + a.adjoint());
                ConeElement x(herm, psd);
                auto [plus, minus] = decompose(x);
                double scale = std::max(1.0, herm.cwiseAbs().maxCoeff());
                axiom_margins.push_back(
                    tol - (plus.data - minus.data - herm).cwiseAbs().maxCoeff() / scale);
                double pairing = (plus.data.adjoint() * minus.data).trace().real();
                axiom_margins.push_back(tol - std::abs(pairing) / (scale * scale));
            }
            // --- semigroup positivity, A diagonal positive, B nonnegative ---
            {
                VectorXd d(n);
                for (int i = 0; i < n; ++i) d[i] = 0.5 + 1.5 * uni(rng);
                MatrixXd b = random_nonneg(n, rng);
                MatrixXd m = MatrixXd(d.asDiagonal()) - b;
                MatrixXd e = (-m).exp();
                thm310.push_back(e.minCoeff() / std::max(1.0, e.maxCoeff()));
                // Duhamel ordering with C nonnegative
                MatrixXd c = random_nonneg(n, rng);
                MatrixXd ea = MatrixXd((-d.array()).exp().matrix().asDiagonal());
                MatrixXd eb = (-(MatrixXd(d.asDiagonal()) - c)).exp();
                thm311.push_back((eb - ea).minCoeff() / std::max(1.0, eb.maxCoeff()));
            }
            // --- Perron-Frobenius-Faris equivalence + ergodic positivity ---
            {
                const bool make_ergodic = t % 2 == 0;
                MatrixXd b = make_ergodic ? ring_plus_edges(n, rng) : two_blocks(n, rng);
                Eigen::SelfAdjointEigenSolver<MatrixXd> esb(b, Eigen::EigenvaluesOnly);
                const double shift = esb.eigenvalues().cwiseAbs().maxCoeff() + 1.0;
                MatrixXd a = shift * MatrixXd::Identity(n, n) - b;
                Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
                const double gap = es.eigenvalues()[1] - es.eigenvalues()[0];
                VectorXd ground = es.eigenvectors().col(0);
                if (ground.sum() < 0.0) ground = -ground;
                const bool unique_positive =
                    gap > 1e-10 * es.eigenvalues().cwiseAbs().maxCoeff() &&
                    ground.minCoeff() > 1e-10;
                MatrixXd e = expm_sym(a, -1.0);
                const bool semigroup_positive = e.minCoeff() > 1e-12 * e.maxCoeff();
                const bool ergodic = is_ergodic(ConeMap(b.cast<Complex>(), orth));
                pff_agree.push_back(
                    (unique_positive == semigroup_positive && ergodic == unique_positive)
                        ? 1.0
                        : -1.0);
                ++pff_total;
                if (ergodic) {
                    VectorXd d(n);
                    for (int i = 0; i < n; ++i) d[i] = 0.5 + 1.5 * uni(rng);
                    MatrixXd eh = (-(MatrixXd(d.asDiagonal()) - b)).exp();
                    thm315.push_back(eh.minCoeff() / std::max(1.0, eh.maxCoeff()));
                }
            }
        }
    }

    std::vector<VerificationReport> out;
    out.push_back(make_report("cone.axioms", tol, std::move(axiom_margins),
                              {"decompose reconstruction and orthogonality, scaled"}));
    out.push_back(make_report("thm3.10", 1e-9, std::move(thm310),
                              {"entrywise minimum of e^{-(A-B)}, relative"}));
    out.push_back(make_report("thm3.11", 1e-9, std::move(thm311),
                              {"entrywise minimum of e^{-B} - e^{-A}, relative"}));
    {
        std::ostringstream note;
        note << "PFF equivalence agreement on " << pff_total
             << " instances (margin 1 = agree, -1 = disagree)";
        out.push_back(make_report("thm3.13", 0.0, std::move(pff_agree), {note.str()}));
    }
    out.push_back(make_report("thm3.15", 0.0, std::move(thm315),
                              {"strict entrywise positivity of e^{-(A-B)} for ergodic B"}));
    return out;
}

} // namespace griffin
