#include "griffin/doubled.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

namespace griffin {

namespace {

double min_eig_sym(const MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eig_sym(const MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

double rel_scale(const MatrixXcd& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

bool hat_is_even(const VectorXd& hat, const Grid& g) {
    for (int k = 0; k < g.total(); ++k)
        if (hat[g.reflect(k)] != hat[k]) return false;
    return true;
}

/// Reduced probe family for doubled-space checks: basis rank-ones, seeded
/// random rank-ones, and a few random full-rank PSD matrices.
std::vector<MatrixXcd> doubled_probes(int side, int random_rank_ones = 16,
                                      int random_full = 4,
                                      unsigned long long seed = 77001ULL) {
    std::vector<MatrixXcd> out;
    for (int i = 0; i < side; ++i) {
        MatrixXcd e = MatrixXcd::Zero(side, side);
        e(i, i) = 1.0;
        out.push_back(e);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto rand_vec = [&] {
        VectorXcd v(side);
        for (int i = 0; i < side; ++i) v[i] = Complex(gauss(rng), gauss(rng));
        v.normalize();
        return v;
    };
    for (int t = 0; t < random_rank_ones; ++t) {
        VectorXcd v = rand_vec();
        out.push_back(v * v.adjoint());
    }
    for (int t = 0; t < random_full; ++t) {
        MatrixXcd a(side, side);
        for (int i = 0; i < side; ++i)
            for (int j = 0; j < side; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
        a /= std::sqrt((double)side);
        out.push_back(a * a.adjoint());
    }
    return out;
}

} // namespace

std::vector<int> coordinate_change(const Grid& grid) {
    if (grid.n % 2 == 0)
        throw std::invalid_argument("coordinate change requires odd N");
    const int m = grid.total();
    const int inv2 = (grid.n + 1) / 2; // multiplicative inverse of 2 mod n
    std::vector<int> perm((size_t)m * m);
    for (int a = 0; a < m; ++a) {
        auto c1 = grid.digits(a);
        for (int b = 0; b < m; ++b) {
            auto c2 = grid.digits(b);
            std::array<int, 3> x1{0, 0, 0}, x2{0, 0, 0};
            for (int ax = 0; ax < grid.dim; ++ax) {
                x1[ax] = grid.wrap_axis(inv2 * (c2[ax] - c1[ax]));
                x2[ax] = grid.wrap_axis(inv2 * (c1[ax] + c2[ax]));
            }
            perm[(size_t)a * m + b] = grid.flatten(x1) * m + grid.flatten(x2);
        }
    }
    return perm;
}

MatrixXcd extended_operator(const MatrixXcd& a, ExtendSide side) {
    const int n = (int)a.rows();
    if (a.cols() != n) throw std::invalid_argument("extended_operator: matrix must be square");
    MatrixXcd out = MatrixXcd::Zero((long)n * n, (long)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (side == ExtendSide::Left || side == ExtendSide::Sym) {
                // (A (x) 1)
                for (int k = 0; k < n; ++k)
                    out((long)i * n + k, (long)j * n + k) += a(i, j);
            }
            if (side == ExtendSide::Right || side == ExtendSide::Sym) {
                // (1 (x) A)
                for (int k = 0; k < n; ++k)
                    out((long)k * n + i, (long)k * n + j) += a(i, j);
            }
        }
    return out;
}

DoubledSpace::DoubledSpace(const Grid& grid)
    : grid_(grid), perm_(coordinate_change(grid)), fourier_(grid) {}

MatrixXcd DoubledSpace::apply_extended(const MatrixXd& e1, const MatrixXd& e2,
                                       const MatrixXcd& xi) const {
    VectorXcd w_big = hs_unpack(xi);
    VectorXcd w_x(perm_.size());
    for (size_t i = 0; i < perm_.size(); ++i) w_x[i] = w_big[perm_[i]];
    MatrixXcd w_mat = hs_pack(w_x);
    w_mat = e1 * w_mat * e2.transpose();
    VectorXcd w_out = hs_unpack(w_mat);
    VectorXcd back(perm_.size());
    for (size_t i = 0; i < perm_.size(); ++i) back[perm_[i]] = w_out[i];
    return hs_pack(back);
}

MatrixXd DoubledSpace::packed_ground_pair(const VectorXd& psi) const {
    const int m = grid_.total();
    MatrixXd out(m, m);
    VectorXd flat((long)m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) flat[perm_[(size_t)a * m + b]] = psi[a] * psi[b];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = flat[(long)i * m + j];
    return out;
}

VectorXd DoubledSpace::doubled_multiplication_diagonal(const VectorXd& f_values,
                                                       DoublingSign sign) const {
    const int m = grid_.total();
    VectorXd diag((long)m * m);
    for (int A = 0; A < m; ++A)
        for (int B = 0; B < m; ++B) {
            const double x1 = f_values[grid_.wrap_diff(B, A)]; // f(X2 - X1)
            const double x2 = f_values[grid_.wrap_sum(A, B)];  // f(X1 + X2)
            diag[(long)A * m + B] = sign == DoublingSign::Plus ? x1 + x2 : x1 - x2;
        }
    return diag;
}

VectorXd DoubledSpace::multiplication_decomposition_diagonal(const VectorXd& hat,
                                                             DoublingSign sign) const {
    const int m = grid_.total();
    const double scale = 2.0 * std::pow(2.0 * M_PI, -0.5 * grid_.dim) * grid_.weight_p();
    VectorXd diag = VectorXd::Zero((long)m * m);
    VectorXd trig(m);
    for (int k = 0; k < m; ++k) {
        if (hat[k] == 0.0) continue;
        VectorXd pk = grid_.momentum(k);
        for (int A = 0; A < m; ++A) {
            const double phase = pk.dot(grid_.position(A));
            trig[A] = sign == DoublingSign::Plus ? std::cos(phase) : std::sin(phase);
        }
        const double w = scale * hat[k];
        for (int A = 0; A < m; ++A) {
            const double tA = w * trig[A];
            if (tA == 0.0) continue;
            for (int B = 0; B < m; ++B) diag[(long)A * m + B] += tA * trig[B];
        }
    }
    return diag;
}

namespace {

double interp_at(const TestFunction& f, const VectorXd& u) {
    const Grid& g = f.grid;
    const double scale = std::pow(2.0 * M_PI, -0.5 * g.dim) * g.weight_p();
    double acc = 0.0;
    for (int q = 0; q < g.total(); ++q) {
        if (f.hat[q] == 0.0) continue;
        acc += f.hat[q] * std::cos(g.momentum(q).dot(u)); // sin parts cancel, hat even
    }
    return scale * acc;
}

} // namespace

MatrixXd DoubledSpace::momentum_doubling_symbol(const TestFunction& f,
                                                DoublingSign sign) const {
    const int m = grid_.total();
    MatrixXd sym(m, m);
    for (int A = 0; A < m; ++A) {
        VectorXd q1 = grid_.momentum(A);
        for (int B = 0; B < m; ++B) {
            VectorXd q2 = grid_.momentum(B);
            const double p1 = interp_at(f, ((q2 - q1) / 2.0).eval());
            const double p2 = interp_at(f, ((q2 + q1) / 2.0).eval());
            sym(A, B) = sign == DoublingSign::Plus ? p1 + p2 : p1 - p2;
        }
    }
    return sym;
}

MatrixXd DoubledSpace::momentum_decomposition_symbol(const TestFunction& f,
                                                     DoublingSign sign) const {
    const int m = grid_.total();
    const double scale = 2.0 * std::pow(2.0 * M_PI, -0.5 * grid_.dim) * grid_.weight_p();
    MatrixXd sym = MatrixXd::Zero(m, m);
    VectorXd trig(m);
    for (int k = 0; k < m; ++k) {
        if (f.hat[k] == 0.0) continue;
        VectorXd pk = grid_.momentum(k);
        for (int A = 0; A < m; ++A) {
            const double half_phase = 0.5 * pk.dot(grid_.momentum(A));
            trig[A] = sign == DoublingSign::Plus ? std::cos(half_phase) : std::sin(half_phase);
        }
        sym += (scale * f.hat[k]) * (trig * trig.transpose());
    }
    return sym;
}

MatrixXcd DoubledSpace::apply_momentum_decomposition(const TestFunction& f, DoublingSign sign,
                                                     const MatrixXcd& xi) const {
    // The decomposition sum is diagonal in the doubled momentum basis of
    // the X grid; conjugate by the per-factor DFT and multiply by the
    // symbol.  Identical to accumulating the sandwich terms.
    MatrixXd sym = momentum_decomposition_symbol(f, sign);
    const MatrixXcd& fu = fourier_.unitary();
    MatrixXcd xhat = fu * xi * fu.transpose();
    xhat = xhat.cwiseProduct(sym.cast<Complex>());
    return fu.adjoint() * xhat * fu.conjugate();
}

namespace {

VerificationReport doubling_check_impl(const VectorXd& hat, const Grid& grid,
                                       DoublingSign sign, double tol,
                                       const std::string& id) {
    if (!hat_is_even(hat, grid))
        return make_skipped(id, "not in class A_e: Fourier data not even; check inapplicable");
    for (int k = 0; k < grid.total(); ++k)
        if (hat[k] < 0.0)
            return make_skipped(id, "not in class A: negative Fourier data; check inapplicable");

    DoubledSpace ds(grid);
    Fourier fr(grid);
    VectorXd values = fr.idft(hat.cast<Complex>()).real();

    std::vector<double> margins;
    std::vector<std::string> notes;

    VectorXd direct = ds.doubled_multiplication_diagonal(values, sign);
    VectorXd dec = ds.multiplication_decomposition_diagonal(hat, sign);
    const double resid = (direct - dec).cwiseAbs().maxCoeff() /
                         std::max(1.0, direct.cwiseAbs().maxCoeff());
    margins.push_back(-resid);
    notes.push_back("constructive decomposition residual (relative): " +
                    std::to_string(resid));

    // Every summand is the sandwich by a real diagonal (Plus: cos(p.X),
    // Minus: sin(p.X)); positivity of the whole map follows term by term.
    // Probe cross-check: the diagonal map must keep packed PSD probes PSD.
    const int m = grid.total();
    for (const auto& probe : doubled_probes(m, 8, 2)) {
        VectorXcd w = hs_unpack(probe);
        for (long i = 0; i < w.size(); ++i) w[i] *= dec[i];
        MatrixXcd out = hs_pack(w);
        margins.push_back(min_eig_sym(out) / rel_scale(out));
    }
    notes.push_back("probe margins are min eigenvalues relative to max entry");
    return make_report(id, tol, std::move(margins), std::move(notes));
}

} // namespace

VerificationReport check_potential_doubling(const TestFunction& f, DoublingSign sign,
                                            double tol) {
    return doubling_check_impl(f.hat, f.grid, sign, tol, "lemma5.1");
}

VerificationReport check_potential_doubling(const Potential& v, DoublingSign sign,
                                            double tol) {
    return doubling_check_impl(v.hat, v.grid, sign, tol, "lemma5.1");
}

VerificationReport check_momentum_doubling(const TestFunction& f, DoublingSign sign,
                                           double tol) {
    const std::string id = "lemma5.3";
    if (f.cls != FunctionClass::AEven || !hat_is_even(f.hat, f.grid))
        return make_skipped(id, "not in class A_e: Fourier data not even; check inapplicable");

    DoubledSpace ds(f.grid);
    std::vector<double> margins;
    std::vector<std::string> notes;

    MatrixXd direct = ds.momentum_doubling_symbol(f, sign);
    MatrixXd dec = ds.momentum_decomposition_symbol(f, sign);
    const double resid =
        (direct - dec).cwiseAbs().maxCoeff() / std::max(1.0, direct.cwiseAbs().maxCoeff());
    margins.push_back(-resid);
    notes.push_back("half-shift decomposition residual (relative): " + std::to_string(resid));

    for (const auto& probe : doubled_probes(f.grid.total(), 8, 2)) {
        MatrixXcd out = ds.apply_momentum_decomposition(f, sign, probe);
        // Plus combination preserves positivity; Minus reverses it.
        const double margin = sign == DoublingSign::Plus
                                  ? min_eig_sym(out) / rel_scale(out)
                                  : -max_eig_sym(out) / rel_scale(out);
        margins.push_back(margin);
    }
    notes.push_back(sign == DoublingSign::Plus
                        ? "probes certify PSD preservation"
                        : "probes certify the reversed (negative) direction");
    return make_report(id, tol, std::move(margins), std::move(notes));
}

ExtendedSemigroupResult extended_semigroup_positivity(const Hamiltonian& h_coarse,
                                                      const Hamiltonian& h_fine,
                                                      const std::vector<double>& betas,
                                                      double tol) {
    const Grid& g = h_fine.grid();
    DoubledSpace ds(g);
    const auto probes = doubled_probes(g.total(), 8, 2);

    std::vector<double> probe_margins;
    std::vector<double> order_margins;
    for (double beta : betas) {
        MatrixXd ef = semigroup(h_fine, beta);
        MatrixXd ec = semigroup(h_coarse, beta);
        for (const auto& probe : probes) {
            MatrixXcd out = ds.apply_extended(ef, ef, probe);
            probe_margins.push_back(min_eig_sym(out) / rel_scale(out));
            MatrixXcd diff = out - ds.apply_extended(ec, ec, probe);
            order_margins.push_back(min_eig_sym(diff) / rel_scale(out));
        }
    }

    GroundState gs = ground_state(h_fine);
    VectorXd psi_plain = gs.psi * std::sqrt(g.weight_x()); // unit plain norm
    std::vector<double> ground_margins;
    {
        // plain pack of psi (x) psi: the rank-one |psi><psi|
        MatrixXd outer = psi_plain * psi_plain.transpose();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(outer, Eigen::EigenvaluesOnly);
        VectorXd ev = es.eigenvalues();
        ground_margins.push_back(ev.minCoeff());              // PSD
        ground_margins.push_back(-std::abs(ev.maxCoeff() - 1.0)); // top eigenvalue 1
        double second = 0.0;
        for (int i = 0; i < ev.size() - 1; ++i) second = std::max(second, std::abs(ev[i]));
        ground_margins.push_back(-second);                    // rank one
        // after the coordinate change: PSD w.r.t. the extended cone
        MatrixXd mx = ds.packed_ground_pair(psi_plain);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es2(0.5 * (mx + mx.transpose()),
                                                    Eigen::EigenvaluesOnly);
        ground_margins.push_back(es2.eigenvalues().minCoeff() /
                                 std::max(1.0, mx.cwiseAbs().maxCoeff()));
    }

    ExtendedSemigroupResult out;
    out.probes = make_report("thm6.2", tol, std::move(probe_margins),
                             {"min probe eigenvalues, relative to max entry"});
    out.ground_pair = make_report("cor6.3", tol, std::move(ground_margins),
                                  {"rank-one pack and coordinate-changed PSD margins"});
    out.ordering = make_report("prop6.1", tol, std::move(order_margins),
                               {"semigroup cutoff-ordering probe margins"});
    return out;
}

} // namespace griffin
