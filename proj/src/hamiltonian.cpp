#include "griffin/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace griffin {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

} // namespace

MatrixXd expm_sym(const MatrixXd& m, double t) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
    return es.eigenvectors() * (t * es.eigenvalues().array()).exp().matrix().asDiagonal() *
           es.eigenvectors().transpose();
}

Hamiltonian::Hamiltonian(Grid grid, Potential potential, MatrixXd matrix)
    : grid_(std::move(grid)), potential_(std::move(potential)), mat_(std::move(matrix)),
      cache_(std::make_shared<Cache>()) {}

const Eigensystem& Hamiltonian::eigensystem() const {
    std::call_once(cache_->once, [this] {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(mat_);
        cache_->eig.values = es.eigenvalues();
        cache_->eig.vectors = es.eigenvectors();
    });
    return cache_->eig;
}

double Hamiltonian::operator_norm() const {
    const auto& ev = eigensystem().values;
    return std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
}

MatrixXd Hamiltonian::momentum_convolution() const {
    const int m = grid_.total();
    const double scale = std::pow(2.0 * M_PI, -0.5 * grid_.dim) * grid_.weight_p();
    MatrixXd conv(m, m);
    for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) conv(k, l) = scale * potential_.hat[grid_.wrap_diff(k, l)];
    return conv;
}

MatrixXd Hamiltonian::momentum_matrix() const {
    MatrixXd h = -momentum_convolution();
    for (int k = 0; k < grid_.total(); ++k) h(k, k) += grid_.momentum_sq(k);
    return h;
}

MatrixXd Hamiltonian::kinetic_matrix() const {
    return mat_ + MatrixXd(potential_.values.asDiagonal());
}

Hamiltonian assemble(const Grid& grid, const Potential& potential) {
    require_same_grid(grid, potential.grid, "assemble");
    Fourier f(grid);
    const int m = grid.total();
    VectorXd p2(m);
    for (int k = 0; k < m; ++k) p2[k] = grid.momentum_sq(k);
    MatrixXcd kin = f.unitary().adjoint() * p2.asDiagonal() * f.unitary();
    if (kin.imag().cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, p2.maxCoeff()))
        throw std::runtime_error("assemble: kinetic matrix has unexpected imaginary part");
    MatrixXd h = kin.real();
    h = 0.5 * (h + h.transpose()); // kill rounding asymmetry
    h -= MatrixXd(potential.values.asDiagonal());
    return Hamiltonian(grid, potential, std::move(h));
}

namespace {

GroundState finish_ground_state(const Hamiltonian& h, double e0, double gap, double norm,
                                VectorXd psi_plain) {
    if (gap <= 1e-10 * norm)
        throw std::runtime_error("ground state uniqueness not certified: spectral gap below "
                                 "1e-10 * ||H||");
    const Grid& g = h.grid();
    if (psi_plain.sum() < 0.0) psi_plain = -psi_plain;
    const double resid =
        (h.matrix() * psi_plain - e0 * psi_plain).norm() / std::max(1.0, norm);
    VectorXd psi = psi_plain / std::sqrt(g.weight_x()); // unit weighted norm

    Fourier f(g);
    VectorXcd hat = f.dft(psi.cast<Complex>());
    if (hat.imag().cwiseAbs().maxCoeff() >
        1e-10 * std::max(1.0, hat.real().cwiseAbs().maxCoeff()))
        throw std::runtime_error("ground state transform has unexpected imaginary part");

    return GroundState{g,   e0,  gap, psi, hat.real(), psi.minCoeff(),
                       hat.real().minCoeff(), resid};
}

} // namespace

GroundState ground_state(const Hamiltonian& h) {
    const auto& eig = h.eigensystem();
    return finish_ground_state(h, eig.values[0], eig.values[1] - eig.values[0],
                               h.operator_norm(), eig.vectors.col(0));
}

GroundState ground_state_lanczos(const Hamiltonian& h, int max_iter, double tol) {
    const Grid& g = h.grid();
    const int m = g.total();
    Fourier fr(g);
    VectorXd p2(m);
    for (int k = 0; k < m; ++k) p2[k] = g.momentum_sq(k);
    const VectorXd& v = h.potential().values;
    auto apply = [&](const VectorXd& x) {
        VectorXcd hat = fr.unitary() * x.cast<Complex>();
        hat.array() *= p2.array().cast<Complex>();
        VectorXd kin = (fr.unitary().adjoint() * hat).real();
        return VectorXd(kin - v.cwiseProduct(x));
    };

    max_iter = std::min(max_iter, m);
    std::vector<VectorXd> basis;
    basis.push_back(VectorXd::Constant(m, 1.0 / std::sqrt((double)m)));
    std::vector<double> alpha, beta; // beta[k] couples step k-1 to k

    Eigen::SelfAdjointEigenSolver<MatrixXd> ritz;
    int k = 0;
    for (; k < max_iter; ++k) {
        VectorXd w = apply(basis[k]);
        if (k > 0) w -= beta[k - 1] * basis[k - 1];
        alpha.push_back(basis[k].dot(w));
        w -= alpha[k] * basis[k];
        for (int pass = 0; pass < 2; ++pass) // full reorthogonalization
            for (const auto& q : basis) w -= q.dot(w) * q;
        const double b = w.norm();
        // converged Krylov space or time to test the Ritz residuals
        MatrixXd tri = MatrixXd::Zero(k + 1, k + 1);
        for (int i = 0; i <= k; ++i) {
            tri(i, i) = alpha[i];
            if (i > 0) tri(i, i - 1) = tri(i - 1, i) = beta[i - 1];
        }
        ritz.compute(tri);
        const double scale =
            std::max(std::abs(ritz.eigenvalues()[0]), std::abs(ritz.eigenvalues()[k]));
        if (k >= 2) {
            const double r0 = b * std::abs(ritz.eigenvectors()(k, 0));
            const double r1 = b * std::abs(ritz.eigenvectors()(k, 1));
            if (std::max(r0, r1) <= tol * std::max(1.0, scale)) { ++k; break; }
        }
        if (b <= 1e-14 * std::max(1.0, scale)) { ++k; break; }
        beta.push_back(b);
        basis.push_back(w / b);
    }

    VectorXd psi = VectorXd::Zero(m);
    for (int i = 0; i < (int)alpha.size() && i < (int)basis.size(); ++i)
        psi += ritz.eigenvectors()(i, 0) * basis[i];
    psi.normalize();
    const int last = (int)alpha.size() - 1;
    const double norm_est =
        std::max(std::abs(ritz.eigenvalues()[0]), std::abs(ritz.eigenvalues()[last]));
    return finish_ground_state(h, ritz.eigenvalues()[0],
                               ritz.eigenvalues()[1] - ritz.eigenvalues()[0], norm_est,
                               std::move(psi));
}

MatrixXd semigroup(const Hamiltonian& h, double beta, SemigroupMethod method, int steps) {
    if (beta < 0.0) throw std::invalid_argument("semigroup: beta must be >= 0");
    if (beta == 0.0) return MatrixXd::Identity(h.grid().total(), h.grid().total());
    if (method == SemigroupMethod::Eigen) {
        const auto& eig = h.eigensystem();
        return eig.vectors * (-beta * eig.values.array()).exp().matrix().asDiagonal() *
               eig.vectors.transpose();
    }
    return trotter_product(h.kinetic_matrix(), MatrixXd(h.potential().values.asDiagonal()),
                           beta, steps);
}

MatrixXd trotter_product(const MatrixXd& kinetic, const MatrixXd& potential, double beta,
                         int steps) {
    if (steps < 1) throw std::invalid_argument("trotter_product: steps must be >= 1");
    MatrixXd factor = expm_sym(kinetic, -beta / steps) * expm_sym(potential, beta / steps);
    MatrixXd out = MatrixXd::Identity(factor.rows(), factor.cols());
    MatrixXd base = factor;
    int e = steps;
    while (e > 0) { // binary powering
        if (e & 1) out = out * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return out;
}

MatrixXd momentum_semigroup_nonneg(const Hamiltonian& h, double beta, int squarings) {
    if (beta < 0.0) throw std::invalid_argument("momentum_semigroup_nonneg: beta must be >= 0");
    const Grid& g = h.grid();
    const int m = g.total();
    const double tau = beta / std::pow(2.0, squarings);
    VectorXd diag(m);
    for (int k = 0; k < m; ++k) diag[k] = std::exp(-tau * g.momentum_sq(k));
    MatrixXd conv = h.momentum_convolution();
    // series for e^{tau conv}: all terms nonnegative
    MatrixXd series = MatrixXd::Identity(m, m);
    MatrixXd term = MatrixXd::Identity(m, m);
    for (int k = 1; k < 30; ++k) {
        term = (term * conv) * (tau / k);
        series += term;
        if (term.cwiseAbs().maxCoeff() < 1e-300) break;
    }
    MatrixXd gmat = diag.asDiagonal() * series;
    for (int s = 0; s < squarings; ++s) gmat = gmat * gmat;
    return gmat;
}

DuhamelExpansion duhamel_partial_sum(const MatrixXd& a, const MatrixXd& c, double beta,
                                     int order, int quadrature_points) {
    if (order < 0) throw std::invalid_argument("duhamel: order must be >= 0");
    if (quadrature_points < 2 || quadrature_points % 2 != 0)
        throw std::invalid_argument("duhamel: quadrature_points must be even and >= 2");
    if (beta < 0.0) throw std::invalid_argument("duhamel: beta must be >= 0");
    if (a.rows() != a.cols() || c.rows() != c.cols() || a.rows() != c.rows())
        throw std::invalid_argument("duhamel: matrices must be square and the same size");

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    auto run = [&](int q) {
        const double step = beta / q;
        std::vector<MatrixXd> exps(q + 1);
        for (int i = 0; i <= q; ++i)
            exps[i] = es.eigenvectors() *
                      (-(i * step) * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                      es.eigenvectors().transpose();
        // D_n(t_i) by the trapezoid recursion over the same grid
        std::vector<MatrixXd> prev = exps;
        std::vector<MatrixXd> at_beta{exps[q]};
        for (int n = 1; n <= order; ++n) {
            std::vector<MatrixXd> cur(q + 1, MatrixXd::Zero(a.rows(), a.cols()));
            std::vector<MatrixXd> cprev(q + 1);
            for (int i = 0; i <= q; ++i) cprev[i] = c * prev[i];
            for (int i = 1; i <= q; ++i) {
                MatrixXd acc = 0.5 * (exps[0] * cprev[i] + exps[i] * cprev[0]);
                for (int j = 1; j < i; ++j) acc += exps[j] * cprev[i - j];
                cur[i] = acc * step;
            }
            at_beta.push_back(cur[q]);
            prev.swap(cur);
        }
        return at_beta;
    };

    auto full = run(quadrature_points);
    auto half = run(quadrature_points / 2);
    double est = 0.0;
    for (int n = 0; n <= order; ++n)
        est = std::max(est, (full[n] - half[n]).cwiseAbs().maxCoeff() / 3.0);

    DuhamelExpansion out;
    out.terms = std::move(full);
    out.partial_sum = MatrixXd::Zero(a.rows(), a.cols());
    for (const auto& t : out.terms) out.partial_sum += t;
    out.quadrature_error = est;
    return out;
}

double expectation_position(const GroundState& gs, const TestFunction& f) {
    require_same_grid(gs.grid, f.grid, "expectation_position");
    Complex acc = 0.0;
    for (int j = 0; j < gs.grid.total(); ++j) acc += f.values[j] * gs.psi[j] * gs.psi[j];
    return (acc * gs.grid.weight_x()).real();
}

double expectation_momentum(const GroundState& gs, const TestFunction& f) {
    require_same_grid(gs.grid, f.grid, "expectation_momentum");
    VectorXcd fp = f.momentum_values();
    Complex acc = 0.0;
    for (int k = 0; k < gs.grid.total(); ++k)
        acc += fp[k] * gs.psi_hat[k] * gs.psi_hat[k];
    return (acc * gs.grid.weight_p()).real();
}

VectorXd momentum_distribution(const GroundState& gs) {
    Fourier f(gs.grid);
    VectorXd rho = gs.psi.cwiseProduct(gs.psi);
    VectorXcd hat = f.dft(rho.cast<Complex>());
    return hat.real();
}

TrialState trial_state(const Hamiltonian& h, double beta) {
    if (beta < 0.0) throw std::invalid_argument("trial_state: beta must be >= 0");
    const Grid& g = h.grid();
    const int m = g.total();
    VectorXd omega(m);
    for (int j = 0; j < m; ++j)
        omega[j] = std::pow(M_PI, -0.25 * g.dim) *
                   std::exp(-0.5 * g.position(j).squaredNorm());
    omega /= std::sqrt(omega.squaredNorm() * g.weight_x());

    const auto& eig = h.eigensystem();
    VectorXd amps = eig.vectors.transpose() * omega;
    // stable route: factor out e^{-beta E0}
    VectorXd damped = ((-beta * (eig.values.array() - eig.values[0])).exp()) * amps.array();
    const double shifted_sq = damped.squaredNorm();
    const double z = shifted_sq * g.weight_x() * std::exp(-2.0 * beta * eig.values[0]);
    if (!std::isfinite(z) || z <= 0.0)
        throw std::runtime_error("trial_state: Z_beta over/underflowed; shift the energy or "
                                 "reduce beta");
    VectorXd phi = eig.vectors * damped;
    phi /= std::sqrt(phi.squaredNorm() * g.weight_x());
    if (phi.sum() < 0.0) phi = -phi;
    return TrialState{g, beta, std::move(omega), std::move(phi), z};
}

double finite_beta_expectation(const Hamiltonian& h, const MatrixXd& observable, double beta) {
    if (observable.rows() != h.grid().total() || observable.cols() != h.grid().total())
        throw std::invalid_argument("finite_beta_expectation: observable shape mismatch");
    TrialState ts = trial_state(h, beta);
    return ts.phi.dot(observable * ts.phi) * h.grid().weight_x();
}

} // namespace griffin
