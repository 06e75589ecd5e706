#pragma once

#include "griffin/potential.hpp"

#include <memory>
#include <mutex>

namespace griffin {

struct Eigensystem {
    VectorXd values;  // ascending
    MatrixXd vectors; // orthonormal columns
};

/// Lattice Schrodinger operator H = -Laplacian - V in the position basis,
/// a real symmetric total() x total() matrix.  The kinetic part is the
/// momentum multiplication operator p^2 conjugated back by the unitary
/// DFT; the momentum representation of the whole operator is
/// diag(p^2) - C with C the nonnegative circular convolution by V^.
class Hamiltonian {
  public:
    Hamiltonian(Grid grid, Potential potential, MatrixXd matrix);

    const Grid& grid() const { return grid_; }
    const Potential& potential() const { return potential_; }
    const MatrixXd& matrix() const { return mat_; }

    /// Cached dense eigendecomposition (computed once, thread-safe).
    const Eigensystem& eigensystem() const;
    /// Spectral norm, max |eigenvalue|.
    double operator_norm() const;

    /// Momentum representation built directly from the potential's Fourier
    /// data: diag(p^2) minus the wrapped convolution matrix
    /// (2pi)^{-d/2} dp^d V^(p - p'); equals F H F^{-1} to rounding.
    MatrixXd momentum_matrix() const;
    /// The convolution part alone (entrywise nonnegative).
    MatrixXd momentum_convolution() const;
    /// Kinetic part in the position basis.
    MatrixXd kinetic_matrix() const;

  private:
    Grid grid_;
    Potential potential_;
    MatrixXd mat_;
    struct Cache {
        std::once_flag once;
        Eigensystem eig;
    };
    std::shared_ptr<Cache> cache_;
};

Hamiltonian assemble(const Grid& grid, const Potential& potential);

/// Lowest eigenpair with the sign fixed so the entry sum of psi is
/// positive.  psi is normalized in the quadrature-weighted norm
/// (sum psi^2 dx^d = 1) and psi_hat = dft(psi).  Strict positivity of
/// both is recorded as margins, never silently repaired.
struct GroundState {
    Grid grid;
    double energy;
    double gap;
    VectorXd psi;
    VectorXd psi_hat;
    double min_psi;      // min entry of psi
    double min_psi_hat;  // min entry of psi_hat
    double residual;     // ||H psi - E psi|| / ||H||

    bool positive(double tol = 1e-10) const { return min_psi > tol && min_psi_hat > tol; }
};

/// Throws "uniqueness not certified" when the spectral gap falls below
/// 1e-10 * ||H||.
GroundState ground_state(const Hamiltonian& h);

/// Matrix-free alternative for the largest grids: Lanczos with full
/// reorthogonalization on the operator v -> F^adj diag(p^2) F v - V.v,
/// never touching the dense matrix.  Same contract as ground_state;
/// cross-validated against the dense route on small instances.
GroundState ground_state_lanczos(const Hamiltonian& h, int max_iter = 300,
                                 double tol = 1e-12);

enum class SemigroupMethod { Eigen, Trotter };

/// e^{-beta H} via the dense eigendecomposition (method Eigen) or the
/// split product (e^{-beta K/steps} e^{+beta V/steps})^steps.
MatrixXd semigroup(const Hamiltonian& h, double beta,
                   SemigroupMethod method = SemigroupMethod::Eigen, int steps = 1);

/// Split product for explicit parts: (e^{-beta A/steps} e^{+beta B/steps})^steps
/// with A, B real symmetric.  First-order error O(1/steps).
MatrixXd trotter_product(const MatrixXd& kinetic, const MatrixXd& potential, double beta,
                         int steps);

/// e^{-beta(H^ momentum rep)} computed as a repeatedly squared product of
/// entrywise-nonnegative factors; every entry is nonnegative by
/// construction, which makes it a floating-point-safe witness for strict
/// positivity.  Accuracy is O(beta^2/2^squarings), certificate use only.
MatrixXd momentum_semigroup_nonneg(const Hamiltonian& h, double beta, int squarings = 30);

struct DuhamelExpansion {
    MatrixXd partial_sum;          // sum of terms[0..K]
    std::vector<MatrixXd> terms;   // D_0 = e^{-beta A}, then the iterated integrals
    double quadrature_error;       // Richardson estimate (half vs full points)
};

/// Terms of the expansion e^{-beta(A-C)} = sum_n D_n(beta), with
/// D_n(t) = integral_0^t e^{-sA} C D_{n-1}(t-s) ds evaluated by composite
/// trapezoid on a uniform grid.  A must be real symmetric.
DuhamelExpansion duhamel_partial_sum(const MatrixXd& a, const MatrixXd& c, double beta,
                                     int order, int quadrature_points);

double expectation_position(const GroundState& gs, const TestFunction& f);
double expectation_momentum(const GroundState& gs, const TestFunction& f);

/// Fourier transform of the ground-state density |psi|^2 on the momentum
/// nodes; real by evenness, with rho^(0) = (2pi)^{-d/2} exactly up to
/// rounding.
VectorXd momentum_distribution(const GroundState& gs);

/// Gaussian seed state and its imaginary-time evolution
/// phi_beta = e^{-beta H} Omega / sqrt(Z_beta), Z_beta = ||e^{-beta H} Omega||^2.
struct TrialState {
    Grid grid;
    double beta;
    VectorXd omega; // unit weighted norm
    VectorXd phi;   // unit weighted norm
    double z;       // Z_beta
};

TrialState trial_state(const Hamiltonian& h, double beta);

/// <phi_beta | A phi_beta> in the weighted inner product; converges to the
/// ground-state expectation as beta grows.
double finite_beta_expectation(const Hamiltonian& h, const MatrixXd& observable, double beta);

/// Real-symmetric matrix exponential e^{t M} via eigendecomposition.
MatrixXd expm_sym(const MatrixXd& m, double t);

} // namespace griffin
