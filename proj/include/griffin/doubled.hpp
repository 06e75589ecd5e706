#pragma once

#include "griffin/cone.hpp"
#include "griffin/hamiltonian.hpp"
#include "griffin/report.hpp"

namespace griffin {

// Doubled-space machinery: the extended operator H (x) 1 + 1 (x) H on the
// squared grid, the (X1, X2) = ((x2-x1)/2, (x2+x1)/2) change of variables
// realized through the mod-n inverse of 2 on lattice indices, and the
// identification of doubled vectors with Hilbert-Schmidt matrices by the
// row-major pack.  Positivity statements live in the PSD cone of that
// identification after the coordinate change.

enum class ExtendSide { Left, Right, Sym };
enum class DoublingSign { Plus, Minus };

/// Permutation on the doubled grid sending the (x1, x2) node to the
/// (X1, X2) node; perm[i] is the image of flat doubled index i.  Exact for
/// odd n because 2 is invertible mod n.  Throws for even n.
std::vector<int> coordinate_change(const Grid& grid);

/// Kronecker forms A (x) 1, 1 (x) A, or their sum on the doubled space.
MatrixXcd extended_operator(const MatrixXcd& a, ExtendSide side);

class DoubledSpace {
  public:
    explicit DoubledSpace(const Grid& grid);

    const Grid& grid() const { return grid_; }
    const std::vector<int>& perm() const { return perm_; }

    /// Pack an X-coordinate doubled vector into the HS matrix.
    MatrixXcd pack(const VectorXcd& w) const { return hs_pack(w); }
    /// Conjugate a doubled-space map w -> (E1 (x) E2) w by the coordinate
    /// change and apply it to a packed element: the superoperator
    /// xi -> pack(P (E1 (x) E2) P^{-1} unpack(xi)).
    MatrixXcd apply_extended(const MatrixXd& e1, const MatrixXd& e2,
                             const MatrixXcd& xi) const;

    /// psi (x) psi carried to X coordinates and packed.
    MatrixXd packed_ground_pair(const VectorXd& psi) const;

    /// Multiplication operator f(x1) +/- f(x2) as a diagonal over the
    /// X-coordinate doubled grid (exact lattice identity
    /// f(x1) + f(x2) = f(X2-X1) + f(X1+X2)).
    VectorXd doubled_multiplication_diagonal(const VectorXd& f_values,
                                             DoublingSign sign) const;
    /// Its constructive form sum_p 2 c f^(p) cos(p X1) cos(p X2) (Plus)
    /// resp. sum_p 2 c f^(p) sin(p X1) sin(p X2) (Minus), as a diagonal.
    VectorXd multiplication_decomposition_diagonal(const VectorXd& hat,
                                                   DoublingSign sign) const;

    /// Momentum-side operators built in the momentum basis of the X grid:
    /// the symbol f((Q2-Q1)/2) +/- f((Q2+Q1)/2) over doubled momentum
    /// labels, evaluated by the trig interpolant of f at real half-sums.
    MatrixXd momentum_doubling_symbol(const TestFunction& f, DoublingSign sign) const;
    /// The cos/sin half-shift decomposition of the same symbol.
    MatrixXd momentum_decomposition_symbol(const TestFunction& f, DoublingSign sign) const;

    /// Apply the half-shift sandwich decomposition to a packed element:
    /// Plus:  sum_p 2 c f^(p) C_p xi C_p     (C_p = cos(p.(-i grad_X)/2))
    /// Minus: -sum_p 2 c f^(p) S_p xi S_p    (S_p = sin(p.(-i grad_X)/2))
    MatrixXcd apply_momentum_decomposition(const TestFunction& f, DoublingSign sign,
                                           const MatrixXcd& xi) const;

  private:
    Grid grid_;
    std::vector<int> perm_;
    Fourier fourier_;
};

/// Lemma-level check: f (x) 1 +/- 1 (x) f for even nonnegative Fourier
/// data is positivity preserving w.r.t. the PSD cone; certified by the
/// constructive decomposition (authoritative) and by PSD probes.
VerificationReport check_potential_doubling(const TestFunction& f, DoublingSign sign,
                                            double tol = 1e-9);
VerificationReport check_potential_doubling(const Potential& v, DoublingSign sign,
                                            double tol = 1e-9);

/// f(-i grad) (x) 1 + 1 (x) f(-i grad) is positivity preserving and the
/// minus combination is positivity reversing, via the half-momentum-shift
/// decompositions.
VerificationReport check_momentum_doubling(const TestFunction& f, DoublingSign sign,
                                           double tol = 1e-9);

/// Semigroup positivity on the doubled space: e^{-beta HH} keeps packed
/// PSD probes PSD for beta in `betas`; the packed ground pair is PSD (and
/// rank one before the coordinate change); e^{-beta HH_n} dominates
/// e^{-beta HH_m} for n > m on probes.
struct ExtendedSemigroupResult {
    VerificationReport probes;       // (a) PSD preservation
    VerificationReport ground_pair;  // (b) psi (x) psi positivity
    VerificationReport ordering;     // (c) cutoff monotonicity on probes
};

ExtendedSemigroupResult extended_semigroup_positivity(const Hamiltonian& h_coarse,
                                                      const Hamiltonian& h_fine,
                                                      const std::vector<double>& betas,
                                                      double tol = 1e-9);

} // namespace griffin
