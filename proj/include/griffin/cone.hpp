#pragma once

#include "griffin/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace griffin {

// Finite-dimensional self-dual cone calculus.  Two cones are supported:
// the nonnegative orthant in R^N (discrete analogue of the cone of a.e.
// nonnegative functions) and the cone of positive semidefinite matrices
// inside the Hilbert-Schmidt space of n x n matrices.

enum class ConeKind { Orthant, PsdHilbertSchmidt };

struct ConeDescriptor {
    ConeKind kind;
    int ambient_dim;              // vector length N, or matrix side n
    double tol = 1e-10;           // membership tolerance

    ConeDescriptor(ConeKind k, int dim, double tol_ = 1e-10);

    static ConeDescriptor orthant(int n, double tol = 1e-10) {
        return {ConeKind::Orthant, n, tol};
    }
    static ConeDescriptor psd(int side, double tol = 1e-10) {
        return {ConeKind::PsdHilbertSchmidt, side, tol};
    }
};

/// A vector (Orthant) or Hermitian matrix (PsdHilbertSchmidt) measured
/// against a cone.  Orthant data is stored as an N x 1 column.
struct ConeElement {
    MatrixXcd data;
    ConeDescriptor cone;

    ConeElement(VectorXcd v, ConeDescriptor c);
    ConeElement(MatrixXcd m, ConeDescriptor c);

    VectorXcd vec() const { return data.col(0); }
    /// Max-entry norm, used to scale tolerances.
    double max_norm() const;
    /// Effective absolute tolerance: tol scaled by max-norm when that exceeds 1.
    double tol_eff() const;
};

/// A linear map measured against a cone: an N x N matrix on the orthant,
/// or a superoperator on n x n matrices.  Superoperators are stored either
/// as an n^2 x n^2 matrix acting on row-major packed vectors, or in the
/// sandwich form xi -> A* xi A with the factor A kept.
struct ConeMap {
    MatrixXcd mat;
    ConeDescriptor cone;
    std::optional<MatrixXcd> sandwich_factor;

    ConeMap(MatrixXcd m, ConeDescriptor c);
    static ConeMap sandwich(MatrixXcd a, ConeDescriptor c);

    bool is_sandwich() const { return sandwich_factor.has_value(); }
    /// Apply to a PSD-cone element (matrix form).
    MatrixXcd apply(const MatrixXcd& xi) const;
};

bool is_in_cone(const ConeElement& x);

/// Orthogonal decomposition x = x_plus - x_minus with both parts in the
/// cone and <x_plus|x_minus> = 0.  Requires a real vector (Orthant) or a
/// Hermitian matrix (PSD); entrywise split resp. spectral split with
/// eigenvalues clamped at zero.
std::pair<ConeElement, ConeElement> decompose(const ConeElement& x);

bool is_strictly_positive(const ConeElement& x);

/// Deterministic probe vectors for PSD-cone certificates: all standard
/// basis vectors, pairwise sums, i-weighted pairwise sums, plus
/// `random_count` seeded random unit vectors.
std::vector<VectorXcd> psd_probe_vectors(int side, int random_count = 64,
                                         unsigned long long seed = 20240901ULL);

/// Orthant: exact (entrywise >= -tol).  PSD sandwich form: always true.
/// PSD general superoperator: probe-set certificate -- M(|v><v|) must stay
/// PSD for every probe v; a necessary condition only, not a proof.
bool preserves_positivity(const ConeMap& m);

/// Orthant: entrywise > tol.  PSD: probe outputs positive definite
/// (same one-sided caveat as preserves_positivity).
bool improves_positivity(const ConeMap& m);

/// Orthant cone only.  True iff for every basis pair (i, j) some power
/// M^k, k in {0, ..., N-1}, has a positive (i, j) entry; computed by
/// boolean reachability on the support digraph with self-loops added
/// (the power k = 0 is allowed).  Throws if M has negative entries.
bool is_ergodic(const ConeMap& m);

/// Row-major isometry between C^{n^2} and the Hilbert-Schmidt space of
/// n x n matrices; rank-one u (x) conj(v) packs to the outer product
/// u v^adj.  hs_unpack is its inverse.
MatrixXcd hs_pack(const VectorXcd& v);
VectorXcd hs_unpack(const MatrixXcd& m);

} // namespace griffin
