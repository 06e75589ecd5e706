#pragma once

#include "griffin/grid.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace griffin {

// Potentials are specified by their Fourier coefficients on the momentum
// nodes and realized on the position nodes.  Admissible potentials satisfy
// the regularity condition (B): nonnegative, even Fourier data supported
// on a neighborhood of zero, nondecreasing in the cutoff index.

struct YukawaCutoff {
    double mass;  // m >= 0
    int cutoff;   // n >= 1
};

struct GaussianWell {
    double depth; // a > 0
    double width; // w > 0
};

struct CustomFourier {
    VectorXd hat; // nonnegative values on momentum nodes
};

using PotentialKind = std::variant<YukawaCutoff, GaussianWell, CustomFourier>;

struct Potential {
    PotentialKind kind;
    Grid grid;
    VectorXd hat;    // V^ on momentum nodes
    VectorXd values; // V on position nodes (real; imaginary residue dropped)
};

/// Yukawa cutoff Fourier profile: a flat cap 2*2^{d/2-2}/(n^{-2}+m^2) for
/// |p| <= 1/n, the plain 2*2^{d/2-2}/(p^2+m^2) for 1/n < |p| <= n, zero
/// beyond |p| = n.  Nondecreasing in the cutoff index n at every p.
double yukawa_hat(double p_abs, double mass, int cutoff, int dim);

/// Untruncated profile 2*2^{d/2-2}/(p^2+m^2), the n -> infinity limit of
/// yukawa_hat on any fixed momentum window.
double yukawa_hat_limit(double p_abs, double mass, int dim);

/// Build a Potential and enforce the condition-(B) invariants on its
/// Fourier data; throws naming the violated clause.
Potential realize_potential(const PotentialKind& kind, const Grid& grid);

/// Same construction with validation skipped, for deliberately invalid
/// inputs in negative tests.
Potential realize_potential_unchecked(const PotentialKind& kind, const Grid& grid);

enum class FunctionClass { A, AEven };

/// Test function with nonnegative Fourier data (class A); class A_even
/// additionally has even data and realizes to a real, even grid function.
struct TestFunction {
    FunctionClass cls;
    Grid grid;
    VectorXd hat;
    VectorXcd values; // realized on position nodes

    /// Trig-interpolant evaluation at the momentum nodes, the diagonal of
    /// f(-i grad) in the momentum basis.
    VectorXcd momentum_values() const;
    /// Fourier l1 norm with quadrature weight, sum |hat| dp^d.
    double hat_l1() const;
    TestFunction normalized() const;
};

TestFunction make_test_function(FunctionClass cls, const VectorXd& hat, const Grid& grid);

/// Seed-deterministic sample of class members.  The first two samples are
/// the constant function (Fourier delta at zero) and the flat-hat
/// near-delta function; the rest mix dense, bump-shaped and sparse
/// nonnegative Fourier data, each with a small smooth component near zero.
std::vector<TestFunction> sample_test_functions(FunctionClass cls, int count,
                                                std::uint64_t seed, const Grid& grid);

} // namespace griffin
