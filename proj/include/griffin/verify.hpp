#pragma once

#include "griffin/doubled.hpp"
#include "griffin/hamiltonian.hpp"
#include "griffin/report.hpp"

#include <cstdint>

namespace griffin {

/// A cutoff family H_n = -Laplacian - V_n, n in [n_lo, n_hi], together
/// with the limit operator built from the untruncated Fourier profile
/// restricted to the grid momenta.  Family hats are nodewise nondecreasing
/// in n.
struct ModelFamily {
    Grid grid;
    double mass = 1.0;
    int n_lo = 2;
    int n_hi = 8;
    std::vector<Hamiltonian> members;
    Hamiltonian limit;
};

ModelFamily make_yukawa_family(const Grid& grid, double mass, int n_lo, int n_hi);

struct VerifyOptions {
    int sample_size = 200;
    int pair_count = 100;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    double strict_margin = 1e-8;  // floor for strict-inequality clauses
    double conv_tol = 1e-4;       // limit-proximity tolerance for cutoff families
};

/// Ground-state positivity: strict positivity of psi and psi_hat plus the
/// uniqueness gap, reported as margins.
VerificationReport verify_ground_positivity(const Hamiltonian& h, const VerifyOptions& opt);

/// First inequality: <f> >= 0 and <f(-i grad)> >= 0 over seeded samples of
/// class A, with the strict clause checked on Fourier-l1-normalized
/// nonzero samples.
std::vector<VerificationReport> verify_first_inequality(const Hamiltonian& h,
                                                        const VerifyOptions& opt);

/// Second inequality: cov(f, g) >= 0, cov of the momentum versions >= 0,
/// and the mixed covariance <= 0, over seeded pairs from class A_e.
std::vector<VerificationReport> verify_second_inequality(const Hamiltonian& h,
                                                         const VerifyOptions& opt);

/// Cutoff monotonicity: <f>_n nondecreasing, momentum version
/// nonincreasing, and the final member within conv_tol of the limit model.
/// A nonempty beta_schedule adds the imaginary-time oracle: the deviation
/// of the trial-state expectation from <f>_n must shrink along the
/// schedule and the final deviation is recorded.
VerificationReport verify_monotone_in_n(const ModelFamily& family, const TestFunction& f,
                                        const VerifyOptions& opt,
                                        const std::vector<double>& beta_schedule = {5.0, 10.0,
                                                                                    20.0,
                                                                                    40.0});

/// Potential ordering: with hat(strong) >= hat(weak) nodewise,
/// <f>_strong >= <f>_weak and the momentum expectations reversed; includes
/// the momentum-distribution ordering.  Throws "not comparable" when the
/// hats are not ordered.
std::vector<VerificationReport> verify_potential_order(const Hamiltonian& strong,
                                                       const Hamiltonian& weak,
                                                       const VerifyOptions& opt);

/// Momentum-distribution suite: positivity at all nodes, maximum at zero
/// with value (2pi)^{-d/2}, the wrapped convolution inequality over all
/// node pairs, and nodewise monotonicity across the family.
std::vector<VerificationReport> verify_momentum_theorems(const ModelFamily& family,
                                                         const VerifyOptions& opt);

/// Random-instance suites for the cone-level theorems: Hilbert-cone
/// axioms for both cones, semigroup positivity e^{-beta(A-B)}, the
/// Duhamel ordering e^{-beta(A-C)} >= e^{-beta A}, the
/// Perron-Frobenius-Faris equivalence on ergodic and reducible instances,
/// and ergodicity implies strict positivity.
std::vector<VerificationReport> verify_cone_theory(const std::vector<int>& sizes,
                                                   int instances_per_size,
                                                   std::uint64_t seed, double tol);

} // namespace griffin
