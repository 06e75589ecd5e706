#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace griffin {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Eigen::VectorXi;
using Complex = std::complex<double>;

/// Periodic d-dimensional grid on the box [-L, L)^d with an odd number of
/// points per axis.  Nodes sit at integer multiples of the spacing,
/// x_c = c * dx with c in {-(n-1)/2, ..., (n-1)/2}, so the node set is
/// symmetric under x -> -x and contains the origin.  Momentum nodes are
/// p_c = c * dp with dp = pi/L; both lattices wrap with period n.
struct Grid {
    int dim;         // 1, 2 or 3
    int n;           // points per axis, odd
    double half_len; // L

    Grid(int dim_, int n_, double half_len_);

    int total() const { return total_; }
    int half() const { return (n - 1) / 2; }
    double dx() const { return 2.0 * half_len / n; }
    double dp() const { return M_PI / half_len; }
    double weight_x() const; // dx^dim, position quadrature weight
    double weight_p() const; // dp^dim, momentum quadrature weight

    /// Centered per-axis digits of a flat index, each in [-(n-1)/2, (n-1)/2].
    std::array<int, 3> digits(int flat) const;
    int flatten(const std::array<int, 3>& c) const;
    /// Wrap a per-axis integer offset into the centered window.
    int wrap_axis(int c) const;

    VectorXd position(int flat) const;
    VectorXd momentum(int flat) const;
    double momentum_sq(int flat) const;

    /// Flat index of the reflected node (-x, resp. -p).
    int reflect(int flat) const;
    /// Flat index of the componentwise-wrapped difference/sum of two nodes.
    int wrap_diff(int a, int b) const;
    int wrap_sum(int a, int b) const;

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && half_len == o.half_len;
    }

  private:
    int total_;
};

/// Discrete Fourier transform on a Grid, in the continuum-emulating
/// normalization: (dft f)(p) = (2pi)^{-d/2} dx^d sum_x e^{-ip.x} f(x) and
/// (idft g)(x) = (2pi)^{-d/2} dp^d sum_p e^{+ip.x} g(p).  These are exact
/// inverses of each other and unitary between the quadrature-weighted
/// spaces (Parseval with weights dx^d and dp^d).
class Fourier {
  public:
    explicit Fourier(const Grid& grid);

    const Grid& grid() const { return grid_; }
    /// Plain unitary DFT matrix (row k, column j) = n^{-d/2} e^{-i p_k . x_j}.
    const MatrixXcd& unitary() const { return unitary_; }

    VectorXcd dft(const VectorXcd& f) const;
    VectorXcd idft(const VectorXcd& g) const;

    /// Weighted inner product <f|g> = sum conj(f) g * dx^d.
    static Complex inner_x(const Grid& g, const VectorXcd& a, const VectorXcd& b);
    static Complex inner_p(const Grid& g, const VectorXcd& a, const VectorXcd& b);

  private:
    Grid grid_;
    MatrixXcd unitary_;
    double scale_fwd_; // dft = scale_fwd * unitary * f
};

} // namespace griffin
