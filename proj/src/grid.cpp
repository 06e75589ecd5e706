#include "griffin/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace griffin {

Grid::Grid(int dim_, int n_, double half_len_)
    : dim(dim_), n(n_), half_len(half_len_) {
    if (dim < 1 || dim > 3)
        throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("grid requires an odd number of points per axis (n >= 3)");
    if (!(half_len > 0.0))
        throw std::invalid_argument("grid half-length must be positive");
    total_ = 1;
    for (int a = 0; a < dim; ++a) total_ *= n;
}

double Grid::weight_x() const { return std::pow(dx(), dim); }
double Grid::weight_p() const { return std::pow(dp(), dim); }

std::array<int, 3> Grid::digits(int flat) const {
    std::array<int, 3> c{0, 0, 0};
    for (int a = dim - 1; a >= 0; --a) {
        c[a] = flat % n - half();
        flat /= n;
    }
    return c;
}

int Grid::flatten(const std::array<int, 3>& c) const {
    int flat = 0;
    for (int a = 0; a < dim; ++a) flat = flat * n + (c[a] + half());
    return flat;
}

int Grid::wrap_axis(int c) const {
    int m = c % n;
    if (m > half()) m -= n;
    if (m < -half()) m += n;
    return m;
}

VectorXd Grid::position(int flat) const {
    auto c = digits(flat);
    VectorXd x(dim);
    for (int a = 0; a < dim; ++a) x[a] = c[a] * dx();
    return x;
}

VectorXd Grid::momentum(int flat) const {
    auto c = digits(flat);
    VectorXd p(dim);
    for (int a = 0; a < dim; ++a) p[a] = c[a] * dp();
    return p;
}

double Grid::momentum_sq(int flat) const {
    auto c = digits(flat);
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += c[a] * (double)c[a];
    return s * dp() * dp();
}

int Grid::reflect(int flat) const {
    auto c = digits(flat);
    for (int a = 0; a < dim; ++a) c[a] = -c[a];
    return flatten(c);
}

int Grid::wrap_diff(int a, int b) const {
    auto ca = digits(a), cb = digits(b);
    std::array<int, 3> c{0, 0, 0};
    for (int ax = 0; ax < dim; ++ax) c[ax] = wrap_axis(ca[ax] - cb[ax]);
    return flatten(c);
}

int Grid::wrap_sum(int a, int b) const {
    auto ca = digits(a), cb = digits(b);
    std::array<int, 3> c{0, 0, 0};
    for (int ax = 0; ax < dim; ++ax) c[ax] = wrap_axis(ca[ax] + cb[ax]);
    return flatten(c);
}

Fourier::Fourier(const Grid& grid) : grid_(grid) {
    const int m = grid_.total();
    unitary_.resize(m, m);
    const double norm = std::pow(grid_.n, -0.5 * grid_.dim);
    for (int k = 0; k < m; ++k) {
        auto ck = grid_.digits(k);
        for (int j = 0; j < m; ++j) {
            auto cj = grid_.digits(j);
            long prod = 0;
            for (int a = 0; a < grid_.dim; ++a) prod += (long)ck[a] * cj[a];
            // p_k . x_j = (2pi/n) * sum_a ck_a * cj_a
            double phase = -2.0 * M_PI * (double)prod / grid_.n;
            unitary_(k, j) = norm * Complex(std::cos(phase), std::sin(phase));
        }
    }
    // dft = (2pi)^{-d/2} dx^d sum_j ... = scale_fwd * unitary
    scale_fwd_ = std::pow(2.0 * M_PI, -0.5 * grid_.dim) * grid_.weight_x() *
                 std::pow(grid_.n, 0.5 * grid_.dim);
}

VectorXcd Fourier::dft(const VectorXcd& f) const {
    if (f.size() != grid_.total())
        throw std::invalid_argument("dft: vector length does not match grid");
    return scale_fwd_ * (unitary_ * f);
}

VectorXcd Fourier::idft(const VectorXcd& g) const {
    if (g.size() != grid_.total())
        throw std::invalid_argument("idft: vector length does not match grid");
    return (1.0 / scale_fwd_) * (unitary_.adjoint() * g);
}

Complex Fourier::inner_x(const Grid& g, const VectorXcd& a, const VectorXcd& b) {
    return a.dot(b) * g.weight_x();
}

Complex Fourier::inner_p(const Grid& g, const VectorXcd& a, const VectorXcd& b) {
    return a.dot(b) * g.weight_p();
}

} // namespace griffin
