#include "griffin/potential.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace griffin {

double yukawa_hat(double p_abs, double mass, int cutoff, int dim) {
    if (mass < 0.0) throw std::invalid_argument("yukawa_hat: mass must be >= 0");
    if (cutoff < 1) throw std::invalid_argument("yukawa_hat: cutoff index must be >= 1");
    const double a = 2.0 * std::pow(2.0, 0.5 * dim - 2.0);
    const double n = cutoff;
    if (p_abs <= 1.0 / n) return a / (1.0 / (n * n) + mass * mass);
    if (p_abs <= n) return a / (p_abs * p_abs + mass * mass);
    return 0.0;
}

double yukawa_hat_limit(double p_abs, double mass, int dim) {
    const double a = 2.0 * std::pow(2.0, 0.5 * dim - 2.0);
    return a / (p_abs * p_abs + mass * mass);
}

namespace {

VectorXd hat_on_nodes(const PotentialKind& kind, const Grid& grid) {
    VectorXd hat(grid.total());
    if (const auto* y = std::get_if<YukawaCutoff>(&kind)) {
        for (int k = 0; k < grid.total(); ++k)
            hat[k] = yukawa_hat(std::sqrt(grid.momentum_sq(k)), y->mass, y->cutoff, grid.dim);
    } else if (const auto* g = std::get_if<GaussianWell>(&kind)) {
        if (!(g->depth > 0.0)) throw std::invalid_argument("GaussianWell: depth must be > 0");
        if (!(g->width > 0.0)) throw std::invalid_argument("GaussianWell: width must be > 0");
        for (int k = 0; k < grid.total(); ++k)
            hat[k] = g->depth * std::exp(-g->width * g->width * grid.momentum_sq(k) / 4.0);
    } else {
        const auto& c = std::get<CustomFourier>(kind);
        if (c.hat.size() != grid.total())
            throw std::invalid_argument("CustomFourier: hat length does not match grid");
        hat = c.hat;
    }
    return hat;
}

void validate_hat(const VectorXd& hat, const Grid& grid) {
    for (int k = 0; k < grid.total(); ++k) {
        if (hat[k] < 0.0)
            throw std::invalid_argument(
                "potential violates condition (B)(ii): Fourier coefficient negative at a node");
        if (hat[grid.reflect(k)] != hat[k])
            throw std::invalid_argument(
                "potential violates condition (B)(ii): Fourier data not even");
    }
    std::array<int, 3> zero{0, 0, 0};
    const int k0 = grid.flatten(zero);
    if (!(hat[k0] > 0.0))
        throw std::invalid_argument(
            "potential violates condition (B)(ii): Fourier support does not contain 0");
    for (int a = 0; a < grid.dim; ++a) {
        std::array<int, 3> c{0, 0, 0};
        c[a] = 1;
        if (!(hat[grid.flatten(c)] > 0.0))
            throw std::invalid_argument("potential violates condition (B)(ii): Fourier support "
                                        "misses the smallest nonzero momenta");
    }
}

VectorXd realize_from_hat(const VectorXd& hat, const Grid& grid, const Fourier& f) {
    VectorXcd v = f.idft(hat.cast<Complex>());
    if (v.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, hat.cwiseAbs().maxCoeff()))
        throw std::runtime_error("realized potential has a non-negligible imaginary part");
    return v.real();
}

Potential build(const PotentialKind& kind, const Grid& grid, bool validate) {
    VectorXd hat = hat_on_nodes(kind, grid);
    if (validate) validate_hat(hat, grid);
    Fourier f(grid);
    return Potential{kind, grid, hat, realize_from_hat(hat, grid, f)};
}

} // namespace

Potential realize_potential(const PotentialKind& kind, const Grid& grid) {
    return build(kind, grid, true);
}

Potential realize_potential_unchecked(const PotentialKind& kind, const Grid& grid) {
    return build(kind, grid, false);
}

VectorXcd TestFunction::momentum_values() const {
    const double scale = std::pow(2.0 * M_PI, -0.5 * grid.dim) * grid.weight_p();
    VectorXcd out(grid.total());
    for (int k = 0; k < grid.total(); ++k) {
        VectorXd pk = grid.momentum(k);
        Complex acc = 0.0;
        for (int q = 0; q < grid.total(); ++q) {
            if (hat[q] == 0.0) continue;
            double phase = grid.momentum(q).dot(pk);
            acc += hat[q] * Complex(std::cos(phase), std::sin(phase));
        }
        out[k] = scale * acc;
    }
    return out;
}

double TestFunction::hat_l1() const { return hat.cwiseAbs().sum() * grid.weight_p(); }

TestFunction TestFunction::normalized() const {
    const double s = hat_l1();
    if (s == 0.0) return *this;
    TestFunction t = *this;
    t.hat /= s;
    t.values /= s;
    return t;
}

TestFunction make_test_function(FunctionClass cls, const VectorXd& hat, const Grid& grid) {
    if (hat.size() != grid.total())
        throw std::invalid_argument("test function hat length does not match grid");
    for (int k = 0; k < grid.total(); ++k) {
        if (hat[k] < 0.0)
            throw std::invalid_argument("not in class A: negative Fourier coefficient");
        if (cls == FunctionClass::AEven && hat[grid.reflect(k)] != hat[k])
            throw std::invalid_argument("not in class A_e: Fourier data not even");
    }
    Fourier f(grid);
    VectorXcd values = f.idft(hat.cast<Complex>());
    return TestFunction{cls, grid, hat, std::move(values)};
}

std::vector<TestFunction> sample_test_functions(FunctionClass cls, int count,
                                                std::uint64_t seed, const Grid& grid) {
    if (count < 1) throw std::invalid_argument("sample count must be >= 1");
    std::vector<TestFunction> out;
    out.reserve(count);

    const int m = grid.total();
    std::array<int, 3> zero{0, 0, 0};
    const int k0 = grid.flatten(zero);

    // sample 0: constant function, hat = delta at p = 0
    VectorXd hat = VectorXd::Zero(m);
    hat[k0] = 1.0;
    out.push_back(make_test_function(cls, hat, grid));
    if (count == 1) return out;

    // sample 1: flat hat, the realized function is a near-delta
    out.push_back(make_test_function(cls, VectorXd::Ones(m), grid));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> node(0, m - 1);

    VectorXd base(m);
    for (int k = 0; k < m; ++k) base[k] = std::exp(-grid.momentum_sq(k));

    while ((int)out.size() < count) {
        const int style = (int)out.size() % 3;
        VectorXd h = VectorXd::Zero(m);
        if (style == 0) {
            for (int k = 0; k < m; ++k) h[k] = uni(rng);
        } else if (style == 1) {
            VectorXd ctr(grid.dim);
            for (int a = 0; a < grid.dim; ++a)
                ctr[a] = (uni(rng) * 1.6 - 0.8) * grid.half() * grid.dp();
            const double wid = 0.2 + 2.8 * uni(rng);
            for (int k = 0; k < m; ++k) {
                VectorXd pk = grid.momentum(k);
                h[k] = std::exp(-(pk - ctr).squaredNorm() / (2.0 * wid * wid)) +
                       std::exp(-(pk + ctr).squaredNorm() / (2.0 * wid * wid));
            }
            h += 0.05 * base;
        } else {
            for (int s = 0; s < 4; ++s) h[node(rng)] += uni(rng);
            h += 0.05 * base;
        }
        if (cls == FunctionClass::AEven) {
            VectorXd sym(m);
            for (int k = 0; k < m; ++k) sym[k] = 0.5 * (h[k] + h[grid.reflect(k)]);
            h = sym;
        }
        out.push_back(make_test_function(cls, h, grid));
    }
    return out;
}

} // namespace griffin
