#include "griffin/cone.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

namespace griffin {

namespace {

void require_hermitian(const MatrixXcd& m, double tol, const char* what) {
    double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol)
        throw std::invalid_argument(std::string(what) +
                                    ": matrix is not Hermitian within tolerance");
}

VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

} // namespace

ConeDescriptor::ConeDescriptor(ConeKind k, int dim, double tol_)
    : kind(k), ambient_dim(dim), tol(tol_) {
    if (ambient_dim < 1) throw std::invalid_argument("cone ambient dimension must be >= 1");
    if (tol < 0.0) throw std::invalid_argument("cone membership tolerance must be >= 0");
}

ConeElement::ConeElement(VectorXcd v, ConeDescriptor c) : data(std::move(v)), cone(c) {
    if (cone.kind != ConeKind::Orthant)
        throw std::invalid_argument("vector element requires an Orthant cone");
    if (data.rows() != cone.ambient_dim)
        throw std::invalid_argument("cone element length does not match ambient dimension");
}

ConeElement::ConeElement(MatrixXcd m, ConeDescriptor c) : data(std::move(m)), cone(c) {
    if (cone.kind == ConeKind::Orthant) {
        if (data.cols() != 1 || data.rows() != cone.ambient_dim)
            throw std::invalid_argument("orthant element must be an N x 1 column");
        return;
    }
    if (data.rows() != cone.ambient_dim || data.cols() != cone.ambient_dim)
        throw std::invalid_argument("PSD element must be a square matrix of the cone's side");
    require_hermitian(data, tol_eff(), "cone element");
}

double ConeElement::max_norm() const {
    return data.size() == 0 ? 0.0 : data.cwiseAbs().maxCoeff();
}

double ConeElement::tol_eff() const { return cone.tol * std::max(1.0, max_norm()); }

ConeMap::ConeMap(MatrixXcd m, ConeDescriptor c) : mat(std::move(m)), cone(c) {
    const int want = cone.kind == ConeKind::Orthant ? cone.ambient_dim
                                                    : cone.ambient_dim * cone.ambient_dim;
    if (mat.rows() != want || mat.cols() != want)
        throw std::invalid_argument("cone map shape does not match the cone's ambient space");
}

ConeMap ConeMap::sandwich(MatrixXcd a, ConeDescriptor c) {
    if (c.kind != ConeKind::PsdHilbertSchmidt)
        throw std::invalid_argument("sandwich maps are defined on the PSD cone");
    if (a.rows() != c.ambient_dim || a.cols() != c.ambient_dim)
        throw std::invalid_argument("sandwich factor shape does not match the cone side");
    ConeMap m(MatrixXcd::Zero(c.ambient_dim * c.ambient_dim, c.ambient_dim * c.ambient_dim), c);
    m.sandwich_factor = std::move(a);
    // materialize the superoperator too: xi -> A* xi A is kron(A^adj, A^T)
    // on row-major packed vectors
    const MatrixXcd& A = *m.sandwich_factor;
    const int n = c.ambient_dim;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    m.mat(i * n + j, k * n + l) = std::conj(A(k, i)) * A(l, j);
    return m;
}

MatrixXcd ConeMap::apply(const MatrixXcd& xi) const {
    if (cone.kind != ConeKind::PsdHilbertSchmidt)
        throw std::invalid_argument("matrix apply is defined on the PSD cone");
    if (sandwich_factor)
        return sandwich_factor->adjoint() * xi * (*sandwich_factor);
    return hs_pack(mat * hs_unpack(xi));
}

bool is_in_cone(const ConeElement& x) {
    const double tol = x.tol_eff();
    if (x.cone.kind == ConeKind::Orthant) {
        if (x.data.imag().cwiseAbs().maxCoeff() > tol) return false;
        return x.data.real().minCoeff() >= -tol;
    }
    return hermitian_eigenvalues(x.data).minCoeff() >= -tol;
}

std::pair<ConeElement, ConeElement> decompose(const ConeElement& x) {
    const double tol = x.tol_eff();
    if (x.cone.kind == ConeKind::Orthant) {
        if (x.data.imag().cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("decompose: orthant element must be real");
        VectorXd re = x.data.real();
        VectorXd plus = re.cwiseMax(0.0), minus = (-re).cwiseMax(0.0);
        return {ConeElement(VectorXcd(plus.cast<Complex>()), x.cone),
                ConeElement(VectorXcd(minus.cast<Complex>()), x.cone)};
    }
    require_hermitian(x.data, tol, "decompose");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (x.data + x.data.adjoint()));
    VectorXd ev = es.eigenvalues();
    // zero eigenvalues land in the positive part
    MatrixXcd plus = es.eigenvectors() * ev.cwiseMax(0.0).asDiagonal() *
                     es.eigenvectors().adjoint();
    MatrixXcd minus = es.eigenvectors() * (-ev).cwiseMax(0.0).asDiagonal() *
                      es.eigenvectors().adjoint();
    return {ConeElement(std::move(plus), x.cone), ConeElement(std::move(minus), x.cone)};
}

bool is_strictly_positive(const ConeElement& x) {
    const double tol = x.tol_eff();
    if (x.cone.kind == ConeKind::Orthant) {
        if (x.data.imag().cwiseAbs().maxCoeff() > tol) return false;
        return x.data.real().minCoeff() > tol;
    }
    if ((x.data - x.data.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    return hermitian_eigenvalues(x.data).minCoeff() > tol;
}

std::vector<VectorXcd> psd_probe_vectors(int side, int random_count,
                                         unsigned long long seed) {
    std::vector<VectorXcd> probes;
    for (int i = 0; i < side; ++i) {
        VectorXcd e = VectorXcd::Zero(side);
        e[i] = 1.0;
        probes.push_back(e);
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < side; ++i)
        for (int j = i + 1; j < side; ++j) {
            VectorXcd s = VectorXcd::Zero(side), t = VectorXcd::Zero(side);
            s[i] = r; s[j] = r;
            t[i] = r; t[j] = Complex(0.0, r);
            probes.push_back(s);
            probes.push_back(t);
        }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < random_count; ++k) {
        VectorXcd v(side);
        for (int i = 0; i < side; ++i) v[i] = Complex(gauss(rng), gauss(rng));
        v.normalize();
        probes.push_back(v);
    }
    return probes;
}

namespace {

double worst_probe_eigenvalue(const ConeMap& m) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& v : psd_probe_vectors(m.cone.ambient_dim)) {
        MatrixXcd out = m.apply(v * v.adjoint());
        out = 0.5 * (out + out.adjoint());
        worst = std::min(worst, hermitian_eigenvalues(out).minCoeff());
    }
    return worst;
}

} // namespace

bool preserves_positivity(const ConeMap& m) {
    const double tol = m.cone.tol * std::max(1.0, m.mat.cwiseAbs().maxCoeff());
    if (m.cone.kind == ConeKind::Orthant) {
        if (m.mat.imag().cwiseAbs().maxCoeff() > tol) return false;
        return m.mat.real().minCoeff() >= -tol;
    }
    if (m.is_sandwich()) return true; // xi -> A* xi A maps PSD to PSD
    return worst_probe_eigenvalue(m) >= -tol;
}

bool improves_positivity(const ConeMap& m) {
    const double tol = m.cone.tol * std::max(1.0, m.mat.cwiseAbs().maxCoeff());
    if (m.cone.kind == ConeKind::Orthant) {
        if (m.mat.imag().cwiseAbs().maxCoeff() > tol) return false;
        return m.mat.real().minCoeff() > tol;
    }
    return worst_probe_eigenvalue(m) > tol;
}

bool is_ergodic(const ConeMap& m) {
    if (m.cone.kind != ConeKind::Orthant)
        throw std::invalid_argument("is_ergodic is defined for the Orthant cone only");
    const double tol = m.cone.tol * std::max(1.0, m.mat.cwiseAbs().maxCoeff());
    if (m.mat.real().minCoeff() < -tol || m.mat.imag().cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("is_ergodic: map is not positivity preserving");
    const int n = m.cone.ambient_dim;
    // support digraph, self-loops included (the power k = 0 is allowed)
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (int j = 0; j < n; ++j)
            if (m.mat(i, j).real() > tol) reach[i][j] = true;
    }
    // transitive closure by repeated boolean squaring; N-1 steps suffice
    for (int step = 1; step < n; step *= 2) {
        std::vector<std::vector<bool>> next = reach;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (reach[i][k])
                    for (int j = 0; j < n; ++j)
                        if (reach[k][j]) next[i][j] = true;
        reach.swap(next);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

MatrixXcd hs_pack(const VectorXcd& v) {
    const auto len = v.size();
    const int n = (int)std::llround(std::sqrt((double)len));
    if ((long)n * n != len)
        throw std::invalid_argument("hs_pack: vector length is not a perfect square");
    MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
}

VectorXcd hs_unpack(const MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hs_unpack: matrix must be square");
    const int n = (int)m.rows();
    VectorXcd v(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[i * n + j] = m(i, j);
    return v;
}

} // namespace griffin
