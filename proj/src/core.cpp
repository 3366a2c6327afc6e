#include "thermops/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thermops {

SystemSpec::SystemSpec(std::vector<int> energies) : energies_(std::move(energies)) {
    if (energies_.empty()) throw std::invalid_argument("SystemSpec: dimension must be >= 1");
    if (energies_.front() != 0) throw std::invalid_argument("SystemSpec: E_0 must be 0");
    if (!std::is_sorted(energies_.begin(), energies_.end()))
        throw std::invalid_argument("SystemSpec: energies must be non-decreasing");
}

SystemSpec SystemSpec::ladder(int d) {
    if (d < 1) throw std::invalid_argument("SystemSpec::ladder: d must be >= 1");
    std::vector<int> e(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) e[static_cast<std::size_t>(k)] = k;
    return SystemSpec(std::move(e));
}

SystemSpec SystemSpec::four_level(int e1, int e2) {
    if (e1 < 0 || e2 < 0) throw std::invalid_argument("SystemSpec::four_level: gaps must be >= 0");
    if (e1 > e2) throw std::invalid_argument("SystemSpec::four_level: levels must be ordered (E1 <= E2)");
    return SystemSpec({0, e1, e2, e1 + e2});
}

SystemSpec SystemSpec::from_real_energies(std::span<const double> energies, double grid_tol) {
    std::vector<int> e;
    e.reserve(energies.size());
    for (double v : energies) {
        if (!std::isfinite(v)) throw StructuralError("SystemSpec: non-finite energy");
        const double r = std::round(v);
        if (std::abs(v - r) > grid_tol)
            throw StructuralError("SystemSpec: energy " + std::to_string(v) + " is not on the eps grid");
        e.push_back(static_cast<int>(r));
    }
    return SystemSpec(std::move(e));
}

bool SystemSpec::nondegenerate() const noexcept {
    return std::adjacent_find(energies_.begin(), energies_.end()) == energies_.end();
}

bool SystemSpec::is_ladder() const noexcept {
    for (int k = 0; k < dim(); ++k)
        if (energies_[static_cast<std::size_t>(k)] != k) return false;
    return true;
}

BathSpec::BathSpec(int epsilon, double beta, int truncation)
    : epsilon_(epsilon), beta_(beta), truncation_(truncation) {
    if (epsilon <= 0) throw std::invalid_argument("BathSpec: epsilon must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("BathSpec: beta must be finite and > 0");
    if (truncation < 1) throw std::invalid_argument("BathSpec: truncation must be >= 1");
    q_ = std::exp(-beta * epsilon);
    if (!(q_ > 0.0 && q_ < 1.0)) throw std::range_error("BathSpec: q = exp(-beta eps) outside (0,1)");

    weights_.resize(static_cast<std::size_t>(truncation) + 1);
    double w = 1.0, total = 0.0;
    for (auto& g : weights_) {
        g = w;
        total += w;
        w *= q_;
    }
    for (auto& g : weights_) g /= total;
}

BathSpec BathSpec::from_q(double q, int truncation, int epsilon) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("BathSpec::from_q: q must lie in (0,1)");
    if (epsilon <= 0) throw std::invalid_argument("BathSpec::from_q: epsilon must be > 0");
    return BathSpec(epsilon, -std::log(q) / epsilon, truncation);
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw ValidationError("DensityMatrix: must be square and non-empty");
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("DensityMatrix: not Hermitian");
    if (std::abs(entries_.trace() - cplx(1.0)) > 1e-12)
        throw ValidationError("DensityMatrix: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw ValidationError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
    const auto d = static_cast<Eigen::Index>(populations.size());
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) m(k, k) = populations[static_cast<std::size_t>(k)];
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
    const double n = psi.norm();
    if (n == 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
    const Eigen::VectorXcd u = psi / n;
    return DensityMatrix(u * u.adjoint());
}

Matrix ModeSet::sum() const {
    Matrix s = Matrix::Zero(dim, dim);
    for (const auto& [gap, m] : modes) s += m;
    return s;
}

Vector gibbs_weights(const SystemSpec& spec, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("gibbs_state: beta must be finite and > 0");
    const int d = spec.dim();
    Vector w(d);
    for (int k = 0; k < d; ++k) w(k) = std::exp(-beta * spec.energy(k));
    // Every weight must stay strictly positive for the divergences downstream.
    if (!w.allFinite() || w.minCoeff() <= 0.0)
        throw std::range_error("gibbs_state: beta * E out of floating-point range");
    return w / w.sum();
}

DensityMatrix gibbs_state(const SystemSpec& spec, double beta) {
    const Vector w = gibbs_weights(spec, beta);
    return DensityMatrix(w.cast<cplx>().asDiagonal().toDenseMatrix());
}

Vector populations(const Matrix& rho) {
    return rho.diagonal().real();
}

ModeSet mode_decompose(const Matrix& rho, const SystemSpec& spec) {
    const int d = spec.dim();
    if (rho.rows() != d || rho.cols() != d) throw StructuralError("mode_decompose: dimension mismatch");
    ModeSet out;
    out.dim = d;
    out.modes[0] = Matrix::Zero(d, d);
    // Gaps with no nonzero entry are left out.
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (rho(i, j) == cplx(0.0, 0.0)) continue;
            const int gap = spec.energy(i) - spec.energy(j);
            auto [it, inserted] = out.modes.try_emplace(gap);
            if (inserted) it->second = Matrix::Zero(d, d);
            it->second(i, j) = rho(i, j);
        }
    }
    return out;
}

double renyi_divergence(const Vector& p, const Vector& g, double alpha) {
    if (p.size() != g.size() || p.size() == 0) throw std::invalid_argument("renyi_divergence: size mismatch");
    if (std::isnan(alpha)) throw std::invalid_argument("renyi_divergence: alpha is NaN");
    const Eigen::Index n = p.size();
    for (Eigen::Index i = 0; i < n; ++i)
        if (p(i) > 0.0 && g(i) <= 0.0) return kInf;

    if (alpha == kInf) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (g(i) > 0.0) m = std::max(m, p(i) / g(i));
        return std::log(m);
    }
    if (alpha == -kInf) {
        double m = kInf;
        for (Eigen::Index i = 0; i < n; ++i)
            if (g(i) > 0.0) m = std::min(m, p(i) / g(i));
        return m > 0.0 ? -std::log(m) : kInf;
    }
    if (alpha == 0.0) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (p(i) > 0.0) s += g(i);
        return -std::log(s);
    }
    if (alpha == 1.0) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (p(i) > 0.0) s += p(i) * std::log(p(i) / g(i));
        return s;
    }

    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (p(i) == 0.0) {
            if (alpha < 0.0 && g(i) > 0.0) return kInf;
            continue;
        }
        s += std::pow(p(i), alpha) * std::pow(g(i), 1.0 - alpha);
    }
    // sgn(alpha) / (alpha - 1): positive for alpha < 0 and alpha > 1.
    const double sign = alpha > 0.0 ? 1.0 : -1.0;
    return sign / (alpha - 1.0) * std::log(s);
}

double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("trace_distance: dimension mismatch");
    const Matrix diff = a - b;
    const Matrix herm = 0.5 * (diff + diff.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Matrix time_translate(const Matrix& rho, const SystemSpec& spec, double t) {
    const int d = spec.dim();
    if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("time_translate: dimension mismatch");
    Matrix out(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out(i, j) = rho(i, j) * std::polar(1.0, -(spec.energy(i) - spec.energy(j)) * t);
    return out;
}

Matrix matrix_unit(int d, int i, int j) {
    if (i < 0 || j < 0 || i >= d || j >= d) throw std::out_of_range("matrix_unit: index out of range");
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

}  // namespace thermops
