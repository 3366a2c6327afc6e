// core.hpp: states, Hamiltonians, Gibbs weights, coherence modes, divergences

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace thermops {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Malformed structure: energies off the integer grid, missing shells, mismatched layouts.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical validation failure: non-unitary blocks, non-stochastic matrices, invalid states.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// System Hamiltonian H = sum_k E_k |k><k| with every E_k an integer multiple of
// the base quantum eps. Energies are stored in units of eps, sorted, with E_0 = 0.
class SystemSpec {
public:
    explicit SystemSpec(std::vector<int> energies);

    // H = sum_k k eps |k><k|, k = 0..d-1
    static SystemSpec ladder(int d);
    // Four levels (0, E1, E2, E1 + E2) with degenerate gaps E1 - E0 = E3 - E2.
    static SystemSpec four_level(int e1, int e2);
    // Accepts real energies in units of eps; each must sit on the integer grid.
    static SystemSpec from_real_energies(std::span<const double> energies, double grid_tol = 1e-9);

    int dim() const noexcept { return static_cast<int>(energies_.size()); }
    int energy(int k) const { return energies_.at(static_cast<std::size_t>(k)); }
    const std::vector<int>& energies() const noexcept { return energies_; }
    bool nondegenerate() const noexcept;
    bool is_ladder() const noexcept;

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

private:
    std::vector<int> energies_;
};

// Single bosonic mode H_R = sum_n n eps_R |n><n| truncated to n = 0..N.
// epsilon is the mode energy in units of eps, beta the inverse temperature in units of 1/eps.
class BathSpec {
public:
    BathSpec(int epsilon, double beta, int truncation);

    // Boltzmann factor q = exp(-beta * epsilon) given directly.
    static BathSpec from_q(double q, int truncation, int epsilon = 1);

    int epsilon() const noexcept { return epsilon_; }
    double beta() const noexcept { return beta_; }
    int truncation() const noexcept { return truncation_; }
    double q() const noexcept { return q_; }

    // gamma_n = q^n (1 - q) / (1 - q^{N+1}), n = 0..N; sums to one.
    const std::vector<double>& weights() const noexcept { return weights_; }

private:
    int epsilon_;
    double beta_;
    int truncation_;
    double q_;
    std::vector<double> weights_;
};

// Hermitian, positive semidefinite, unit trace. Validated on construction.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries);

    static DensityMatrix diagonal(std::span<const double> populations);
    static DensityMatrix pure(const Eigen::VectorXcd& psi);

    int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    const Matrix& matrix() const noexcept { return entries_; }

private:
    Matrix entries_;
};

// Modes of coherence keyed by integer gap m (gap energy m * eps).
struct ModeSet {
    int dim = 0;
    std::map<int, Matrix> modes;

    Matrix sum() const;
    const Matrix& at(int gap) const { return modes.at(gap); }
};

DensityMatrix gibbs_state(const SystemSpec& spec, double beta);
Vector gibbs_weights(const SystemSpec& spec, double beta);

Vector populations(const Matrix& rho);
inline Vector populations(const DensityMatrix& rho) { return populations(rho.matrix()); }

// Mode 0 is always present; other gaps only when they hold a nonzero entry.
ModeSet mode_decompose(const Matrix& rho, const SystemSpec& spec);

// Renyi divergence D_alpha(p || g) in nats. alpha may be +/-infinity; the
// limits 0, 1 and +/-infinity are closed forms. Returns +infinity when p puts
// weight where g vanishes.
double renyi_divergence(const Vector& p, const Vector& g, double alpha);

// 1/2 ||a - b||_1 for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

// e^{-iHt} rho e^{iHt}, t in units of 1/eps.
Matrix time_translate(const Matrix& rho, const SystemSpec& spec, double t);

// |i><j| in dimension d
Matrix matrix_unit(int d, int i, int j);

}  // namespace thermops
