// channels.hpp: single-mode thermal operations, Kraus channels, transition matrices
//
// A single-mode thermal operation couples the system to one bosonic mode through
// a joint unitary that commutes with H + H_R. Such a unitary is block diagonal
// over total-energy shells; each shell collects the joint states |k, n> with
// E_k + n eps_R equal to the shell energy. Channels are kept in Kraus form,
// each Kraus operator tagged with the system energy it deposits.

#pragma once

#include "thermops/core.hpp"

#include <optional>
#include <vector>

namespace thermops {

// Joint states |level, bath> of equal total energy, ordered by system level.
struct Shell {
    long energy = 0;
    std::vector<int> levels;
    std::vector<int> bath;

    int size() const noexcept { return static_cast<int>(levels.size()); }
    // position of system level k in this shell, or -1
    int position_of(int level) const noexcept;
};

// Every shell reached by an input |k, n> with n <= N, in increasing energy.
// For the ladder with eps_R = eps this is shell j = 0..N+d-1 of size min(d, j+1).
std::vector<Shell> energy_shells(const SystemSpec& spec, const BathSpec& bath);

// U = (+)_j U^(j), one unitary block per shell (same order as energy_shells).
class BlockUnitary {
public:
    BlockUnitary(int dim, std::vector<Matrix> blocks);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    const Matrix& block(std::size_t j) const { return blocks_.at(j); }
    const std::vector<Matrix>& blocks() const noexcept { return blocks_; }

private:
    int dim_;
    std::vector<Matrix> blocks_;
};

// How the bath Gibbs state is cut off at n = N.
//   renormalized: weights over n <= N divided by 1 - q^{N+1}. Exactly trace
//                 preserving; Gibbs preservation carries an O(q^{N+1}) error.
//   identity:     the untruncated thermal bath with U acting trivially on every
//                 shell beyond the supplied blocks. The tail is summed in closed
//                 form, so the result is an exact thermal operation.
enum class BathTail { renormalized, identity };

class KrausChannel {
public:
    KrausChannel(std::vector<Matrix> kraus, std::optional<std::vector<int>> shifts = std::nullopt);

    int dim_in() const noexcept { return dim_in_; }
    int dim_out() const noexcept { return dim_out_; }
    std::size_t size() const noexcept { return kraus_.size(); }
    const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
    const std::optional<std::vector<int>>& shifts() const noexcept { return shifts_; }

    Matrix apply(const Matrix& rho) const;
    Matrix apply(const DensityMatrix& rho) const { return apply(rho.matrix()); }
    // J = sum_ij |i><j| (x) Phi(|i><j|)
    Matrix choi() const;
    // max |(sum K^dag K - I)_ij|
    double completeness_deviation() const;
    // next o this
    KrausChannel then(const KrausChannel& next) const;

    static KrausChannel identity(int d);

private:
    int dim_in_;
    int dim_out_;
    std::vector<Matrix> kraus_;
    std::optional<std::vector<int>> shifts_;
};

// Column-stochastic population map G_{k'k} = p(k'|k).
class TransitionMatrix {
public:
    explicit TransitionMatrix(RealMatrix g, double tol = 1e-10);

    int dim() const noexcept { return static_cast<int>(g_.rows()); }
    const RealMatrix& matrix() const noexcept { return g_; }
    double operator()(int to, int from) const { return g_(to, from); }

    // ||G gamma - gamma||_1
    double gibbs_deviation(const Vector& gamma) const;
    bool gibbs_stochastic(const Vector& gamma, double tol) const { return gibbs_deviation(gamma) <= tol; }

private:
    RealMatrix g_;
};

// Kraus operators K_{m,n} = sqrt(gamma_n) <m|_R U |n>_R, shift (n - m) eps_R.
// Output bath indices are not truncated, so the channel is exactly trace preserving.
KrausChannel sto_channel(const BlockUnitary& blocks, const SystemSpec& spec, const BathSpec& bath,
                         BathTail tail = BathTail::renormalized);

// Same populations as transition_matrix(sto_channel(...)) without assembling Kraus operators.
RealMatrix sto_transition(const BlockUnitary& blocks, const SystemSpec& spec, const BathSpec& bath,
                          BathTail tail = BathTail::renormalized);

TransitionMatrix transition_matrix(const KrausChannel& ch, const SystemSpec& spec);

// A^n_{k'k} = sqrt(gamma_n) U^{(k+n)}_{k'k} for the ladder; entries with
// n < max(0, k'-k) are stored as zero so every vector has length N+1.
class AVectors {
public:
    AVectors(int dim, int truncation);

    int dim() const noexcept { return dim_; }
    int truncation() const noexcept { return truncation_; }
    const Eigen::VectorXcd& operator()(int to, int from) const;
    Eigen::VectorXcd& operator()(int to, int from);

private:
    int dim_;
    int truncation_;
    std::vector<Eigen::VectorXcd> v_;
};

AVectors a_vectors(const BlockUnitary& blocks, const BathSpec& bath);

struct CoherenceTransfer {
    cplx value;
    bool mode_mismatch = false;
};

// <to_row| Phi(|from_row><from_col|) |to_col> = sum_n A^n_{to_row,from_row} conj(A^n_{to_col,from_col}).
// Zero (and flagged) unless to_row - from_row == to_col - from_col.
CoherenceTransfer coherence_transfer(const BlockUnitary& blocks, const BathSpec& bath, int from_row, int from_col,
                                     int to_row, int to_col);

// Qubit ladder blocks: U^(0) = 1, U^(j) = swap for j >= 1.
BlockUnitary beta_swap_qubit(const BathSpec& bath);

// Qubit ladder blocks realizing p(0|0) = p00 with the largest coherence damping
// factor sqrt(p(0|0) p(1|1)). Requires p00 in [1 - q, 1].
BlockUnitary qubit_optimal_sto(double p00, const BathSpec& bath);

// p(1|1) = 1 - (1 - p00) / q, the Gibbs-preserving partner of p00 on a qubit.
double qubit_partner_p11(double p00, double q);

// Four-level channel exchanging the pairs (0,2) and (1,3) with x = exp(-beta E2).
KrausChannel simultaneous_beta_swap_kraus(double x);
// As above, tagging the Kraus shifts (0, -E2, +E2) for the given four-level system.
KrausChannel simultaneous_beta_swap_kraus(double x, const SystemSpec& four_level);

struct JointPermutationSto {
    std::vector<Shell> shells;
    BlockUnitary blocks;
    KrausChannel channel;
};

// Single-mode realization of the simultaneous beta-swap: the bath mode carries E2
// and the joint unitary is a basis permutation inside every shell.
JointPermutationSto simultaneous_beta_swap_sto(const SystemSpec& four_level, const BathSpec& bath,
                                               BathTail tail = BathTail::renormalized);

// One Kraus operator per gap D: E^D = sum_k sqrt(G(k_D, k)) |k_D><k| with E_{k_D} = E_k + D.
// Requires a nondegenerate spectrum.
KrausChannel exto_optimal_channel(const TransitionMatrix& g, const SystemSpec& spec);

struct GibbsReport {
    double max_deviation = 0.0;
    bool pass = false;
};

GibbsReport verify_gibbs_preserving(const KrausChannel& ch, const DensityMatrix& gamma, double tol);

struct CovarianceReport {
    double max_deviation = 0.0;   // over matrix units and t in {0.1, 0.7, 2.3}
    double off_shift_norm = 0.0;  // largest Kraus weight outside its single shift
    bool pass = false;
};

CovarianceReport verify_covariant(const KrausChannel& ch, const SystemSpec& spec, double tol);

// Trace norm of the difference of Choi matrices.
double choi_distance(const KrausChannel& a, const KrausChannel& b);

// Blocks of the qubit / qutrit ladder: dims min(d, j+1), j = 0..N+d-1.
std::vector<int> ladder_block_dims(int d, int truncation);

}  // namespace thermops
