#include "thermops/channels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace thermops {

namespace {

constexpr double kPruneNorm = 1e-14;

// Shells plus the bookkeeping needed to push an input |k, n> through U.
struct ShellLayout {
    std::vector<Shell> shells;
    std::map<long, std::size_t> by_energy;
    int max_bath = 0;
};

ShellLayout make_layout(const SystemSpec& spec, const BathSpec& bath) {
    ShellLayout layout;
    layout.shells = energy_shells(spec, bath);
    for (std::size_t s = 0; s < layout.shells.size(); ++s) {
        layout.by_energy.emplace(layout.shells[s].energy, s);
        for (int m : layout.shells[s].bath) layout.max_bath = std::max(layout.max_bath, m);
    }
    return layout;
}

void check_coverage(const BlockUnitary& blocks, const SystemSpec& spec, const ShellLayout& layout) {
    if (blocks.dim() != spec.dim())
        throw StructuralError("sto: block unitary dimension " + std::to_string(blocks.dim()) +
                              " does not match system dimension " + std::to_string(spec.dim()));
    if (blocks.size() < layout.shells.size())
        throw StructuralError("sto: " + std::to_string(blocks.size()) + " blocks cannot cover " +
                              std::to_string(layout.shells.size()) + " energy shells");
    for (std::size_t s = 0; s < layout.shells.size(); ++s) {
        if (blocks.block(s).rows() != layout.shells[s].size())
            throw StructuralError("sto: block " + std::to_string(s) + " has dimension " +
                                  std::to_string(blocks.block(s).rows()) + ", shell needs " +
                                  std::to_string(layout.shells[s].size()));
    }
}

// Bath input weights gamma_n and the weight left for the trivial tail.
struct InputWeights {
    std::vector<double> w;
    double tail = 0.0;
};

InputWeights input_weights(const BathSpec& bath, const ShellLayout& layout, BathTail tail) {
    InputWeights out;
    if (tail == BathTail::renormalized) {
        out.w = bath.weights();
        return out;
    }
    const double q = bath.q();
    out.w.resize(static_cast<std::size_t>(layout.max_bath) + 1);
    double qn = 1.0;
    for (auto& g : out.w) {
        g = qn * (1.0 - q);
        qn *= q;
    }
    out.tail = qn;
    return out;
}

// Visits every amplitude <level', m| U |level, n> for inputs n with weight w_n.
template <class Visit>
void for_each_amplitude(const BlockUnitary& blocks, const SystemSpec& spec, const BathSpec& bath,
                        const ShellLayout& layout, const InputWeights& in, Visit&& visit) {
    const int d = spec.dim();
    const long eps = bath.epsilon();
    for (std::size_t n = 0; n < in.w.size(); ++n) {
        const double wn = in.w[n];
        for (int k = 0; k < d; ++k) {
            const long energy = spec.energy(k) + static_cast<long>(n) * eps;
            const auto it = layout.by_energy.find(energy);
            if (it == layout.by_energy.end()) {
                // shell beyond the supplied blocks: U acts as the identity there
                visit(wn, static_cast<int>(n), k, static_cast<int>(n), k, cplx(1.0));
                continue;
            }
            const Shell& shell = layout.shells[it->second];
            const Matrix& u = blocks.block(it->second);
            const int pos = shell.position_of(k);
            for (int r = 0; r < shell.size(); ++r) {
                const cplx amp = u(r, pos);
                if (amp != cplx(0.0)) visit(wn, static_cast<int>(n), k, shell.bath[static_cast<std::size_t>(r)],
                                            shell.levels[static_cast<std::size_t>(r)], amp);
            }
        }
    }
}

}  // namespace

int Shell::position_of(int level) const noexcept {
    const auto it = std::find(levels.begin(), levels.end(), level);
    return it == levels.end() ? -1 : static_cast<int>(it - levels.begin());
}

std::vector<Shell> energy_shells(const SystemSpec& spec, const BathSpec& bath) {
    const int d = spec.dim();
    const long eps = bath.epsilon();
    std::set<long> energies;
    for (int k = 0; k < d; ++k)
        for (int n = 0; n <= bath.truncation(); ++n) energies.insert(spec.energy(k) + n * eps);

    std::vector<Shell> shells;
    shells.reserve(energies.size());
    for (long total : energies) {
        Shell s;
        s.energy = total;
        for (int k = 0; k < d; ++k) {
            const long rest = total - spec.energy(k);
            if (rest >= 0 && rest % eps == 0) {
                s.levels.push_back(k);
                s.bath.push_back(static_cast<int>(rest / eps));
            }
        }
        shells.push_back(std::move(s));
    }
    return shells;
}

std::vector<int> ladder_block_dims(int d, int truncation) {
    std::vector<int> dims;
    for (int j = 0; j <= truncation + d - 1; ++j) dims.push_back(std::min(d, j + 1));
    return dims;
}

BlockUnitary::BlockUnitary(int dim, std::vector<Matrix> blocks) : dim_(dim), blocks_(std::move(blocks)) {
    if (dim < 1) throw std::invalid_argument("BlockUnitary: dimension must be >= 1");
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
        const Matrix& u = blocks_[j];
        if (u.rows() != u.cols() || u.rows() == 0)
            throw StructuralError("BlockUnitary: block " + std::to_string(j) + " is not square");
        const double dev = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
        if (dev > 1e-12)
            throw ValidationError("BlockUnitary: block " + std::to_string(j) + " is not unitary (deviation " +
                                  std::to_string(dev) + ")");
    }
}

KrausChannel::KrausChannel(std::vector<Matrix> kraus, std::optional<std::vector<int>> shifts)
    : kraus_(std::move(kraus)), shifts_(std::move(shifts)) {
    if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
    dim_out_ = static_cast<int>(kraus_.front().rows());
    dim_in_ = static_cast<int>(kraus_.front().cols());
    for (const auto& k : kraus_)
        if (k.rows() != dim_out_ || k.cols() != dim_in_)
            throw StructuralError("KrausChannel: Kraus operators have inconsistent shapes");
    if (shifts_ && shifts_->size() != kraus_.size())
        throw StructuralError("KrausChannel: one shift per Kraus operator required");
}

KrausChannel KrausChannel::identity(int d) {
    return KrausChannel({Matrix::Identity(d, d)}, std::vector<int>{0});
}

Matrix KrausChannel::apply(const Matrix& rho) const {
    if (rho.rows() != dim_in_ || rho.cols() != dim_in_) throw std::invalid_argument("KrausChannel::apply: dimension mismatch");
    Matrix out = Matrix::Zero(dim_out_, dim_out_);
    for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
    return out;
}

Matrix KrausChannel::choi() const {
    const int din = dim_in_, dout = dim_out_;
    Matrix j = Matrix::Zero(din * dout, din * dout);
    for (int a = 0; a < din; ++a)
        for (int b = 0; b < din; ++b) j.block(a * dout, b * dout, dout, dout) = apply(matrix_unit(din, a, b));
    return j;
}

double KrausChannel::completeness_deviation() const {
    Matrix s = Matrix::Zero(dim_in_, dim_in_);
    for (const auto& k : kraus_) s.noalias() += k.adjoint() * k;
    return (s - Matrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
}

KrausChannel KrausChannel::then(const KrausChannel& next) const {
    if (next.dim_in_ != dim_out_) throw std::invalid_argument("KrausChannel::then: dimension mismatch");
    std::vector<Matrix> ks;
    std::vector<int> shifts;
    const bool tagged = shifts_.has_value() && next.shifts_.has_value();
    for (std::size_t b = 0; b < next.kraus_.size(); ++b) {
        for (std::size_t a = 0; a < kraus_.size(); ++a) {
            Matrix k = next.kraus_[b] * kraus_[a];
            if (k.norm() < kPruneNorm) continue;
            ks.push_back(std::move(k));
            if (tagged) shifts.push_back((*shifts_)[a] + (*next.shifts_)[b]);
        }
    }
    if (ks.empty()) ks.push_back(Matrix::Zero(next.dim_out_, dim_in_));
    if (tagged && shifts.size() == ks.size()) return KrausChannel(std::move(ks), std::move(shifts));
    return KrausChannel(std::move(ks));
}

TransitionMatrix::TransitionMatrix(RealMatrix g, double tol) : g_(std::move(g)) {
    if (g_.rows() == 0 || g_.rows() != g_.cols()) throw ValidationError("TransitionMatrix: must be square and non-empty");
    if (!g_.allFinite()) throw ValidationError("TransitionMatrix: non-finite entry");
    if (g_.minCoeff() < -tol) throw ValidationError("TransitionMatrix: negative transition probability");
    for (Eigen::Index c = 0; c < g_.cols(); ++c)
        if (std::abs(g_.col(c).sum() - 1.0) > tol)
            throw ValidationError("TransitionMatrix: column " + std::to_string(c) + " does not sum to 1");
}

double TransitionMatrix::gibbs_deviation(const Vector& gamma) const {
    if (gamma.size() != g_.rows()) throw std::invalid_argument("TransitionMatrix: Gibbs vector size mismatch");
    return (g_ * gamma - gamma).lpNorm<1>();
}

KrausChannel sto_channel(const BlockUnitary& blocks, const SystemSpec& spec, const BathSpec& bath, BathTail tail) {
    const ShellLayout layout = make_layout(spec, bath);
    check_coverage(blocks, spec, layout);
    const InputWeights in = input_weights(bath, layout, tail);
    const int d = spec.dim();

    std::map<std::pair<int, int>, Matrix> acc;  // (m, n) -> K_{m,n}
    for_each_amplitude(blocks, spec, bath, layout, in, [&](double wn, int n, int k, int m, int kout, cplx amp) {
        auto [it, inserted] = acc.try_emplace({m, n});
        if (inserted) it->second = Matrix::Zero(d, d);
        it->second(kout, k) += std::sqrt(wn) * amp;
    });

    std::vector<Matrix> ks;
    std::vector<int> shifts;
    for (auto& [key, k] : acc) {
        if (k.norm() < kPruneNorm) continue;
        ks.push_back(std::move(k));
        shifts.push_back((key.second - key.first) * bath.epsilon());
    }
    if (in.tail > 0.0) {
        ks.push_back(std::sqrt(in.tail) * Matrix::Identity(d, d));
        shifts.push_back(0);
    }
    return KrausChannel(std::move(ks), std::move(shifts));
}

RealMatrix sto_transition(const BlockUnitary& blocks, const SystemSpec& spec, const BathSpec& bath, BathTail tail) {
    const ShellLayout layout = make_layout(spec, bath);
    check_coverage(blocks, spec, layout);
    const InputWeights in = input_weights(bath, layout, tail);
    const int d = spec.dim();
    RealMatrix g = RealMatrix::Zero(d, d);
    for_each_amplitude(blocks, spec, bath, layout, in, [&](double wn, int, int k, int, int kout, cplx amp) {
        g(kout, k) += wn * std::norm(amp);
    });
    g.diagonal().array() += in.tail;
    return g;
}

TransitionMatrix transition_matrix(const KrausChannel& ch, const SystemSpec& spec) {
    const int d = spec.dim();
    if (ch.dim_in() != d || ch.dim_out() != d) throw StructuralError("transition_matrix: channel/system dimension mismatch");
    RealMatrix g = RealMatrix::Zero(d, d);
    for (const auto& k : ch.kraus()) g += k.cwiseAbs2();
    return TransitionMatrix(std::move(g));
}

AVectors::AVectors(int dim, int truncation)
    : dim_(dim), truncation_(truncation),
      v_(static_cast<std::size_t>(dim * dim), Eigen::VectorXcd::Zero(truncation + 1)) {}

const Eigen::VectorXcd& AVectors::operator()(int to, int from) const {
    if (to < 0 || from < 0 || to >= dim_ || from >= dim_) throw std::out_of_range("AVectors: level out of range");
    return v_[static_cast<std::size_t>(to * dim_ + from)];
}

Eigen::VectorXcd& AVectors::operator()(int to, int from) {
    if (to < 0 || from < 0 || to >= dim_ || from >= dim_) throw std::out_of_range("AVectors: level out of range");
    return v_[static_cast<std::size_t>(to * dim_ + from)];
}

AVectors a_vectors(const BlockUnitary& blocks, const BathSpec& bath) {
    const int d = blocks.dim();
    const int n_max = bath.truncation();
    const auto dims = ladder_block_dims(d, n_max);
    if (bath.epsilon() != 1) throw StructuralError("a_vectors: ladder layout needs the bath quantum equal to eps");
    if (blocks.size() < dims.size()) throw StructuralError("a_vectors: not enough blocks for the ladder shells");
    for (std::size_t j = 0; j < dims.size(); ++j)
        if (blocks.block(j).rows() != dims[j]) throw StructuralError("a_vectors: blocks are not in ladder layout");

    AVectors a(d, n_max);
    const auto& w = bath.weights();
    for (int from = 0; from < d; ++from) {
        for (int to = 0; to < d; ++to) {
            auto& vec = a(to, from);
            for (int n = std::max(0, to - from); n <= n_max; ++n)
                vec(n) = std::sqrt(w[static_cast<std::size_t>(n)]) * blocks.block(static_cast<std::size_t>(from + n))(to, from);
        }
    }
    return a;
}

CoherenceTransfer coherence_transfer(const BlockUnitary& blocks, const BathSpec& bath, int from_row, int from_col,
                                     int to_row, int to_col) {
    const int d = blocks.dim();
    for (int idx : {from_row, from_col, to_row, to_col})
        if (idx < 0 || idx >= d) throw std::out_of_range("coherence_transfer: level out of range");
    if (to_row - from_row != to_col - from_col) return {cplx(0.0), true};
    const AVectors a = a_vectors(blocks, bath);
    // sum_n A^n_{i|c} conj(A^n_{j|d}); the A* . A ordering is the conjugate of this.
    const cplx v = a(to_col, from_col).dot(a(to_row, from_row));
    return {v, false};
}

BlockUnitary beta_swap_qubit(const BathSpec& bath) {
    std::vector<Matrix> blocks;
    for (int dim : ladder_block_dims(2, bath.truncation())) {
        if (dim == 1) {
            blocks.push_back(Matrix::Identity(1, 1));
        } else {
            Matrix s(2, 2);
            s << 0.0, 1.0, 1.0, 0.0;
            blocks.push_back(s);
        }
    }
    return BlockUnitary(2, std::move(blocks));
}

double qubit_partner_p11(double p00, double q) {
    return 1.0 - (1.0 - p00) / q;
}

BlockUnitary qubit_optimal_sto(double p00, const BathSpec& bath) {
    const double q = bath.q();
    constexpr double slack = 1e-14;
    if (!(p00 >= 1.0 - q - slack && p00 <= 1.0 + slack))
        throw std::domain_error("qubit_optimal_sto: p00 must lie in [1 - q, 1]");
    p00 = std::clamp(p00, 1.0 - q, 1.0);
    // ratio p(1|1) / p(0|0)
    const double r = std::max(0.0, qubit_partner_p11(p00, q) / p00);

    std::vector<Matrix> blocks;
    const auto dims = ladder_block_dims(2, bath.truncation());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (dims[j] == 1) {
            blocks.push_back(Matrix::Identity(1, 1));
            continue;
        }
        const double diag = std::pow(r, 0.5 * static_cast<double>(j));
        const double off = std::sqrt(std::max(0.0, 1.0 - diag * diag));
        Matrix u(2, 2);
        u << diag, off, -off, diag;
        blocks.push_back(u);
    }
    return BlockUnitary(2, std::move(blocks));
}

KrausChannel simultaneous_beta_swap_kraus(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("simultaneous_beta_swap_kraus: x must lie in (0,1)");
    Matrix k0 = Matrix::Zero(4, 4), k1 = Matrix::Zero(4, 4), k2 = Matrix::Zero(4, 4);
    const double a = std::sqrt(1.0 - x), b = std::sqrt(x);
    k0(0, 0) = a;
    k0(1, 1) = a;
    k1(0, 2) = 1.0;
    k1(1, 3) = 1.0;
    k2(2, 0) = b;
    k2(3, 1) = b;
    return KrausChannel({k0, k1, k2});
}

KrausChannel simultaneous_beta_swap_kraus(double x, const SystemSpec& four_level) {
    const auto& e = four_level.energies();
    if (four_level.dim() != 4 || e[3] != e[1] + e[2])
        throw StructuralError("simultaneous_beta_swap_kraus: needs levels (0, E1, E2, E1 + E2)");
    const KrausChannel base = simultaneous_beta_swap_kraus(x);
    return KrausChannel(base.kraus(), std::vector<int>{0, -e[2], e[2]});
}

JointPermutationSto simultaneous_beta_swap_sto(const SystemSpec& four_level, const BathSpec& bath, BathTail tail) {
    const auto& e = four_level.energies();
    if (four_level.dim() != 4 || e[3] != e[1] + e[2])
        throw StructuralError("simultaneous_beta_swap_sto: needs levels (0, E1, E2, E1 + E2)");
    if (bath.epsilon() != e[2]) throw StructuralError("simultaneous_beta_swap_sto: bath quantum must equal E2");

    // Joint map on basis states: |2, m> <-> |0, m+1> and |3, m> <-> |1, m+1>; |0,0>, |1,0> fixed.
    auto image = [](int level, int n) -> std::pair<int, int> {
        switch (level) {
            case 0: return n == 0 ? std::pair{0, 0} : std::pair{2, n - 1};
            case 1: return n == 0 ? std::pair{1, 0} : std::pair{3, n - 1};
            case 2: return {0, n + 1};
            default: return {1, n + 1};
        }
    };

    std::vector<Shell> shells = energy_shells(four_level, bath);
    std::vector<Matrix> blocks;
    blocks.reserve(shells.size());
    for (const Shell& s : shells) {
        Matrix u = Matrix::Zero(s.size(), s.size());
        for (int c = 0; c < s.size(); ++c) {
            const auto [lv, m] = image(s.levels[static_cast<std::size_t>(c)], s.bath[static_cast<std::size_t>(c)]);
            const int r = s.position_of(lv);
            if (r < 0 || s.bath[static_cast<std::size_t>(r)] != m)
                throw std::logic_error("simultaneous_beta_swap_sto: permutation leaves its energy shell");
            u(r, c) = 1.0;
        }
        blocks.push_back(std::move(u));
    }
    BlockUnitary bu(4, std::move(blocks));
    KrausChannel ch = sto_channel(bu, four_level, bath, tail);
    return {std::move(shells), std::move(bu), std::move(ch)};
}

KrausChannel exto_optimal_channel(const TransitionMatrix& g, const SystemSpec& spec) {
    const int d = spec.dim();
    if (g.dim() != d) throw StructuralError("exto_optimal_channel: transition matrix dimension mismatch");
    if (!spec.nondegenerate()) throw StructuralError("exto_optimal_channel: needs a nondegenerate spectrum");

    std::set<int> gaps;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) gaps.insert(spec.energy(a) - spec.energy(b));

    std::vector<Matrix> ks;
    std::vector<int> shifts;
    for (int gap : gaps) {
        Matrix k = Matrix::Zero(d, d);
        for (int from = 0; from < d; ++from) {
            for (int to = 0; to < d; ++to) {
                if (spec.energy(to) != spec.energy(from) + gap) continue;
                k(to, from) = std::sqrt(std::max(0.0, g(to, from)));
            }
        }
        if (k.norm() < kPruneNorm) continue;
        ks.push_back(std::move(k));
        shifts.push_back(gap);
    }
    return KrausChannel(std::move(ks), std::move(shifts));
}

GibbsReport verify_gibbs_preserving(const KrausChannel& ch, const DensityMatrix& gamma, double tol) {
    if (ch.dim_in() != gamma.dim() || ch.dim_out() != gamma.dim())
        throw std::invalid_argument("verify_gibbs_preserving: dimension mismatch");
    GibbsReport r;
    r.max_deviation = trace_distance(ch.apply(gamma.matrix()), gamma.matrix());
    r.pass = r.max_deviation <= tol;
    return r;
}

CovarianceReport verify_covariant(const KrausChannel& ch, const SystemSpec& spec, double tol) {
    const int d = spec.dim();
    if (ch.dim_in() != d || ch.dim_out() != d) throw std::invalid_argument("verify_covariant: dimension mismatch");
    CovarianceReport r;
    for (double t : {0.1, 0.7, 2.3}) {
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                const Matrix unit = matrix_unit(d, a, b);
                const Matrix lhs = ch.apply(time_translate(unit, spec, t));
                const Matrix rhs = time_translate(ch.apply(unit), spec, t);
                r.max_deviation = std::max(r.max_deviation, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
    }

    for (std::size_t idx = 0; idx < ch.size(); ++idx) {
        const Matrix& k = ch.kraus()[idx];
        std::map<int, double> mass;
        double total = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const double w = std::norm(k(i, j));
                mass[spec.energy(i) - spec.energy(j)] += w;
                total += w;
            }
        }
        double kept = 0.0;
        if (ch.shifts()) {
            const auto it = mass.find((*ch.shifts())[idx]);
            kept = it == mass.end() ? 0.0 : it->second;
        } else {
            for (const auto& [gap, m] : mass) kept = std::max(kept, m);
        }
        r.off_shift_norm = std::max(r.off_shift_norm, std::sqrt(std::max(0.0, total - kept)));
    }
    r.pass = r.max_deviation <= tol && r.off_shift_norm <= tol;
    return r;
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) throw std::invalid_argument("choi_distance: dimension mismatch");
    const Matrix diff = a.choi() - b.choi();
    Eigen::JacobiSVD<Matrix> svd(diff);
    return svd.singularValues().sum();
}

}  // namespace thermops
