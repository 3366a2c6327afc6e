#include "thermops/kernels.hpp"

#include "thermops/bounds.hpp"
#include "thermops/random.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

namespace thermops::kernels {

namespace {

// out[i] = f(i). The OpenMP path writes each slot from exactly one iteration, so
// both paths produce the same vector.
template <class T, class F>
std::vector<T> map_indexed(int n, Execution ex, F&& f) {
    if (n < 0) throw std::invalid_argument("kernel batch size must be >= 0");
    std::vector<T> out(static_cast<std::size_t>(n));
    if (ex == Execution::serial) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
        return out;
    }
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(i);
        } catch (...) {
#pragma omp critical(thermops_kernel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

cplx random_amplitude(Rng& rng) {
    const double r = rng.uniform();
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(r, phase);
}

struct Excess {
    double excess = -kInf;
    double ratio_first = 0.0;
    double ratio_second = 0.0;
};

double ratio(double achieved, double bound) {
    if (bound > 0.0) return achieved / bound;
    return achieved > 1e-14 ? kInf : 0.0;
}

SweepStats reduce(const std::vector<Excess>& parts) {
    SweepStats s;
    s.count = parts.size();
    for (const auto& e : parts) {
        s.max_excess = std::max(s.max_excess, e.excess);
        s.best_ratio_first = std::max(s.best_ratio_first, e.ratio_first);
        s.best_ratio_second = std::max(s.best_ratio_second, e.ratio_second);
    }
    return s;
}

Matrix random_density(int d, Rng& rng) {
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

std::vector<Vector> elto_points(const Vector& p, const Vector& gamma, int depth, int n, std::uint64_t seed,
                                Execution ex) {
    if (depth < 1) throw std::invalid_argument("elto_points: depth must be >= 1");
    std::vector<Vector> out = beta_swap_compositions(p, gamma, depth);
    const auto seqs = map_indexed<std::vector<Vector>>(
        n, ex, [&](int i) { return elto_sequence(p, gamma, depth, seed, static_cast<std::uint64_t>(i)); });
    for (const auto& s : seqs) out.insert(out.end(), s.begin(), s.end());
    return out;
}

std::vector<Vector> sto_points(const Vector& p, const BathSpec& bath, int n, std::uint64_t seed, Execution ex) {
    return map_indexed<Vector>(n, ex, [&](int i) { return sto_sample_point(p, bath, seed, static_cast<std::uint64_t>(i)); });
}

SupportBatch support_sweep(const Vector& p, const Vector& gamma, const std::vector<Vector>& directions, Execution ex) {
    struct Item {
        SupportSample s;
        Vector v;
    };
    const auto items = map_indexed<Item>(static_cast<int>(directions.size()), ex, [&](int i) {
        Item it;
        it.s = to_support_point(p, gamma, directions[static_cast<std::size_t>(i)], &it.v);
        return it;
    });
    SupportBatch batch;
    batch.supports.reserve(items.size());
    batch.vertices.reserve(items.size());
    for (const auto& it : items) {
        batch.supports.push_back(it.s);
        batch.vertices.push_back(it.v);
    }
    return batch;
}

std::vector<char> membership_batch(const std::vector<Vector>& points, const Vector& p, const Vector& gamma, double tol,
                                   Execution ex) {
    return map_indexed<char>(static_cast<int>(points.size()), ex, [&](int i) {
        return static_cast<char>(to_membership(points[static_cast<std::size_t>(i)], p, gamma, tol) ? 1 : 0);
    });
}

double halfspace_violation(const std::vector<Vector>& points, const std::vector<SupportSample>& supports, Execution ex) {
    const auto per_point = map_indexed<double>(static_cast<int>(points.size()), ex, [&](int i) {
        double worst = -kInf;
        for (const auto& s : supports) worst = std::max(worst, s.direction.dot(points[static_cast<std::size_t>(i)]) - s.value);
        return worst;
    });
    double worst = -kInf;
    for (double v : per_point) worst = std::max(worst, v);
    return worst;
}

SweepStats merge_sweep(double x, int truncation, int count, std::uint64_t seed, BathTail tail, Execution ex) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("merge_sweep: x must lie in (0,1)");
    const SystemSpec spec = SystemSpec::four_level(1, 3);
    const BathSpec bath(3, -std::log(x) / 3.0, truncation);
    const auto shells = energy_shells(spec, bath);
    const auto parts = map_indexed<Excess>(count, ex, [&](int i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const auto family = rng.below(2) == 0 ? BlockFamily::haar : BlockFamily::permutation;
        const BlockUnitary blocks = random_blocks(shells, 4, family, rng);
        const KrausChannel ch = sto_channel(blocks, spec, bath, tail);
        Matrix rho = Matrix::Zero(4, 4);
        rho(1, 0) = random_amplitude(rng);
        rho(3, 2) = random_amplitude(rng);
        const Matrix out = ch.apply(rho);
        const double r10 = std::abs(rho(1, 0)), r32 = std::abs(rho(3, 2));
        const double down = merge_down_bound(r10, r32, x).bound;
        const double up = merge_up_bound(r10, r32, x).bound;
        const double a10 = std::abs(out(1, 0)), a32 = std::abs(out(3, 2));
        return Excess{std::max(a10 - down, a32 - up), ratio(a10, down), ratio(a32, up)};
    });
    return reduce(parts);
}

SweepStats cauchy_schwarz_sweep(int d, double q, int truncation, int count, std::uint64_t seed, Execution ex) {
    const SystemSpec spec = SystemSpec::ladder(d);
    const BathSpec bath = BathSpec::from_q(q, truncation);
    const auto shells = energy_shells(spec, bath);
    const auto parts = map_indexed<Excess>(count, ex, [&](int i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const auto family = static_cast<BlockFamily>(rng.below(3));
        const BlockUnitary blocks = random_blocks(shells, d, family, rng);
        const KrausChannel ch = sto_channel(blocks, spec, bath);
        const TransitionMatrix g = transition_matrix(ch, spec);
        const Matrix rho = random_density(d, rng);
        const Matrix out = ch.apply(rho);
        Excess e;
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                if (r == c) continue;
                const double bound = symmetric_bound(rho, g, spec, r, c);
                const double achieved = std::abs(out(r, c));
                e.excess = std::max(e.excess, achieved - bound);
                e.ratio_first = std::max(e.ratio_first, ratio(achieved, bound));
            }
        }
        return e;
    });
    return reduce(parts);
}

SweepStats overlap_sweep(double q, int truncation, int count, std::uint64_t seed, BathTail tail, Execution ex) {
    const SystemSpec spec = SystemSpec::ladder(3);
    const BathSpec bath = BathSpec::from_q(q, truncation);
    const auto shells = energy_shells(spec, bath);
    const auto parts = map_indexed<Excess>(count, ex, [&](int i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const auto family = static_cast<BlockFamily>(rng.below(3));
        const BlockUnitary blocks = random_blocks(shells, 3, family, rng);
        const KrausChannel ch = sto_channel(blocks, spec, bath, tail);
        Matrix rho = Matrix::Zero(3, 3);
        rho(1, 0) = random_amplitude(rng);
        rho(2, 1) = random_amplitude(rng);
        const Matrix out = ch.apply(rho);
        const OverlapBounds b = overlap_merge_bounds(std::abs(rho(1, 0)), std::abs(rho(2, 1)), q);
        const double a10 = std::abs(out(1, 0)), a21 = std::abs(out(2, 1));
        return Excess{std::max(a10 - b.down, a21 - b.up), ratio(a10, b.down), ratio(a21, b.up)};
    });
    return reduce(parts);
}

}  // namespace thermops::kernels
