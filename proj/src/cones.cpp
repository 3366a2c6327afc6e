#include "thermops/cones.hpp"

#include "thermops/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thermops {

namespace {

void check_distribution(const Vector& p, const char* what) {
    if (p.size() == 0 || p.minCoeff() < -1e-12 || std::abs(p.sum() - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": not a probability vector");
}

std::vector<std::pair<int, int>> level_pairs(int d) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
    return pairs;
}

const Vector& plane_axis(int which) {
    static const Vector e1 = (Vector(3) << 1.0, -1.0, 0.0).finished() / std::sqrt(2.0);
    static const Vector e2 = (Vector(3) << 1.0, 1.0, -2.0).finished() / std::sqrt(6.0);
    return which == 0 ? e1 : e2;
}

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a, const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::base: return "base";
        case Provenance::to_extreme: return "TO-extreme";
        case Provenance::elto_sequence: return "ElTO-sequence";
        default: return "STO-sample";
    }
}

Provenance provenance_from_string(std::string_view s) {
    for (Provenance p : {Provenance::base, Provenance::to_extreme, Provenance::elto_sequence, Provenance::sto_sample})
        if (to_string(p) == s) return p;
    throw std::invalid_argument("unknown provenance tag: " + std::string(s));
}

LinearProgram gibbs_stochastic_lp(const Vector& p, const Vector& gamma, const Vector& objective_dir, const Vector* target) {
    const Eigen::Index d = p.size();
    if (gamma.size() != d || objective_dir.size() != d || (target && target->size() != d))
        throw std::invalid_argument("gibbs_stochastic_lp: size mismatch");
    const Eigen::Index vars = d * d;
    const Eigen::Index rows = target ? 3 * d : 2 * d;
    auto var = [d](Eigen::Index to, Eigen::Index from) { return from * d + to; };

    LinearProgram lp;
    lp.objective = Vector::Zero(vars);
    lp.equality = RealMatrix::Zero(rows, vars);
    lp.rhs = Vector::Zero(rows);
    for (Eigen::Index from = 0; from < d; ++from)
        for (Eigen::Index to = 0; to < d; ++to) lp.objective(var(to, from)) = objective_dir(to) * p(from);

    for (Eigen::Index from = 0; from < d; ++from) {
        for (Eigen::Index to = 0; to < d; ++to) lp.equality(from, var(to, from)) = 1.0;
        lp.rhs(from) = 1.0;
    }
    for (Eigen::Index to = 0; to < d; ++to) {
        for (Eigen::Index from = 0; from < d; ++from) lp.equality(d + to, var(to, from)) = gamma(from);
        lp.rhs(d + to) = gamma(to);
    }
    if (target) {
        for (Eigen::Index to = 0; to < d; ++to) {
            for (Eigen::Index from = 0; from < d; ++from) lp.equality(2 * d + to, var(to, from)) = p(from);
            lp.rhs(2 * d + to) = (*target)(to);
        }
    }
    return lp;
}

SupportSample to_support_point(const Vector& p, const Vector& gamma, const Vector& c, Vector* argmax) {
    check_distribution(p, "to_support");
    check_distribution(gamma, "to_support");
    if (gamma.minCoeff() <= 0.0) throw std::invalid_argument("to_support: Gibbs vector must be strictly positive");
    const LpSolution sol = solve_lp(gibbs_stochastic_lp(p, gamma, c));
    if (sol.status != LpStatus::optimal) throw std::runtime_error("to_support: Gibbs-stochastic program infeasible");
    if (argmax) {
        const Eigen::Index d = p.size();
        const RealMatrix g = Eigen::Map<const RealMatrix>(sol.x.data(), d, d);
        *argmax = g * p;
    }
    return {c, sol.value};
}

double to_support(const Vector& p, const Vector& gamma, const Vector& c) {
    return to_support_point(p, gamma, c, nullptr).value;
}

bool to_membership(const Vector& x, const Vector& p, const Vector& gamma, double tol) {
    check_distribution(p, "to_membership");
    check_distribution(gamma, "to_membership");
    if (x.size() != p.size()) return false;
    const Vector zero = Vector::Zero(p.size());
    return solve_lp(gibbs_stochastic_lp(p, gamma, zero, &x), tol).status == LpStatus::optimal;
}

QubitSegment qubit_to_segment(double p0, double q) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw std::invalid_argument("qubit_to_segment: p0 must lie in [0,1]");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("qubit_to_segment: q must lie in (0,1)");
    return {p0, 1.0 - p0 * q};
}

bool qubit_cto_check(const Vector& p, const Vector& target, const Vector& gamma, double tol) {
    if (p.size() != 2 || target.size() != 2 || gamma.size() != 2)
        throw std::invalid_argument("qubit_cto_check: qubit distributions required");
    const bool max_ok = renyi_divergence(p, gamma, kInf) >= renyi_divergence(target, gamma, kInf) - tol;
    const bool min_ok = renyi_divergence(p, gamma, -kInf) >= renyi_divergence(target, gamma, -kInf) - tol;
    return max_ok && min_ok;
}

std::vector<Vector> simplex_plane_directions(int count) {
    if (count < 1) throw std::invalid_argument("simplex_plane_directions: count must be >= 1");
    std::vector<Vector> dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double th = 2.0 * std::numbers::pi * k / count;
        dirs.push_back(std::cos(th) * plane_axis(0) + std::sin(th) * plane_axis(1));
    }
    return dirs;
}

RealMatrix two_level_gibbs_stochastic(int d, int i, int j, double ratio, double stay) {
    if (i < 0 || j <= i || j >= d) throw std::invalid_argument("two_level_gibbs_stochastic: need 0 <= i < j < d");
    if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("two_level_gibbs_stochastic: ratio must lie in (0,1]");
    if (stay < 1.0 - ratio - 1e-15 || stay > 1.0 + 1e-15)
        throw std::domain_error("two_level_gibbs_stochastic: p(i|i) outside [1 - ratio, 1]");
    RealMatrix g = RealMatrix::Identity(d, d);
    const double leave = 1.0 - stay;
    g(i, i) = stay;
    g(j, i) = leave;
    g(i, j) = leave / ratio;
    g(j, j) = 1.0 - leave / ratio;
    return g;
}

std::vector<Vector> elto_sequence(const Vector& p, const Vector& gamma, int depth, std::uint64_t seed, std::uint64_t index) {
    const int d = static_cast<int>(p.size());
    const auto pairs = level_pairs(d);
    Rng rng(seed, index);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(depth));
    Vector x = p;
    for (int step = 0; step < depth; ++step) {
        const auto [i, j] = pairs[rng.below(pairs.size())];
        const double ratio = gamma(j) / gamma(i);
        const double stay = rng.below(3) == 0 ? 1.0 - ratio : rng.uniform(1.0 - ratio, 1.0);
        x = two_level_gibbs_stochastic(d, i, j, ratio, stay) * x;
        out.push_back(x);
    }
    return out;
}

std::vector<Vector> beta_swap_compositions(const Vector& p, const Vector& gamma, int depth) {
    const int d = static_cast<int>(p.size());
    std::vector<RealMatrix> swaps;
    for (const auto& [i, j] : level_pairs(d)) {
        const double ratio = gamma(j) / gamma(i);
        swaps.push_back(two_level_gibbs_stochastic(d, i, j, ratio, 1.0 - ratio));
    }
    std::vector<Vector> all, frontier{p};
    for (int level = 0; level < depth; ++level) {
        std::vector<Vector> next;
        next.reserve(frontier.size() * swaps.size());
        for (const auto& x : frontier)
            for (const auto& s : swaps) next.push_back(s * x);
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

std::vector<Vector> elto_cone_sample(const Vector& p, const Vector& gamma, int depth, int n, std::uint64_t seed) {
    return kernels::elto_points(p, gamma, depth, n, seed, Execution::parallel);
}

BlockUnitary random_blocks(const std::vector<Shell>& shells, int dim, BlockFamily family, Rng& rng) {
    std::vector<Matrix> blocks;
    blocks.reserve(shells.size());
    switch (family) {
        case BlockFamily::haar:
            for (const Shell& s : shells) blocks.push_back(haar_unitary(s.size(), rng));
            break;
        case BlockFamily::permutation:
            for (const Shell& s : shells) {
                std::vector<int> perm(static_cast<std::size_t>(s.size()));
                for (int i = 0; i < s.size(); ++i) perm[static_cast<std::size_t>(i)] = i;
                for (int i = s.size() - 1; i > 0; --i)
                    std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
                Matrix u = Matrix::Zero(s.size(), s.size());
                for (int c = 0; c < s.size(); ++c) u(perm[static_cast<std::size_t>(c)], c) = 1.0;
                blocks.push_back(std::move(u));
            }
            break;
        case BlockFamily::damping: {
            // Qubit-optimal blocks embedded on one adjacent level pair (a, a+1):
            // cos = r^{m/2} with m the bath occupation paired with level a.
            const int a = dim > 1 ? static_cast<int>(rng.below(static_cast<std::uint64_t>(dim - 1))) : 0;
            const double r = rng.uniform();
            for (const Shell& s : shells) {
                Matrix u = Matrix::Identity(s.size(), s.size());
                const int pa = s.position_of(a), pb = s.position_of(a + 1);
                if (pa >= 0 && pb >= 0) {
                    const double c = std::pow(r, 0.5 * s.bath[static_cast<std::size_t>(pa)]);
                    const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
                    u(pa, pa) = c;
                    u(pb, pb) = c;
                    u(pa, pb) = sn;
                    u(pb, pa) = -sn;
                }
                blocks.push_back(std::move(u));
            }
            break;
        }
    }
    return BlockUnitary(dim, std::move(blocks));
}

Vector sto_sample_point(const Vector& p, const BathSpec& bath, std::uint64_t seed, std::uint64_t index) {
    static const SystemSpec qutrit = SystemSpec::ladder(3);
    if (p.size() != 3) throw std::invalid_argument("sto_sample_point: qutrit distribution required");
    const auto shells = energy_shells(qutrit, bath);
    Rng rng(seed, index);
    const auto family = static_cast<BlockFamily>(rng.below(3));
    const BlockUnitary blocks = random_blocks(shells, 3, family, rng);
    return sto_transition(blocks, qutrit, bath, BathTail::identity) * p;
}

std::vector<Vector> sto_cone_sample(const Vector& p, const BathSpec& bath, int n, std::uint64_t seed) {
    return kernels::sto_points(p, bath, n, seed, Execution::parallel);
}

std::pair<double, double> simplex_plane_coords(const Vector& x) {
    if (x.size() != 3) throw std::invalid_argument("simplex_plane_coords: qutrit vector required");
    return {x.dot(plane_axis(0)), x.dot(plane_axis(1))};
}

std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& pt : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pt) <= 0.0) --k;
        hull[k++] = pt;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double hull_inclusion_margin(const std::vector<Vector>& inner, const std::vector<Vector>& outer) {
    std::vector<std::pair<double, double>> opts;
    opts.reserve(outer.size());
    for (const auto& v : outer) opts.push_back(simplex_plane_coords(v));
    const auto hull = convex_hull(std::move(opts));

    double margin = kInf;
    if (hull.size() < 3) {
        for (const auto& v : inner) {
            const auto c = simplex_plane_coords(v);
            bool on = false;
            for (const auto& h : hull) on = on || (std::hypot(c.first - h.first, c.second - h.second) < 1e-12);
            if (!on) return -kInf;
            margin = std::min(margin, 0.0);
        }
        return margin;
    }
    for (const auto& v : inner) {
        const auto c = simplex_plane_coords(v);
        double inside = kInf;
        for (std::size_t e = 0; e < hull.size(); ++e) {
            const auto& a = hull[e];
            const auto& b = hull[(e + 1) % hull.size()];
            const double len = std::hypot(b.first - a.first, b.second - a.second);
            inside = std::min(inside, cross(a, b, c) / len);
        }
        margin = std::min(margin, inside);
    }
    return margin;
}

ConeApprox to_cone(const Vector& p, const Vector& gamma, int directions) {
    ConeApprox cone;
    cone.base = p;
    cone.gibbs = gamma;
    auto batch = kernels::support_sweep(p, gamma, simplex_plane_directions(directions), Execution::parallel);
    cone.supports = std::move(batch.supports);
    cone.points.push_back({p, Provenance::base});
    std::vector<Vector> seen;
    for (auto& v : batch.vertices) {
        const bool dup = std::any_of(seen.begin(), seen.end(), [&](const Vector& s) { return (s - v).cwiseAbs().maxCoeff() < 1e-12; });
        if (dup) continue;
        seen.push_back(v);
        cone.points.push_back({v, Provenance::to_extreme});
    }
    return cone;
}

}  // namespace thermops
