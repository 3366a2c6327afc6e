#include "thermops/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace thermops {

namespace {

void check_magnitudes(double r10, double r32) {
    if (!(r10 >= 0.0) || !(r32 >= 0.0)) throw std::invalid_argument("merge bound: magnitudes must be >= 0");
}

void check_open_unit(double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument(std::string(what) + " must lie in (0,1)");
}

}  // namespace

std::string_view to_string(MergeStrategy s) noexcept {
    return s == MergeStrategy::identity ? "identity" : "simultaneous-beta-swap";
}

std::string_view to_string(DecouplingCondition c) noexcept {
    switch (c) {
        case DecouplingCondition::holds: return "holds";
        case DecouplingCondition::fails: return "fails";
        default: return "vacuous";
    }
}

double symmetric_bound(const Matrix& rho, const TransitionMatrix& g, const SystemSpec& spec, int i, int j) {
    const int d = spec.dim();
    if (rho.rows() != d || g.dim() != d) throw std::invalid_argument("symmetric_bound: dimension mismatch");
    if (i < 0 || j < 0 || i >= d || j >= d) throw std::out_of_range("symmetric_bound: index out of range");
    const int gap = spec.energy(i) - spec.energy(j);
    double s = 0.0;
    for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
            if (spec.energy(c) - spec.energy(e) == gap)
                s += std::abs(rho(c, e)) * std::sqrt(std::max(0.0, g(i, c) * g(j, e)));
    return s;
}

MergeBoundReport merge_down_bound(double r10, double r32, double x) {
    check_magnitudes(r10, r32);
    check_open_unit(x, "merge_down_bound: x");
    const double merged = (1.0 - x) * r10 + r32;
    MergeBoundReport r{r10, r32, x, std::max(r10, merged), MergeStrategy::identity};
    if (merged > r10) r.strategy = MergeStrategy::simultaneous_beta_swap;
    return r;
}

MergeBoundReport merge_up_bound(double r10, double r32, double x) {
    check_magnitudes(r10, r32);
    check_open_unit(x, "merge_up_bound: x");
    const double lifted = x * r10;
    MergeBoundReport r{r10, r32, x, std::max(lifted, r32), MergeStrategy::identity};
    if (lifted > r32) r.strategy = MergeStrategy::simultaneous_beta_swap;
    return r;
}

OverlapBounds overlap_merge_bounds(double a, double b, double q) {
    check_magnitudes(a, b);
    check_open_unit(q, "overlap_merge_bounds: q");
    OverlapBounds o;
    o.down = std::max(std::sqrt((1.0 - q * q) * a * a + b * b), a);
    o.up = std::max(a * q, b);
    return o;
}

DecouplingWitness decoupling_witness(double p, double a, double b, double q) {
    check_open_unit(p, "decoupling_witness: p");
    check_open_unit(q, "decoupling_witness: q");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("decoupling_witness: a and b must be > 0");

    DecouplingWitness w{p, a, b, q};
    w.product_coherence = p * (p * a + (1.0 - p) * b);
    w.exto_bound = std::max((1.0 - q) * p * a + (1.0 - p) * b, p * a);
    w.reachable = w.product_coherence <= w.exto_bound + 1e-12;
    const double window = p + q - 1.0;
    w.condition_threshold = a * p * window / ((1.0 - p) * (1.0 - p));
    if (window <= 0.0)
        w.condition = DecouplingCondition::vacuous;
    else
        // Strict inequality: b within rounding of the threshold is not certified.
        w.condition = (a < b && b < w.condition_threshold * (1.0 - 1e-12)) ? DecouplingCondition::holds
                                                                              : DecouplingCondition::fails;
    return w;
}

double qubit_damping_bound(double p00, double q) {
    check_open_unit(q, "qubit_damping_bound: q");
    if (!(p00 >= 1.0 - q - 1e-14 && p00 <= 1.0 + 1e-14))
        throw std::domain_error("qubit_damping_bound: p00 must lie in [1 - q, 1]");
    return std::sqrt(std::max(0.0, p00 * qubit_partner_p11(p00, q)));
}

SaturationReport saturation_check(const KrausChannel& ch, const Matrix& rho, const SystemSpec& spec, int i, int j) {
    SaturationReport r;
    r.achieved = std::abs(ch.apply(rho)(i, j));
    r.bound = symmetric_bound(rho, transition_matrix(ch, spec), spec, i, j);
    if (r.bound > 0.0)
        r.ratio = r.achieved / r.bound;
    else
        r.ratio = r.achieved > 1e-14 ? kInf : 1.0;
    return r;
}

}  // namespace thermops
