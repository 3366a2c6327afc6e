// bounds.hpp: closed-form coherence bounds and their saturation checks

#pragma once

#include "thermops/channels.hpp"
#include "thermops/core.hpp"

#include <string_view>

namespace thermops {

enum class MergeStrategy { identity, simultaneous_beta_swap };

std::string_view to_string(MergeStrategy s) noexcept;

struct MergeBoundReport {
    double r10 = 0.0;
    double r32 = 0.0;
    double x = 0.0;
    double bound = 0.0;
    MergeStrategy strategy = MergeStrategy::identity;
};

// sum' |rho_cd| sqrt(G_ic G_jd) over pairs with E_c - E_d = E_i - E_j.
double symmetric_bound(const Matrix& rho, const TransitionMatrix& g, const SystemSpec& spec, int i, int j);

// |rho'_10| <= max(r10, (1 - x) r10 + r32); ties resolve to identity.
MergeBoundReport merge_down_bound(double r10, double r32, double x);
// |rho'_32| <= max(x r10, r32)
MergeBoundReport merge_up_bound(double r10, double r32, double x);

// Qutrit ladder, overlapping terms a = |rho_10|, b = |rho_21|.
struct OverlapBounds {
    double down = 0.0;  // bound on |rho'_10|
    double up = 0.0;    // bound on |rho'_21|
};
OverlapBounds overlap_merge_bounds(double a, double b, double q);

enum class DecouplingCondition { holds, fails, vacuous };
std::string_view to_string(DecouplingCondition c) noexcept;

// Two-qubit state p|0><0| (x) rho0 + (1-p)|1><1| (x) rho1 with equal diagonals
// and off-diagonals a, b. Compares the coherence the product of marginals needs
// against the largest coherence any thermal operation can leave behind.
struct DecouplingWitness {
    double p = 0.0, a = 0.0, b = 0.0, q = 0.0;
    double product_coherence = 0.0;
    double exto_bound = 0.0;
    bool reachable = true;
    DecouplingCondition condition = DecouplingCondition::fails;
    double condition_threshold = 0.0;  // a p (p + q - 1) / (1 - p)^2
};
DecouplingWitness decoupling_witness(double p, double a, double b, double q);

// sqrt(p00 (1 - (1 - p00)/q)); p00 in [1 - q, 1]
double qubit_damping_bound(double p00, double q);

struct SaturationReport {
    double achieved = 0.0;
    double bound = 0.0;
    double ratio = 1.0;  // achieved / bound, defined as 1 when the bound vanishes
};

SaturationReport saturation_check(const KrausChannel& ch, const Matrix& rho, const SystemSpec& spec, int i, int j);

}  // namespace thermops
