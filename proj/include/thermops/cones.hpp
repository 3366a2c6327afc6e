// cones.hpp: population cones: exact TO polytope via LP, sampled ElTO/STO inner sets
//
// The populations reachable from p under thermal operations are {G p : G
// Gibbs-stochastic}. That set is a polytope; it is described here by support
// values along sampled directions and by exact LP membership. ElTO and STO cones
// are only sampled (inner approximations).

#pragma once

#include "thermops/channels.hpp"
#include "thermops/core.hpp"
#include "thermops/lp.hpp"
#include "thermops/random.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace thermops {

enum class Provenance { base, to_extreme, elto_sequence, sto_sample };

std::string_view to_string(Provenance p) noexcept;
Provenance provenance_from_string(std::string_view s);

struct SupportSample {
    Vector direction;
    double value = 0.0;
};

struct ConePoint {
    Vector x;
    Provenance provenance = Provenance::base;
};

struct ConeApprox {
    Vector base;
    Vector gibbs;
    std::vector<SupportSample> supports;
    std::vector<ConePoint> points;
};

// LP over the d^2 entries of G (column-major, G(k',k) at k*d + k'):
// G >= 0, columns sum to one, G gamma = gamma, and optionally G p = target.
LinearProgram gibbs_stochastic_lp(const Vector& p, const Vector& gamma, const Vector& objective_dir,
                                  const Vector* target = nullptr);

// max c . (G p) over Gibbs-stochastic G
double to_support(const Vector& p, const Vector& gamma, const Vector& c);
// Same, also returning the maximizing image G p (a vertex of the TO polytope).
SupportSample to_support_point(const Vector& p, const Vector& gamma, const Vector& c, Vector* argmax);

bool to_membership(const Vector& x, const Vector& p, const Vector& gamma, double tol = 1e-9);

// Qubit TO cone as occupations of level 0: {p0, 1 - p0 q}.
struct QubitSegment {
    double start = 0.0;  // p0 itself
    double end = 0.0;    // beta-swap image
    double lo() const noexcept { return start < end ? start : end; }
    double hi() const noexcept { return start < end ? end : start; }
    bool contains(double x0, double tol = 1e-9) const noexcept { return x0 >= lo() - tol && x0 <= hi() + tol; }
};
QubitSegment qubit_to_segment(double p0, double q);

// D_inf and D_-inf monotonicity test for qubit distributions.
bool qubit_cto_check(const Vector& p, const Vector& target, const Vector& gamma, double tol = 1e-9);

// Unit directions in the plane sum(x) = 0 for d = 3: angle 2 pi k / count.
std::vector<Vector> simplex_plane_directions(int count);

// Two-level Gibbs-stochastic G on levels (i, j), i < j, identity elsewhere.
// ratio = gamma_j / gamma_i; stay = p(i|i) in [1 - ratio, 1].
RealMatrix two_level_gibbs_stochastic(int d, int i, int j, double ratio, double stay);

// Populations reachable by ElTO sequences. Random sequences (n of them, each
// contributing every prefix up to `depth`) plus every beta-swap composition up
// to `depth`. Sequence s draws from Rng(seed, s), so sets grow monotonically in n and depth.
std::vector<Vector> elto_cone_sample(const Vector& p, const Vector& gamma, int depth, int n, std::uint64_t seed);

// Points of one random ElTO sequence: G_1 p, G_2 G_1 p, ... (depth entries).
// Each step picks a level pair and p(i|i): the beta-swap endpoint with
// probability 1/3, otherwise uniform over [1 - gamma_j/gamma_i, 1].
std::vector<Vector> elto_sequence(const Vector& p, const Vector& gamma, int depth, std::uint64_t seed, std::uint64_t index);

// Images of p under every composition of 1..depth pairwise beta-swaps, breadth first.
std::vector<Vector> beta_swap_compositions(const Vector& p, const Vector& gamma, int depth);

// Block-unitary families for STO sampling.
enum class BlockFamily { haar, permutation, damping };

// Random unitary blocks, one per shell.
BlockUnitary random_blocks(const std::vector<Shell>& shells, int dim, BlockFamily family, Rng& rng);

// Populations G p for n random qutrit-ladder STOs with blocks on every shell up
// to N + 2. Uses the exact identity-tail bath so every G is Gibbs-stochastic.
std::vector<Vector> sto_cone_sample(const Vector& p, const BathSpec& bath, int n, std::uint64_t seed);

// One STO sample: family and blocks drawn from Rng(seed, index).
Vector sto_sample_point(const Vector& p, const BathSpec& bath, std::uint64_t seed, std::uint64_t index);

// Orthonormal coordinates of a qutrit distribution in the plane sum(x) = 1.
std::pair<double, double> simplex_plane_coords(const Vector& x);

// Convex hull (counter-clockwise, no collinear points) of planar points.
std::vector<std::pair<double, double>> convex_hull(std::vector<std::pair<double, double>> pts);

// min over inner points of the signed distance to the hull boundary of the outer
// points (positive inside). Returns -infinity if the outer hull is degenerate and
// some inner point differs from it.
double hull_inclusion_margin(const std::vector<Vector>& inner, const std::vector<Vector>& outer);

// Points shared by both hulls (the same channel reached two ways) land on the
// boundary up to rounding; margins above -kHullTolerance count as inside.
inline constexpr double kHullTolerance = 1e-12;

// TO supports along `directions` with their argmax vertices tagged to_extreme.
ConeApprox to_cone(const Vector& p, const Vector& gamma, int directions);

}  // namespace thermops
