// kernels.hpp: batch kernels with a serial reference and an OpenMP path
//
// Every kernel maps an index range through a pure per-index function and merges
// results by index, so Execution::serial and Execution::parallel return
// bit-identical output. The serial path is the reference the tests compare
// against; the library's public cone functions use the parallel path.

#pragma once

#include "thermops/channels.hpp"
#include "thermops/cones.hpp"
#include "thermops/core.hpp"

#include <cstdint>
#include <vector>

namespace thermops {

enum class Execution { serial, parallel };

namespace kernels {

std::vector<Vector> elto_points(const Vector& p, const Vector& gamma, int depth, int n, std::uint64_t seed,
                                Execution ex);

std::vector<Vector> sto_points(const Vector& p, const BathSpec& bath, int n, std::uint64_t seed, Execution ex);

// Support value and maximizing vertex per direction.
struct SupportBatch {
    std::vector<SupportSample> supports;
    std::vector<Vector> vertices;
};
SupportBatch support_sweep(const Vector& p, const Vector& gamma, const std::vector<Vector>& directions, Execution ex);

// 1 where the point lies in the TO cone of p (LP residual <= tol).
std::vector<char> membership_batch(const std::vector<Vector>& points, const Vector& p, const Vector& gamma, double tol,
                                   Execution ex);

// Largest violation of the supporting halfspaces by any point (<= 0 means all inside).
double halfspace_violation(const std::vector<Vector>& points, const std::vector<SupportSample>& supports, Execution ex);

// Aggregate of a random-channel bound sweep, reduced in index order.
struct SweepStats {
    std::size_t count = 0;
    double max_excess = -kInf;    // max over samples of achieved - bound (both bounds)
    double best_ratio_first = 0;  // max achieved/bound for the first bound
    double best_ratio_second = 0; // same for the second bound
};

// Random four-level STOs (levels 0,1,3,4; bath quantum 3 = E2; x = exp(-beta E2))
// applied to random mode-E1 operators; compares |rho'_10| and |rho'_32| with the
// merge-down and merge-up bounds.
SweepStats merge_sweep(double x, int truncation, int count, std::uint64_t seed, BathTail tail, Execution ex);

// Random STOs on the d-level ladder applied to random states; every output
// entry is compared with symmetric_bound under the channel's own G.
SweepStats cauchy_schwarz_sweep(int d, double q, int truncation, int count, std::uint64_t seed, Execution ex);

// Random qutrit STOs against the overlapping-gap bounds on |rho'_10| and |rho'_21|.
SweepStats overlap_sweep(double q, int truncation, int count, std::uint64_t seed, BathTail tail, Execution ex);

}  // namespace kernels
}  // namespace thermops
