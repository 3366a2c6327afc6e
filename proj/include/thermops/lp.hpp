// lp.hpp: small dense two-phase simplex (Bland's rule)

#pragma once

#include "thermops/core.hpp"

namespace thermops {

// maximize objective . x  subject to  equality x = rhs,  x >= 0
struct LinearProgram {
    Vector objective;
    RealMatrix equality;
    Vector rhs;
};

enum class LpStatus { optimal, infeasible };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    Vector x;
    // L1 norm of the equality residual left by phase one
    double residual = 0.0;
};

// Dense tableau simplex. Feasible means phase one drives the residual to <= tol.
// Unbounded problems throw std::logic_error: every program built here lives in a
// bounded region.
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-9);

}  // namespace thermops
