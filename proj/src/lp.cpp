#include "thermops/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace thermops {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kMaxIterations = 100000;

class Tableau {
public:
    Tableau(const LinearProgram& lp) : m_(lp.equality.rows()), n_(lp.equality.cols()) {
        t_ = RealMatrix::Zero(m_, n_ + m_ + 1);
        basis_.resize(static_cast<std::size_t>(m_));
        active_.assign(static_cast<std::size_t>(m_), true);
        for (Eigen::Index i = 0; i < m_; ++i) {
            const double sign = lp.rhs(i) < 0.0 ? -1.0 : 1.0;
            t_.row(i).head(n_) = sign * lp.equality.row(i);
            t_(i, n_ + i) = 1.0;
            t_(i, rhs_col()) = sign * lp.rhs(i);
            basis_[static_cast<std::size_t>(i)] = n_ + i;
        }
    }

    Eigen::Index rhs_col() const { return n_ + m_; }
    bool artificial(Eigen::Index col) const { return col >= n_ && col < n_ + m_; }

    // Maximizes cost . (x, artificials) starting from the current basis.
    // Columns >= allowed_cols never enter.
    void optimize(const Vector& cost, Eigen::Index allowed_cols) {
        for (int iter = 0; iter < kMaxIterations; ++iter) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < allowed_cols; ++j) {
                if (in_basis(j)) continue;
                double r = cost(j);
                for (Eigen::Index i = 0; i < m_; ++i)
                    if (active_[static_cast<std::size_t>(i)]) r -= cost(basis_[static_cast<std::size_t>(i)]) * t_(i, j);
                if (r > kPivotEps) {
                    enter = j;  // Bland: lowest index with positive reduced cost
                    break;
                }
            }
            if (enter < 0) return;

            Eigen::Index leave = -1;
            double best = 0.0;
            for (Eigen::Index i = 0; i < m_; ++i) {
                if (!active_[static_cast<std::size_t>(i)] || t_(i, enter) <= kPivotEps) continue;
                const double ratio = t_(i, rhs_col()) / t_(i, enter);
                if (leave < 0 || ratio < best - 1e-13 ||
                    (std::abs(ratio - best) <= 1e-13 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) throw std::logic_error("solve_lp: unbounded program");
            pivot(leave, enter);
        }
        throw std::logic_error("solve_lp: iteration limit reached");
    }

    void pivot(Eigen::Index row, Eigen::Index col) {
        t_.row(row) /= t_(row, col);
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (i == row || !active_[static_cast<std::size_t>(i)]) continue;
            const double f = t_(i, col);
            if (f != 0.0) t_.row(i) -= f * t_.row(row);
        }
        basis_[static_cast<std::size_t>(row)] = col;
    }

    // After phase one: pivot artificials out of the basis or drop their (redundant) rows.
    void expel_artificials() {
        for (Eigen::Index i = 0; i < m_; ++i) {
            if (!active_[static_cast<std::size_t>(i)] || !artificial(basis_[static_cast<std::size_t>(i)])) continue;
            Eigen::Index col = -1;
            double largest = 1e-9;
            for (Eigen::Index j = 0; j < n_; ++j) {
                if (!in_basis(j) && std::abs(t_(i, j)) > largest) {
                    col = j;
                    largest = std::abs(t_(i, j));
                }
            }
            if (col >= 0)
                pivot(i, col);
            else
                active_[static_cast<std::size_t>(i)] = false;
        }
    }

    double artificial_sum() const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i)
            if (active_[static_cast<std::size_t>(i)] && artificial(basis_[static_cast<std::size_t>(i)])) s += std::abs(t_(i, rhs_col()));
        return s;
    }

    Vector solution() const {
        Vector x = Vector::Zero(n_);
        for (Eigen::Index i = 0; i < m_; ++i) {
            const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
            if (active_[static_cast<std::size_t>(i)] && b < n_) x(b) = std::max(0.0, t_(i, rhs_col()));
        }
        return x;
    }

    Eigen::Index rows() const { return m_; }
    Eigen::Index cols() const { return n_; }

private:
    bool in_basis(Eigen::Index col) const {
        for (Eigen::Index i = 0; i < m_; ++i)
            if (active_[static_cast<std::size_t>(i)] && basis_[static_cast<std::size_t>(i)] == col) return true;
        return false;
    }

    Eigen::Index m_, n_;
    RealMatrix t_;
    std::vector<Eigen::Index> basis_;
    std::vector<bool> active_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
    const Eigen::Index m = lp.equality.rows(), n = lp.equality.cols();
    if (lp.objective.size() != n || lp.rhs.size() != m) throw std::invalid_argument("solve_lp: inconsistent dimensions");
    if (n == 0) throw std::invalid_argument("solve_lp: no variables");

    Tableau tab(lp);
    Vector phase1 = Vector::Zero(n + m);
    phase1.tail(m).setConstant(-1.0);
    tab.optimize(phase1, n);

    LpSolution sol;
    sol.residual = tab.artificial_sum();
    if (sol.residual > tol) {
        sol.status = LpStatus::infeasible;
        return sol;
    }
    tab.expel_artificials();

    Vector phase2 = Vector::Zero(n + m);
    phase2.head(n) = lp.objective;
    tab.optimize(phase2, n);

    sol.status = LpStatus::optimal;
    sol.x = tab.solution();
    sol.value = lp.objective.dot(sol.x);
    return sol;
}

}  // namespace thermops
