#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "stablecut/errors.hpp"

namespace stablecut {

// Equality-form linear program: minimize c'x subject to A x = b, x >= 0.
struct LpProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  Eigen::VectorXd x;
  double objective = 0.0;
  std::vector<int> basis;  // basic variable per row; >= n() means artificial
  long pivots = 0;
};

// Dense two-phase revised simplex with Bland's rule throughout: the entering
// variable is the lowest-index column with negative reduced cost, the leaving
// row is the minimum-ratio row with the lowest-index basic variable on ties.
// That pair of choices rules out cycling, so termination needs no perturbation
// machinery.  The basis inverse is maintained by elementary row updates and
// refactorized from scratch periodically to shed accumulated roundoff.
class RevisedSimplex {
 public:
  explicit RevisedSimplex(LpProblem prob, double pivot_tol = 1e-9, long max_pivots = 2'000'000)
      : prob_(std::move(prob)), tol_(pivot_tol), max_pivots_(max_pivots) {
    const auto rows = prob_.A.rows();
    if (prob_.b.size() != rows) throw solver_error("lp: b size does not match A rows");
    if (prob_.c.size() != prob_.A.cols()) throw solver_error("lp: c size does not match A cols");
    // artificial starting basis needs b >= 0
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (prob_.b(i) < 0.0) {
        prob_.A.row(i) = -prob_.A.row(i);
        prob_.b(i) = -prob_.b(i);
      }
    }
  }

  LpResult solve() {
    const Eigen::Index m = prob_.A.rows();
    const Eigen::Index n = prob_.A.cols();

    basis_.resize(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis_[static_cast<std::size_t>(i)] = static_cast<int>(n + i);
    binv_ = Eigen::MatrixXd::Identity(m, m);
    xb_ = prob_.b;
    pivots_ = 0;

    // phase 1: minimize the sum of artificials
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(n + m);
    cost1.tail(m).setOnes();
    run_phase(cost1, /*allow_artificials=*/true);
    const double infeas = xb_sum_over_artificials();
    if (infeas > 1e-7 * (1.0 + prob_.b.cwiseAbs().sum()))
      return finish(LpStatus::infeasible);

    // phase 2: original costs, artificials pinned (cost 0, barred from
    // entering; any still basic sit at zero on redundant rows)
    Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(n + m);
    cost2.head(n) = prob_.c;
    const bool bounded = run_phase(cost2, /*allow_artificials=*/false);
    return finish(bounded ? LpStatus::optimal : LpStatus::unbounded);
  }

 private:
  Eigen::VectorXd column(Eigen::Index j) const {
    const Eigen::Index m = prob_.A.rows();
    const Eigen::Index n = prob_.A.cols();
    if (j < n) return prob_.A.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(j - n) = 1.0;
    return e;
  }

  double xb_sum_over_artificials() const {
    const Eigen::Index n = prob_.A.cols();
    double s = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] >= n) s += std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
    return s;
  }

  void refactorize() {
    const Eigen::Index m = prob_.A.rows();
    Eigen::MatrixXd B(m, m);
    for (Eigen::Index i = 0; i < m; ++i) B.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    binv_ = lu.inverse();
    xb_ = binv_ * prob_.b;
  }

  // returns false on detected unboundedness
  bool run_phase(const Eigen::VectorXd& cost, bool allow_artificials) {
    const Eigen::Index m = prob_.A.rows();
    const Eigen::Index n = prob_.A.cols();
    const Eigen::Index ncols = allow_artificials ? n + m : n;

    while (true) {
      if (pivots_ > max_pivots_) throw solver_error("lp: pivot budget exceeded");

      // y = c_B' B^-1, then Bland scan for the entering column
      Eigen::VectorXd cb(m);
      for (Eigen::Index i = 0; i < m; ++i) cb(i) = cost(basis_[static_cast<std::size_t>(i)]);
      const Eigen::RowVectorXd y = cb.transpose() * binv_;

      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (is_basic(j)) continue;
        const double reduced = cost(j) - (j < n ? y.dot(prob_.A.col(j)) : y(j - n));
        if (reduced < -tol_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;  // optimal for this phase

      const Eigen::VectorXd d = binv_ * column(entering);
      Eigen::Index leave_row = -1;
      double best_ratio = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (d(i) > tol_) {
          const double ratio = std::max(0.0, xb_(i)) / d(i);
          if (leave_row < 0 || ratio < best_ratio - tol_ ||
              (ratio < best_ratio + tol_ &&
               basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave_row)])) {
            leave_row = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave_row < 0) return false;  // unbounded ray

      // pivot: update x_B, basis list, and B^-1 by an elementary row sweep
      xb_ -= best_ratio * d;
      xb_(leave_row) = best_ratio;
      basis_[static_cast<std::size_t>(leave_row)] = static_cast<int>(entering);
      const double piv = d(leave_row);
      binv_.row(leave_row) /= piv;
      for (Eigen::Index i = 0; i < m; ++i)
        if (i != leave_row) binv_.row(i) -= d(i) * binv_.row(leave_row);
      ++pivots_;
      if (pivots_ % refactor_every_ == 0) refactorize();
    }
  }

  bool is_basic(Eigen::Index j) const {
    for (int b : basis_)
      if (b == static_cast<int>(j)) return true;
    return false;
  }

  LpResult finish(LpStatus status) {
    const Eigen::Index m = prob_.A.rows();
    const Eigen::Index n = prob_.A.cols();
    LpResult r;
    r.status = status;
    r.basis = basis_;
    r.pivots = pivots_;
    r.x = Eigen::VectorXd::Zero(n);
    if (status != LpStatus::infeasible) {
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] < n) r.x(basis_[i]) = std::max(0.0, xb_(static_cast<Eigen::Index>(i)));
      r.objective = prob_.c.dot(r.x);
    }
    return r;
  }

  LpProblem prob_;
  double tol_;
  long max_pivots_;
  long refactor_every_ = 128;

  std::vector<int> basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  long pivots_ = 0;
};

inline LpResult solve_lp(const LpProblem& prob, double pivot_tol = 1e-9) {
  RevisedSimplex s(prob, pivot_tol);
  return s.solve();
}

}  // namespace stablecut
