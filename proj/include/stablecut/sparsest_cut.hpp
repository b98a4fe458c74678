#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "stablecut/graph.hpp"
#include "stablecut/oracles.hpp"

namespace stablecut {

struct SparsestCutOutput {
  Cut cut;
  double phi = 0.0;  // sparsity of `cut`, recomputed from the instance
};

// Pluggable non-uniform sparsest-cut capability with a declared approximation
// factor.  The factor is what downstream guarantees quote (gamma > 4*alpha);
// a solver without a certified factor reports infinity and is only usable in
// non-certifying mode.
class SparsestCutSolver {
 public:
  virtual ~SparsestCutSolver() = default;
  virtual std::string name() const = 0;
  virtual double approx_factor() const = 0;
  virtual SparsestCutOutput solve(const SparsestCutInstance& inst) const = 0;
};

// Exact enumeration oracle, alpha = 1.
class ExactSparsestCut final : public SparsestCutSolver {
 public:
  explicit ExactSparsestCut(EnumLimits limits = {}) : limits_(limits) {}
  std::string name() const override { return "exact"; }
  double approx_factor() const override { return 1.0; }
  SparsestCutOutput solve(const SparsestCutInstance& inst) const override {
    const auto res = brute_sparsest_cut(inst, limits_);
    SparsestCutOutput out;
    out.cut = res.cut;
    const auto phi = sparsity(inst, out.cut);
    out.phi = phi ? *phi : 0.0;
    return out;
  }

 private:
  EnumLimits limits_;
};

// Sweep heuristic over the generalized eigenproblem L_cap x = lambda (L_dem +
// eps I) x: order vertices by the second generalized eigenvector, try every
// prefix cut and every singleton, keep the sparsest admissible one.  No
// certified factor.
class SpectralSweepSparsestCut final : public SparsestCutSolver {
 public:
  std::string name() const override { return "spectral"; }
  double approx_factor() const override { return std::numeric_limits<double>::infinity(); }

  SparsestCutOutput solve(const SparsestCutInstance& inst) const override {
    validate_sparsest_cut(inst, /*require_connected=*/false);
    const int n = inst.n;
    Eigen::MatrixXd lcap = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd ldem = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : inst.capacity) {
      lcap(e.u, e.u) += e.w;
      lcap(e.v, e.v) += e.w;
      lcap(e.u, e.v) -= e.w;
      lcap(e.v, e.u) -= e.w;
    }
    double dem_scale = 0.0;
    for (const auto& d : inst.demands) {
      ldem(d.u, d.u) += d.d;
      ldem(d.v, d.v) += d.d;
      ldem(d.u, d.v) -= d.d;
      ldem(d.v, d.u) -= d.d;
      dem_scale += d.d;
    }
    ldem += (1e-9 * (1.0 + dem_scale)) * Eigen::MatrixXd::Identity(n, n);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(lcap, ldem);
    if (eig.info() != Eigen::Success)
      throw solver_error("spectral sparsest cut: eigensolver failed");
    const Eigen::VectorXd fiedler = eig.eigenvectors().col(std::min(1, n - 1));

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (fiedler(a) != fiedler(b)) return fiedler(a) < fiedler(b);
      return a < b;
    });

    bool have = false;
    SparsestCutOutput best;
    const auto consider = [&](const Cut& cand) {
      const auto phi = sparsity(inst, cand);
      if (!phi) return;  // separates no demand
      if (!have || *phi < best.phi) {
        have = true;
        best.cut = cand;
        best.phi = *phi;
      }
    };
    std::vector<char> side(static_cast<std::size_t>(n), 0);
    for (int j = 0; j + 1 < n; ++j) {  // sweep prefixes
      side[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = 1;
      consider(Cut(side));
    }
    for (int v = 0; v < n; ++v) {  // singleton fallback
      std::vector<char> single(static_cast<std::size_t>(n), 0);
      single[static_cast<std::size_t>(v)] = 1;
      consider(Cut(single));
    }
    if (!have) throw instance_error("no cut separates any demand pair");
    return best;
  }
};

}  // namespace stablecut
