#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "stablecut/graph.hpp"

namespace stablecut {

// Signed triangle inequality on the Gram matrix: with pattern signs
// (s1, s2, s3) applied to the pairs (u,v), (v,w), (u,w),
//   s1*X_uv + s2*X_vw + s3*X_uw <= 1.
// The four patterns below (sign product -1) are exactly the triangle
// inequalities of the doubled point set {+u, -u}; every +/-1 matrix of a cut
// satisfies all of them with equality or slack 2.
struct TriangleCut {
  int u = 0, v = 0, w = 0;
  int pattern = 0;  // index into kTriangleSigns
};

inline constexpr int kTriangleSigns[4][3] = {
    {+1, +1, -1}, {+1, -1, +1}, {-1, +1, +1}, {-1, -1, -1}};

struct SdpOptions {
  double tol_psd = 1e-7;
  double tol_feas = 1e-7;
  double tol_obj = 1e-7;
  double eps_int = 1e-4;       // integrality threshold on |X_uv|
  long max_iterations = 400000;  // ADMM budget per cutting-plane round
  int max_rounds = 40;
  int cuts_per_round_factor = 5;  // add at most 5n cuts per round
  double rho = 1.0;
  double alpha = 1.6;  // over-relaxation
};

struct SdpResiduals {
  double primal_feasibility = 0.0;  // max |entry| of X - Z and s - t at exit
  double max_violation = 0.0;       // exhaustive signed-triangle scan on the gram
  double convergence_gap = 0.0;     // |<C, X - Z>|
  double min_eigenvalue = 0.0;
};

struct SdpSolution {
  Eigen::MatrixXd gram;
  double value = 0.0;
  SdpResiduals residuals;
  long iterations = 0;
  int rounds = 0;
  int active_cuts = 0;
};

struct MaxCutSdpProblem {
  int n = 0;
  Eigen::MatrixXd C;  // C_uv = -w_uv / 4, so value = W/2 + <C, X>
  double total_weight = 0.0;
};

inline MaxCutSdpProblem build_sdp(const WeightedGraph& g) {
  if (g.n() < 2) throw instance_error("sdp requires at least two vertices");
  if (g.n() > 256) throw size_cap_error("sdp: n exceeds cap 256");
  MaxCutSdpProblem p;
  p.n = g.n();
  p.total_weight = g.total_weight();
  p.C = Eigen::MatrixXd::Zero(p.n, p.n);
  for (const auto& e : g.edges()) {
    p.C(e.u, e.v) -= e.w / 4.0;
    p.C(e.v, e.u) -= e.w / 4.0;
  }
  return p;
}

inline double sdp_value(const MaxCutSdpProblem& p, const Eigen::MatrixXd& X) {
  return p.total_weight / 2.0 + (p.C.array() * X.array()).sum();
}

// (1/4) sum w_uv ||u - v||^2 computed on an arbitrary gram matrix.
inline double sdp_objective(const WeightedGraph& g, const Eigen::MatrixXd& X) {
  double v = 0.0;
  for (const auto& e : g.edges()) v += e.w * (2.0 - 2.0 * X(e.u, e.v));
  return v / 4.0;
}

// Residual of the cut/flip identity: flipping the vectors of one side of any
// cut S turns cut edges into "+" pairs and leaves the rest alone, giving
//   obj(X) = w(E(S)) + obj_rest(flipped) - obj_cut(flipped).
// It holds for every gram matrix and every cut; tests pin it to ~1e-9.
inline double flip_identity_residual(const WeightedGraph& g, const Eigen::MatrixXd& X,
                                     const Cut& s) {
  const double lhs = sdp_objective(g, X);
  double rhs = cut_weight(g, s);
  for (const auto& e : g.edges()) {
    const double flipped = is_cut_edge(s, e) ? (2.0 + 2.0 * X(e.u, e.v))    // || u + v ||^2
                                             : (2.0 - 2.0 * X(e.u, e.v));   // || u - v ||^2
    rhs += (is_cut_edge(s, e) ? -1.0 : 1.0) * e.w * flipped / 4.0;
  }
  return std::abs(lhs - rhs);
}

namespace detail {

struct TriangleCandidate {
  double violation = 0.0;
  TriangleCut cut;
};

inline bool candidate_better(const TriangleCandidate& a, const TriangleCandidate& b) {
  if (a.violation != b.violation) return a.violation > b.violation;
  if (a.cut.u != b.cut.u) return a.cut.u < b.cut.u;
  if (a.cut.v != b.cut.v) return a.cut.v < b.cut.v;
  if (a.cut.w != b.cut.w) return a.cut.w < b.cut.w;
  return a.cut.pattern < b.cut.pattern;
}

inline std::uint64_t triangle_key(int n, const TriangleCut& t) {
  return ((static_cast<std::uint64_t>(t.u) * n + t.v) * n + t.w) * 4 + t.pattern;
}

}  // namespace detail

// Exhaustive separation: max violation over all 4*C(n,3) signed triangles and
// the `limit` most violated cuts outside `skip`, ordered by (violation desc,
// lexicographic triple, pattern).
struct SeparationResult {
  double max_violation = 0.0;
  std::vector<TriangleCut> cuts;
};

inline SeparationResult separate_triangles(const Eigen::MatrixXd& X, double tol, int limit,
                                           const std::unordered_set<std::uint64_t>& skip) {
  const int n = static_cast<int>(X.rows());
  SeparationResult out;
  // bounded worst-first selection: keep the `limit` best candidates seen
  auto worse = [](const detail::TriangleCandidate& a, const detail::TriangleCandidate& b) {
    return detail::candidate_better(a, b);
  };
  std::priority_queue<detail::TriangleCandidate, std::vector<detail::TriangleCandidate>,
                      decltype(worse)>
      heap(worse);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        const double x1 = X(u, v), x2 = X(v, w), x3 = X(u, w);
        for (int pat = 0; pat < 4; ++pat) {
          const double viol = kTriangleSigns[pat][0] * x1 + kTriangleSigns[pat][1] * x2 +
                              kTriangleSigns[pat][2] * x3 - 1.0;
          if (viol <= tol) continue;
          out.max_violation = std::max(out.max_violation, viol);
          TriangleCut tc{u, v, w, pat};
          if (skip.count(detail::triangle_key(n, tc))) continue;
          heap.push(detail::TriangleCandidate{viol, tc});
          if (static_cast<int>(heap.size()) > limit) heap.pop();
        }
      }
  std::vector<detail::TriangleCandidate> picked;
  while (!heap.empty()) {
    picked.push_back(heap.top());
    heap.pop();
  }
  std::sort(picked.begin(), picked.end(), detail::candidate_better);
  for (const auto& c : picked) out.cuts.push_back(c.cut);
  return out;
}

// Operator-splitting solver for
//   maximize <C, X>  s.t.  diag X = 1,  <A_i, X> + s_i = 1,  X psd,  s >= 0.
// The affine block (X, s) and the conic block (Z, t) are alternated with
// scaled duals (U, us); the affine projection is exact because the diagonal
// rows touch only diagonal entries while the cut rows touch only off-diagonal
// entries, so one Cholesky solve in the K cut multipliers finishes the step.
// Deterministic: fixed iteration order, no randomness, residual-driven rho
// updates on a fixed cadence.
class AdmmSdp {
 public:
  AdmmSdp(const MaxCutSdpProblem& prob, const SdpOptions& opts)
      : prob_(prob), opts_(opts), n_(prob.n), rho_(opts.rho) {
    X_ = Eigen::MatrixXd::Identity(n_, n_);
    Z_ = X_;
    U_ = Eigen::MatrixXd::Zero(n_, n_);
    rebuild_scaled_cost();
  }

  void add_cuts(const std::vector<TriangleCut>& cuts) {
    for (const auto& c : cuts) {
      cuts_.push_back(c);
      const double a = 1.0 - activation(Z_, c);
      const double t0 = std::max(0.0, a);
      s_.push_back(t0);
      t_.push_back(t0);
      us_.push_back(0.0);
    }
    factorize_gram();
  }

  const std::vector<TriangleCut>& cuts() const { return cuts_; }

  // Runs until max-norm primal and dual residuals drop to `tol`, reusing the
  // current iterate.  Returns iterations spent; throws solver_error with the
  // residuals when the budget runs out.
  long run(double tol) {
    const double alpha = opts_.alpha;
    const int K = static_cast<int>(cuts_.size());
    Eigen::MatrixXd Xhat(n_, n_), M(n_, n_), Zprev(n_, n_);
    Eigen::VectorXd c(K), lambda(K), shat(K), tprev(K);
    double rp = 0.0, rd = 0.0;
    for (long iter = 1; iter <= opts_.max_iterations; ++iter) {
      // affine block
      M = Z_ - U_ + Cscaled_;
      for (int i = 0; i < K; ++i) {
        c(i) = activation(M, cuts_[static_cast<std::size_t>(i)]) + (t_[static_cast<std::size_t>(i)] - us_[static_cast<std::size_t>(i)]) - 1.0;
      }
      if (K > 0) lambda = gram_llt_.solve(c);
      X_ = M;
      for (int i = 0; i < K; ++i) {
        const auto& tc = cuts_[static_cast<std::size_t>(i)];
        const double step = 0.25 * lambda(i);
        adjust(X_, tc.u, tc.v, -step * kTriangleSigns[tc.pattern][0]);
        adjust(X_, tc.v, tc.w, -step * kTriangleSigns[tc.pattern][1]);
        adjust(X_, tc.u, tc.w, -step * kTriangleSigns[tc.pattern][2]);
        s_[static_cast<std::size_t>(i)] = (t_[static_cast<std::size_t>(i)] - us_[static_cast<std::size_t>(i)]) - 0.5 * lambda(i);
      }
      X_.diagonal().setOnes();

      // over-relaxed conic block
      Xhat = alpha * X_ + (1.0 - alpha) * Z_;
      Zprev = Z_;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Xhat + U_);
      const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
      Z_ = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
      Z_ = ((Z_ + Z_.transpose()) / 2.0).eval();
      for (int i = 0; i < K; ++i) {
        shat(i) = alpha * s_[static_cast<std::size_t>(i)] + (1.0 - alpha) * t_[static_cast<std::size_t>(i)];
        tprev(i) = t_[static_cast<std::size_t>(i)];
        t_[static_cast<std::size_t>(i)] = std::max(0.0, shat(i) + us_[static_cast<std::size_t>(i)]);
      }

      // scaled dual ascent
      U_ += Xhat - Z_;
      for (int i = 0; i < K; ++i) us_[static_cast<std::size_t>(i)] += shat(i) - t_[static_cast<std::size_t>(i)];

      rp = (X_ - Z_).cwiseAbs().maxCoeff();
      rd = rho_ * (Z_ - Zprev).cwiseAbs().maxCoeff();
      for (int i = 0; i < K; ++i) {
        rp = std::max(rp, std::abs(s_[static_cast<std::size_t>(i)] - t_[static_cast<std::size_t>(i)]));
        rd = std::max(rd, rho_ * std::abs(t_[static_cast<std::size_t>(i)] - tprev(i)));
      }
      if (rp <= tol && rd <= tol) return iter;

      if (iter % 100 == 0 && iter < 50000) {
        if (rp > 10.0 * rd) {
          rho_ *= 2.0;
          U_ /= 2.0;
          for (double& x : us_) x /= 2.0;
          rebuild_scaled_cost();
        } else if (rd > 10.0 * rp) {
          rho_ /= 2.0;
          U_ *= 2.0;
          for (double& x : us_) x *= 2.0;
          rebuild_scaled_cost();
        }
      }
    }
    std::ostringstream msg;
    msg << "sdp: iteration budget " << opts_.max_iterations
        << " exhausted; primal residual " << rp << ", dual residual " << rd << ", target " << tol;
    throw solver_error(msg.str());
  }

  const Eigen::MatrixXd& gram() const { return Z_; }
  const Eigen::MatrixXd& affine_iterate() const { return X_; }

 private:
  static void adjust(Eigen::MatrixXd& X, int a, int b, double delta) {
    X(a, b) += delta;
    X(b, a) += delta;
  }

  static double activation(const Eigen::MatrixXd& X, const TriangleCut& t) {
    return kTriangleSigns[t.pattern][0] * X(t.u, t.v) + kTriangleSigns[t.pattern][1] * X(t.v, t.w) +
           kTriangleSigns[t.pattern][2] * X(t.u, t.w);
  }

  void rebuild_scaled_cost() { Cscaled_ = prob_.C / rho_; }

  // shared-pair structure of the active cuts:  G = (1/4) A A' + (1/2) I
  void factorize_gram() {
    const int K = static_cast<int>(cuts_.size());
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(K, K);
    const auto pairs = [this](const TriangleCut& t) {
      return std::array<std::pair<int, int>, 3>{
          std::pair<int, int>{t.u, t.v}, {t.v, t.w}, {t.u, t.w}};
    };
    for (int i = 0; i < K; ++i) {
      const auto pi = pairs(cuts_[static_cast<std::size_t>(i)]);
      for (int j = i; j < K; ++j) {
        const auto pj = pairs(cuts_[static_cast<std::size_t>(j)]);
        double dot = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            if (pi[static_cast<std::size_t>(a)] == pj[static_cast<std::size_t>(b)])
              dot += kTriangleSigns[cuts_[static_cast<std::size_t>(i)].pattern][a] *
                     kTriangleSigns[cuts_[static_cast<std::size_t>(j)].pattern][b];
        G(i, j) = G(j, i) = 0.25 * dot;
      }
      G(i, i) += 0.5;
    }
    gram_llt_.compute(G);
    if (gram_llt_.info() != Eigen::Success)
      throw solver_error("sdp: cut gram factorization failed");
  }

  MaxCutSdpProblem prob_;
  SdpOptions opts_;
  int n_;
  double rho_;
  Eigen::MatrixXd X_, Z_, U_, Cscaled_;
  std::vector<TriangleCut> cuts_;
  std::vector<double> s_, t_, us_;
  Eigen::LLT<Eigen::MatrixXd> gram_llt_;
};

// Cutting-plane driver: solve with the unit-diagonal constraints, separate
// the signed triangle family exhaustively, add the worst offenders (at most
// 5n per round), and re-solve warm until the scan passes at tol_feas.
inline SdpSolution solve_sdp(const MaxCutSdpProblem& prob, const SdpOptions& opts = {}) {
  AdmmSdp engine(prob, opts);
  double tol_in = 0.5 * std::min(opts.tol_feas, opts.tol_psd);
  std::unordered_set<std::uint64_t> active;
  SdpSolution sol;
  const int limit = std::max(1, opts.cuts_per_round_factor * prob.n);
  for (int round = 1; round <= opts.max_rounds; ++round) {
    sol.iterations += engine.run(tol_in);
    sol.rounds = round;
    const auto sep = separate_triangles(engine.gram(), opts.tol_feas, limit, active);
    sol.residuals.max_violation = sep.max_violation;
    if (sep.max_violation <= opts.tol_feas) break;
    if (sep.cuts.empty()) {
      // all offenders already active: the iterate is not yet tight enough
      tol_in *= 0.25;
      continue;
    }
    for (const auto& c : sep.cuts) active.insert(detail::triangle_key(prob.n, c));
    engine.add_cuts(sep.cuts);
    if (round == opts.max_rounds)
      throw solver_error("sdp: cutting-plane round budget exhausted with violation " +
                         std::to_string(sep.max_violation));
  }
  sol.gram = engine.gram();
  sol.active_cuts = static_cast<int>(engine.cuts().size());
  sol.value = sdp_value(prob, sol.gram);
  sol.residuals.primal_feasibility =
      (engine.affine_iterate() - sol.gram).cwiseAbs().maxCoeff();
  sol.residuals.convergence_gap =
      std::abs(sdp_value(prob, engine.affine_iterate()) - sol.value);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sol.gram, Eigen::EigenvaluesOnly);
  sol.residuals.min_eigenvalue = eig.eigenvalues().minCoeff();
  return sol;
}

// Integrality detection: every off-diagonal entry has |X_uv| >= 1 - eps and
// the sign pattern is the rank-one pattern of some +/-1 vector.  On success
// the cut collects the vertices agreeing in sign with vertex 0.
struct IntegralityCheck {
  bool integral = false;
  Cut cut;
  double min_abs = 1.0;       // smallest off-diagonal |X_uv|
  int witness_u = 0, witness_v = 0;
  double witness_value = 0.0;  // entry closest to zero (or sign offender)
  bool sign_consistent = true;
};

inline IntegralityCheck check_integrality(const Eigen::MatrixXd& X, double eps_int) {
  const int n = static_cast<int>(X.rows());
  IntegralityCheck out;
  out.min_abs = 1.0;
  bool have_witness = false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double a = std::abs(X(u, v));
      if (!have_witness || a < out.min_abs) {
        have_witness = true;
        out.min_abs = a;
        out.witness_u = u;
        out.witness_v = v;
        out.witness_value = X(u, v);
      }
    }
  if (have_witness && out.min_abs < 1.0 - eps_int) return out;  // non-integral

  std::vector<int> sigma(static_cast<std::size_t>(n), 1);
  for (int u = 1; u < n; ++u) sigma[static_cast<std::size_t>(u)] = X(0, u) > 0.0 ? 1 : -1;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const int expect = sigma[static_cast<std::size_t>(u)] * sigma[static_cast<std::size_t>(v)];
      if ((X(u, v) > 0.0 ? 1 : -1) != expect) {
        out.sign_consistent = false;
        out.witness_u = u;
        out.witness_v = v;
        out.witness_value = X(u, v);
        return out;
      }
    }
  std::vector<char> side(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) side[static_cast<std::size_t>(u)] = sigma[static_cast<std::size_t>(u)] > 0 ? 1 : 0;
  out.integral = true;
  out.cut = Cut(side);
  return out;
}

enum class RobustStatus { optimal, not_stable_certificate };

struct RobustCutResult {
  RobustStatus status = RobustStatus::not_stable_certificate;
  std::optional<Cut> cut;
  double cut_value = 0.0;
  SdpSolution solution;
  IntegralityCheck integrality;
  bool retightened = false;  // gray-zone re-solve happened
};

// Solve, check integrality, retry once tighter in the gray zone, and return
// the cut only when its weight certifies the SDP value.
inline RobustCutResult robust_max_cut(const WeightedGraph& g, const SdpOptions& opts = {}) {
  const auto prob = build_sdp(g);
  RobustCutResult out;
  out.solution = solve_sdp(prob, opts);
  out.integrality = check_integrality(out.solution.gram, opts.eps_int);
  if (!out.integrality.integral && out.integrality.sign_consistent &&
      out.integrality.min_abs >= 1.0 - 1e-2) {
    SdpOptions tighter = opts;
    tighter.tol_psd /= 10.0;
    tighter.tol_feas /= 10.0;
    tighter.tol_obj /= 10.0;
    out.retightened = true;
    out.solution = solve_sdp(prob, tighter);
    out.integrality = check_integrality(out.solution.gram, opts.eps_int);
  }
  if (!out.integrality.integral) return out;

  const Cut cut = out.integrality.cut.canonical();
  const double value = cut_weight(g, cut);
  const double slack = opts.tol_obj * std::max(1.0, prob.total_weight);
  if (std::abs(value - out.solution.value) > slack) {
    // integral-looking gram without a matching cut value: refuse the cut
    out.integrality.integral = false;
    return out;
  }
  out.status = RobustStatus::optimal;
  out.cut = cut;
  out.cut_value = value;
  return out;
}

}  // namespace stablecut
