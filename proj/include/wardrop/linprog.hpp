#pragma once

#include <cstdint>
#include <limits>

#include "linalg.hpp"

namespace wardrop {

// max c^T x  s.t.  ineq x <= ineq_rhs,  eq x = eq_rhs,  x >= 0
struct LpProblem {
  Vec objective;
  Mat ineq;
  Vec ineq_rhs;
  Mat eq;
  Vec eq_rhs;

  std::size_t vars() const { return objective.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Vec x;
  double value = 0.0;
  Vec ineq_duals;  // >= 0, one per inequality row
  Vec eq_duals;    // free sign, one per equality row
  // residuals achieved, normalized by the data scale
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double comp_slack_residual = 0.0;
  double duality_gap = 0.0;
  int iterations = 0;
};

// Running maxima over all solves in the process; the acceptance suite reads
// these to check that strong duality held on every LP it triggered.
struct LpStats {
  long solves = 0;
  double max_primal_residual = 0.0;
  double max_dual_residual = 0.0;
  double max_comp_slack = 0.0;
  double max_duality_gap = 0.0;

  void reset() { *this = LpStats{}; }
};

inline LpStats& lp_stats() {
  static LpStats s;
  return s;
}

namespace detail {

inline void check_lp_shapes(const LpProblem& p) {
  const std::size_t n = p.vars();
  if (!p.ineq.empty() && p.ineq.cols() != n) throw Error("LpProblem: inequality block width mismatch");
  if (p.ineq.rows() != p.ineq_rhs.size()) throw Error("LpProblem: inequality rhs length mismatch");
  if (!p.eq.empty() && p.eq.cols() != n) throw Error("LpProblem: equality block width mismatch");
  if (p.eq.rows() != p.eq_rhs.size()) throw Error("LpProblem: equality rhs length mismatch");
  for (double v : p.objective)
    if (!std::isfinite(v)) throw Error("LpProblem: non-finite objective entry");
  for (double v : p.ineq_rhs)
    if (!std::isfinite(v)) throw Error("LpProblem: non-finite rhs entry");
  for (double v : p.eq_rhs)
    if (!std::isfinite(v)) throw Error("LpProblem: non-finite rhs entry");
}

inline double lp_data_scale(const LpProblem& p) {
  double s = 1.0;
  s = std::max(s, inf_norm(p.objective));
  s = std::max(s, inf_norm(p.ineq_rhs));
  s = std::max(s, inf_norm(p.eq_rhs));
  s = std::max(s, max_abs(p.ineq));
  s = std::max(s, max_abs(p.eq));
  return s;
}

}  // namespace detail

// Textbook two-phase primal simplex on the dense standard-form tableau with
// Bland's rule, so ties are broken deterministically and cycling cannot
// occur. Duals are read off the marker (slack/artificial) columns of the
// final tableau. Iteration-limit exhaustion throws; it is never reported as
// an optimum.
inline LpSolution solve_lp(const LpProblem& p, double tol = 1e-9) {
  detail::check_lp_shapes(p);
  const std::size_t n = p.vars();
  const std::size_t mi = p.ineq.rows(), me = p.eq.rows(), m = mi + me;
  const double scale = detail::lp_data_scale(p);
  const double eps_red = 1e-10 * (1.0 + scale);
  const double eps_piv = 1e-11 * (1.0 + scale);

  // column layout: [structural | slack/surplus per ineq row | artificials]
  std::vector<double> row_sign(m, 1.0);
  std::vector<std::ptrdiff_t> art_col(m, -1);
  std::size_t ncols = n + mi;
  for (std::size_t i = 0; i < mi; ++i)
    if (p.ineq_rhs[i] < 0.0) row_sign[i] = -1.0;
  for (std::size_t k = 0; k < me; ++k)
    if (p.eq_rhs[k] < 0.0) row_sign[mi + k] = -1.0;
  for (std::size_t i = 0; i < mi; ++i)
    if (row_sign[i] < 0.0) art_col[i] = static_cast<std::ptrdiff_t>(ncols++);
  for (std::size_t k = 0; k < me; ++k) art_col[mi + k] = static_cast<std::ptrdiff_t>(ncols++);

  Mat t(m, ncols + 1, 0.0);  // rhs in the last column
  const std::size_t rhs = ncols;
  for (std::size_t i = 0; i < mi; ++i) {
    for (std::size_t j = 0; j < n; ++j) t(i, j) = row_sign[i] * p.ineq(i, j);
    t(i, n + i) = row_sign[i];  // slack (+1) or surplus (-1)
    t(i, rhs) = row_sign[i] * p.ineq_rhs[i];
    if (art_col[i] >= 0) t(i, static_cast<std::size_t>(art_col[i])) = 1.0;
  }
  for (std::size_t k = 0; k < me; ++k) {
    const std::size_t i = mi + k;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = row_sign[i] * p.eq(k, j);
    t(i, rhs) = row_sign[i] * p.eq_rhs[k];
    t(i, static_cast<std::size_t>(art_col[i])) = 1.0;
  }

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < mi; ++i)
    basis[i] = art_col[i] >= 0 ? static_cast<std::size_t>(art_col[i]) : n + i;
  for (std::size_t k = 0; k < me; ++k) basis[mi + k] = static_cast<std::size_t>(art_col[mi + k]);

  std::vector<bool> artificial(ncols, false);
  for (std::size_t i = 0; i < m; ++i)
    if (art_col[i] >= 0) artificial[static_cast<std::size_t>(art_col[i])] = true;

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / t(pr, pc);
    for (std::size_t j = 0; j <= ncols; ++j) t(pr, j) *= inv;
    t(pr, pc) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pr) continue;
      const double f = t(i, pc);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= ncols; ++j) t(i, j) -= f * t(pr, j);
      t(i, pc) = 0.0;
    }
    basis[pr] = pc;
  };

  int iterations = 0;
  const int iter_limit = 2000 + 200 * static_cast<int>(m + ncols);

  // phase: 1 minimizes the artificial sum, 2 minimizes -objective
  auto run_phase = [&](int phase) -> LpStatus {
    Vec cost(ncols, 0.0);
    if (phase == 1) {
      for (std::size_t j = 0; j < ncols; ++j)
        if (artificial[j]) cost[j] = 1.0;
    } else {
      for (std::size_t j = 0; j < n; ++j) cost[j] = -p.objective[j];
    }
    for (;;) {
      if (++iterations > iter_limit)
        throw Error("solve_lp: iteration limit exhausted (" + std::to_string(iter_limit) + ")");
      // reduced costs recomputed from the tableau each iteration
      std::ptrdiff_t enter = -1;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (phase == 2 && artificial[j]) continue;
        double r = cost[j];
        for (std::size_t i = 0; i < m; ++i) {
          const double cb = cost[basis[i]];
          if (cb != 0.0) r -= cb * t(i, j);
        }
        if (r < -eps_red) {
          enter = static_cast<std::ptrdiff_t>(j);
          break;  // Bland: smallest eligible index
        }
      }
      if (enter < 0) return LpStatus::optimal;
      const std::size_t e = static_cast<std::size_t>(enter);
      std::ptrdiff_t leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (t(i, e) <= eps_piv) continue;
        const double ratio = std::max(t(i, rhs), 0.0) / t(i, e);
        if (ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && (leave < 0 || basis[i] < basis[static_cast<std::size_t>(leave)]))) {
          best_ratio = ratio;
          leave = static_cast<std::ptrdiff_t>(i);
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(static_cast<std::size_t>(leave), e);
    }
  };

  LpSolution sol;
  bool have_artificials = false;
  for (std::size_t i = 0; i < m; ++i) have_artificials = have_artificials || art_col[i] >= 0;
  if (have_artificials) {
    LpStatus st = run_phase(1);
    if (st == LpStatus::unbounded) throw Error("solve_lp: phase-1 unbounded (numerical breakdown)");
    double art_level = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (artificial[basis[i]]) art_level += std::max(t(i, rhs), 0.0);
    if (art_level > std::max(1e-9 * (1.0 + scale), tol)) {
      sol.status = LpStatus::infeasible;
      sol.iterations = iterations;
      return sol;
    }
    // drive zero-level artificials out of the basis where possible
    for (std::size_t i = 0; i < m; ++i) {
      if (!artificial[basis[i]]) continue;
      std::ptrdiff_t jin = -1;
      double bestmag = 1e-9 * (1.0 + scale);
      for (std::size_t j = 0; j < ncols; ++j) {
        if (artificial[j]) continue;
        if (std::fabs(t(i, j)) > bestmag) {
          bestmag = std::fabs(t(i, j));
          jin = static_cast<std::ptrdiff_t>(j);
        }
      }
      if (jin >= 0) pivot(i, static_cast<std::size_t>(jin));
      // else: redundant row; the artificial stays basic at level zero
    }
  }

  LpStatus st = run_phase(2);
  sol.iterations = iterations;
  if (st == LpStatus::unbounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = std::max(t(i, rhs), 0.0);
  sol.value = dot(p.objective, sol.x);

  // duals from the marker columns: every marker has coefficient +1 in its
  // row of the internal (sign-normalized) system, so y_int = -reduced cost
  Vec cost2(ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost2[j] = -p.objective[j];
  auto reduced_cost = [&](std::size_t j) {
    double r = cost2[j];
    for (std::size_t i = 0; i < m; ++i) {
      const double cb = cost2[basis[i]];
      if (cb != 0.0) r -= cb * t(i, j);
    }
    return r;
  };
  sol.ineq_duals.assign(mi, 0.0);
  for (std::size_t i = 0; i < mi; ++i) {
    const std::size_t marker =
        art_col[i] >= 0 ? static_cast<std::size_t>(art_col[i]) : n + i;
    const double y_int = -reduced_cost(marker);
    sol.ineq_duals[i] = std::max(0.0, -row_sign[i] * y_int);
  }
  sol.eq_duals.assign(me, 0.0);
  for (std::size_t k = 0; k < me; ++k) {
    const std::size_t i = mi + k;
    const double y_int = -reduced_cost(static_cast<std::size_t>(art_col[i]));
    sol.eq_duals[k] = -row_sign[i] * y_int;
  }

  // certify the solution; a silently wrong answer is worse than an exception
  const double norm = 1.0 + scale;
  double pres = 0.0;
  Vec gx = matvec(p.ineq, sol.x);
  for (std::size_t i = 0; i < mi; ++i) pres = std::max(pres, gx[i] - p.ineq_rhs[i]);
  Vec ex = matvec(p.eq, sol.x);
  for (std::size_t k = 0; k < me; ++k) pres = std::max(pres, std::fabs(ex[k] - p.eq_rhs[k]));
  Vec gty = tmatvec(p.ineq, sol.ineq_duals);
  Vec etz = tmatvec(p.eq, sol.eq_duals);
  double dres = 0.0, cs = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double slack_j = gty[j] + etz[j] - p.objective[j];
    dres = std::max(dres, -slack_j);
    cs = std::max(cs, std::fabs(sol.x[j] * slack_j));
  }
  for (std::size_t i = 0; i < mi; ++i)
    cs = std::max(cs, std::fabs(sol.ineq_duals[i] * (p.ineq_rhs[i] - gx[i])));
  const double dual_value = dot(p.ineq_rhs, sol.ineq_duals) + dot(p.eq_rhs, sol.eq_duals);
  sol.primal_residual = pres / norm;
  sol.dual_residual = dres / norm;
  sol.comp_slack_residual = cs / norm;
  sol.duality_gap = std::fabs(sol.value - dual_value) / norm;
  if (sol.primal_residual > tol || sol.dual_residual > tol ||
      sol.comp_slack_residual > tol || sol.duality_gap > tol)
    throw Error("solve_lp: optimal basis fails residual certification");

  LpStats& stats = lp_stats();
  stats.solves += 1;
  stats.max_primal_residual = std::max(stats.max_primal_residual, sol.primal_residual);
  stats.max_dual_residual = std::max(stats.max_dual_residual, sol.dual_residual);
  stats.max_comp_slack = std::max(stats.max_comp_slack, sol.comp_slack_residual);
  stats.max_duality_gap = std::max(stats.max_duality_gap, sol.duality_gap);
  return sol;
}

}  // namespace wardrop
