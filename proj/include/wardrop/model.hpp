#pragma once

#include <string>

#include "linprog.hpp"

namespace wardrop {

// One player type: mass d, rewards c, durations t, consumption A (resources x
// activities) and homogeneous balance rows H. Activity counts may differ
// between types; a common activity set is the special case.
struct PlayerType {
  std::string name;
  double mass = 0.0;
  Vec rewards;
  Vec durations;
  Mat consumption;  // I x J
  Mat balance;      // K x J, K may be 0
  std::vector<std::string> activity_names;

  std::size_t activities() const { return rewards.size(); }
};

struct GameSpec {
  Vec resource_rates;  // b, one entry per shared resource
  std::vector<PlayerType> types;

  std::size_t resources() const { return resource_rates.size(); }
  std::size_t total_activities() const {
    std::size_t n = 0;
    for (const auto& t : types) n += t.activities();
    return n;
  }
};

// Strict-positivity tolerance for validation, below solver precision and
// above float noise on normalized data.
inline constexpr double kPositivityTol = 1e-12;

namespace detail {

// Offsets of each type's activity block in the concatenated rate vector.
inline std::vector<std::size_t> type_offsets(const GameSpec& spec) {
  std::vector<std::size_t> off(spec.types.size() + 1, 0);
  for (std::size_t l = 0; l < spec.types.size(); ++l)
    off[l + 1] = off[l] + spec.types[l].activities();
  return off;
}

// [A_1 A_2 ... A_L] as one I x n block.
inline Mat stacked_consumption(const GameSpec& spec) {
  const auto off = type_offsets(spec);
  Mat s(spec.resources(), off.back(), 0.0);
  for (std::size_t l = 0; l < spec.types.size(); ++l) {
    const Mat& a = spec.types[l].consumption;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) s(i, off[l] + j) = a(i, j);
  }
  return s;
}

inline std::vector<Vec> split_by_type(const GameSpec& spec, const Vec& x) {
  const auto off = type_offsets(spec);
  std::vector<Vec> parts(spec.types.size());
  for (std::size_t l = 0; l < spec.types.size(); ++l)
    parts[l] = Vec(x.begin() + off[l], x.begin() + off[l + 1]);
  return parts;
}

inline Vec concat_types(const std::vector<Vec>& parts) {
  Vec x;
  for (const auto& p : parts) x.insert(x.end(), p.begin(), p.end());
  return x;
}

}  // namespace detail

// Structural well-formedness. Violations are data, not failures: the list is
// empty exactly when the GameSpec invariants hold.
inline std::vector<std::string> validate(const GameSpec& spec) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < spec.resources(); ++i) {
    if (!std::isfinite(spec.resource_rates[i]))
      out.push_back("resource rate b[" + std::to_string(i) + "] is not finite");
    else if (spec.resource_rates[i] <= kPositivityTol)
      out.push_back("resource rate must be positive: b[" + std::to_string(i) + "]");
  }
  if (spec.types.empty()) out.push_back("at least one player type is required");
  for (std::size_t l = 0; l < spec.types.size(); ++l) {
    const PlayerType& t = spec.types[l];
    const std::string who = "type '" + (t.name.empty() ? std::to_string(l) : t.name) + "'";
    const std::size_t j = t.activities();
    if (j == 0) out.push_back(who + ": needs at least one activity");
    if (!(t.mass > kPositivityTol) || !std::isfinite(t.mass))
      out.push_back(who + ": mass must be positive");
    if (t.durations.size() != j)
      out.push_back(who + ": dimension mismatch between rewards and durations");
    if (!t.consumption.empty() || spec.resources() > 0) {
      if (t.consumption.rows() != spec.resources())
        out.push_back(who + ": dimension mismatch, consumption rows != resource count");
      if (t.consumption.cols() != j && !(t.consumption.rows() == 0 && j > 0))
        out.push_back(who + ": dimension mismatch, consumption columns != activities");
    }
    if (!t.balance.empty() && t.balance.cols() != j)
      out.push_back(who + ": dimension mismatch, balance columns != activities");
    if (!t.activity_names.empty() && t.activity_names.size() != j)
      out.push_back(who + ": dimension mismatch, activity names != activities");
    for (std::size_t k = 0; k < t.durations.size(); ++k)
      if (!(t.durations[k] >= 0.0) || !std::isfinite(t.durations[k]))
        out.push_back(who + ": negative duration on activity " + std::to_string(k));
    for (std::size_t i = 0; i < t.consumption.rows(); ++i)
      for (std::size_t k = 0; k < t.consumption.cols(); ++k)
        if (!(t.consumption(i, k) >= 0.0) || !std::isfinite(t.consumption(i, k)))
          out.push_back(who + ": negative consumption entry at (" + std::to_string(i) +
                        "," + std::to_string(k) + ")");
    for (double v : t.rewards)
      if (!std::isfinite(v)) out.push_back(who + ": non-finite reward");
    for (std::size_t i = 0; i < t.balance.rows(); ++i)
      for (std::size_t k = 0; k < t.balance.cols(); ++k)
        if (!std::isfinite(t.balance(i, k))) out.push_back(who + ": non-finite balance entry");
  }
  return out;
}

inline void require_valid(const GameSpec& spec) {
  auto v = validate(spec);
  if (!v.empty()) throw Error("invalid GameSpec: " + v.front());
}

struct FeasibilityReport {
  bool holds = false;
  double margin = 0.0;        // optimal s of the auxiliary LP
  std::vector<Vec> witness;   // rates achieving the margin
};

// Joint feasibility with positive rewards for every type: max s subject to
// c_l^T x_l >= s for all l, sum_l A_l x_l <= b, H_l x_l = 0, x >= 0, s <= 1.
// The s variable is free and enters split into a positive and negative part.
inline FeasibilityReport check_feasibility(const GameSpec& spec, double tol = 1e-9) {
  require_valid(spec);
  const auto off = detail::type_offsets(spec);
  const std::size_t n = off.back();
  const std::size_t I = spec.resources();
  const std::size_t L = spec.types.size();
  std::size_t balance_rows = 0;
  for (const auto& t : spec.types) balance_rows += t.balance.rows();

  LpProblem p;
  p.objective.assign(n + 2, 0.0);
  p.objective[n] = 1.0;       // s+
  p.objective[n + 1] = -1.0;  // s-
  p.ineq = Mat(I + L + 1, n + 2, 0.0);
  p.ineq_rhs.assign(I + L + 1, 0.0);
  const Mat s = detail::stacked_consumption(spec);
  for (std::size_t i = 0; i < I; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.ineq(i, j) = s(i, j);
    p.ineq_rhs[i] = spec.resource_rates[i];
  }
  for (std::size_t l = 0; l < L; ++l) {
    const PlayerType& t = spec.types[l];
    for (std::size_t j = 0; j < t.activities(); ++j)
      p.ineq(I + l, off[l] + j) = -t.rewards[j];
    p.ineq(I + l, n) = 1.0;
    p.ineq(I + l, n + 1) = -1.0;
    p.ineq_rhs[I + l] = 0.0;  // s - c^T x <= 0
  }
  p.ineq(I + L, n) = 1.0;
  p.ineq_rhs[I + L] = 1.0;  // cap s <= 1 so the LP stays bounded
  p.eq = Mat(balance_rows, n + 2, 0.0);
  p.eq_rhs.assign(balance_rows, 0.0);
  std::size_t r = 0;
  for (std::size_t l = 0; l < L; ++l) {
    const Mat& h = spec.types[l].balance;
    for (std::size_t k = 0; k < h.rows(); ++k, ++r)
      for (std::size_t j = 0; j < h.cols(); ++j) p.eq(r, off[l] + j) = h(k, j);
  }

  LpSolution sol = solve_lp(p, tol);
  FeasibilityReport rep;
  if (sol.status != LpStatus::optimal) return rep;  // cannot hold
  rep.margin = sol.value;
  rep.holds = sol.value > tol;
  Vec x(sol.x.begin(), sol.x.begin() + n);
  rep.witness = detail::split_by_type(spec, x);
  return rep;
}

struct ParticipationReport {
  std::vector<bool> per_type;
  std::vector<bool> unbounded;  // flag: best-response value grows without bound

  bool all() const {
    for (bool b : per_type)
      if (!b) return false;
    return !per_type.empty();
  }
};

// Participation incentive per type: max c_l^T x s.t. H_l x = 0, t_l^T x <= 1,
// x >= 0 must be strictly positive. By scaling this is equivalent to a
// positive best-response value for every delay vector w >= 0.
inline ParticipationReport check_participation(const GameSpec& spec, double tol = 1e-9) {
  require_valid(spec);
  ParticipationReport rep;
  for (const PlayerType& t : spec.types) {
    const std::size_t j = t.activities();
    LpProblem p;
    p.objective = t.rewards;
    p.ineq = Mat(1, j, 0.0);
    for (std::size_t k = 0; k < j; ++k) p.ineq(0, k) = t.durations[k];
    p.ineq_rhs = {1.0};
    p.eq = t.balance;
    p.eq_rhs.assign(t.balance.rows(), 0.0);
    LpSolution sol = solve_lp(p, tol);
    if (sol.status == LpStatus::unbounded) {
      rep.per_type.push_back(true);
      rep.unbounded.push_back(true);
    } else if (sol.status == LpStatus::optimal) {
      rep.per_type.push_back(sol.value > tol);
      rep.unbounded.push_back(false);
    } else {
      rep.per_type.push_back(false);
      rep.unbounded.push_back(false);
    }
  }
  return rep;
}

// The planner's problem: max total reward rate over joint rates meeting the
// resource budget, balance rows and one exact mass row per type. Resource
// duals of this LP are the optimal prices used by the pricing analysis.
inline LpProblem assemble_allocation_lp(const GameSpec& spec) {
  const auto off = detail::type_offsets(spec);
  const std::size_t n = off.back();
  const std::size_t I = spec.resources();
  const std::size_t L = spec.types.size();
  std::size_t balance_rows = 0;
  for (const auto& t : spec.types) balance_rows += t.balance.rows();

  LpProblem p;
  p.objective.assign(n, 0.0);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < spec.types[l].activities(); ++j)
      p.objective[off[l] + j] = spec.types[l].rewards[j];
  p.ineq = detail::stacked_consumption(spec);
  p.ineq_rhs = spec.resource_rates;
  p.eq = Mat(balance_rows + L, n, 0.0);
  p.eq_rhs.assign(balance_rows + L, 0.0);
  std::size_t r = 0;
  for (std::size_t l = 0; l < L; ++l) {
    const Mat& h = spec.types[l].balance;
    for (std::size_t k = 0; k < h.rows(); ++k, ++r)
      for (std::size_t j = 0; j < h.cols(); ++j) p.eq(r, off[l] + j) = h(k, j);
  }
  for (std::size_t l = 0; l < L; ++l, ++r) {
    for (std::size_t j = 0; j < spec.types[l].activities(); ++j)
      p.eq(r, off[l] + j) = spec.types[l].durations[j];
    p.eq_rhs[r] = spec.types[l].mass;
  }
  return p;
}

inline LpSolution optimal_allocation(const GameSpec& spec, double tol = 1e-9) {
  require_valid(spec);
  return solve_lp(assemble_allocation_lp(spec), tol);
}

// Indices of the per-type mass rows inside the equality block assembled by
// assemble_allocation_lp.
inline std::size_t mass_row_index(const GameSpec& spec, std::size_t l) {
  std::size_t balance_rows = 0;
  for (const auto& t : spec.types) balance_rows += t.balance.rows();
  return balance_rows + l;
}

struct ValueCurvePoint {
  bool feasible = false;
  double value = 0.0;      // F(d')
  double mass_dual = 0.0;  // subgradient of the concave F at d'
};

// F(d'): optimal value of the single-type allocation problem at participating
// mass d'. The dual of the mass row is a valid subgradient.
inline ValueCurvePoint value_curve(const GameSpec& spec, double d_prime, double tol = 1e-9) {
  require_valid(spec);
  if (spec.types.size() != 1) throw Error("value_curve: requires a single player type");
  if (!(d_prime > 0.0)) throw Error("value_curve: mass must be positive");
  GameSpec scaled = spec;
  scaled.types[0].mass = d_prime;
  LpSolution sol = optimal_allocation(scaled, tol);
  ValueCurvePoint out;
  if (sol.status != LpStatus::optimal) return out;
  out.feasible = true;
  out.value = sol.value;
  out.mass_dual = sol.eq_duals[mass_row_index(scaled, 0)];
  return out;
}

}  // namespace wardrop
