#include <catch2/catch_amalgamated.hpp>

#include "wardrop/model.hpp"
#include "wardrop/scenarios.hpp"

using namespace wardrop;
using Catch::Matchers::WithinAbs;

namespace {

LpProblem two_route_lp() {
  // max 2x1 + x2  s.t.  x1 <= 1,  x1 + x2 = 2
  LpProblem p;
  p.objective = {2.0, 1.0};
  p.ineq = Mat(1, 2, 0.0);
  p.ineq(0, 0) = 1.0;
  p.ineq_rhs = {1.0};
  p.eq = Mat(1, 2, 1.0);
  p.eq_rhs = {2.0};
  return p;
}

}  // namespace

TEST_CASE("two-route instance: value 3 at (1,1)") {
  LpSolution s = solve_lp(two_route_lp());
  REQUIRE(s.status == LpStatus::optimal);
  CHECK_THAT(s.value, WithinAbs(3.0, 1e-9));
  CHECK_THAT(s.x[0], WithinAbs(1.0, 1e-9));
  CHECK_THAT(s.x[1], WithinAbs(1.0, 1e-9));
}

TEST_CASE("empty objective, no constraints") {
  LpProblem p;
  p.objective = {0.0, 0.0};
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK_THAT(s.value, WithinAbs(0.0, 1e-12));
}

TEST_CASE("dual extraction on the scarce-activity instance") {
  // max 4x1 + x2  s.t.  x1 <= 1/4,  x1 + x2 = 1
  // optimum 1.75; reduced-cost equations give ineq dual 3, eq dual 1
  LpProblem p;
  p.objective = {4.0, 1.0};
  p.ineq = Mat(1, 2, 0.0);
  p.ineq(0, 0) = 1.0;
  p.ineq_rhs = {0.25};
  p.eq = Mat(1, 2, 1.0);
  p.eq_rhs = {1.0};
  LpSolution s = solve_lp(p);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK_THAT(s.value, WithinAbs(1.75, 1e-9));
  CHECK_THAT(s.ineq_duals[0], WithinAbs(3.0, 1e-9));
  CHECK_THAT(s.eq_duals[0], WithinAbs(1.0, 1e-9));
}

TEST_CASE("status classification") {
  SECTION("infeasible") {
    LpProblem p;
    p.objective = {1.0};
    p.ineq = Mat(1, 1, 1.0);
    p.ineq_rhs = {-1.0};  // x <= -1 with x >= 0
    CHECK(solve_lp(p).status == LpStatus::infeasible);
  }
  SECTION("unbounded") {
    LpProblem p;
    p.objective = {1.0, 0.0};
    CHECK(solve_lp(p).status == LpStatus::unbounded);
  }
  SECTION("unbounded despite constraints") {
    LpProblem p;
    p.objective = {0.0, 1.0};
    p.ineq = Mat(1, 2, 0.0);
    p.ineq(0, 0) = 1.0;
    p.ineq_rhs = {1.0};
    CHECK(solve_lp(p).status == LpStatus::unbounded);
  }
}

TEST_CASE("determinism: identical problems give identical bases") {
  LpProblem p = two_route_lp();
  LpSolution a = solve_lp(p);
  LpSolution b = solve_lp(p);
  CHECK(a.x == b.x);
  CHECK(a.ineq_duals == b.ineq_duals);
  CHECK(a.eq_duals == b.eq_duals);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("optimal_allocation on the built-in scenarios") {
  SECTION("two-route game") {
    LpSolution s = optimal_allocation(pigou());
    REQUIRE(s.status == LpStatus::optimal);
    CHECK_THAT(s.value, WithinAbs(3.0, 1e-9));
  }
  SECTION("crowdsourcing") {
    for (double eps : {0.1, 0.25}) {
      LpSolution s = optimal_allocation(crowdsourcing(eps));
      REQUIRE(s.status == LpStatus::optimal);
      CHECK_THAT(s.value, WithinAbs(1.0 / eps, 1e-9 / eps));
      CHECK_THAT(s.x[0], WithinAbs(1.0, 1e-9));  // type-1 task rate
      CHECK_THAT(s.x[2], WithinAbs(0.0, 1e-9));  // type-2 task rate
    }
  }
  SECTION("single forced activity") {
    GameSpec g;
    PlayerType t;
    t.name = "solo";
    t.mass = 1.0;
    t.rewards = {1.0};
    t.durations = {1.0};
    t.consumption = Mat(0, 1, 0.0);
    g.types.push_back(t);
    LpSolution s = optimal_allocation(g);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK_THAT(s.value, WithinAbs(1.0, 1e-9));
  }
  SECTION("mass that cannot be placed is infeasible") {
    GameSpec g = pigou();
    g.types[0].durations = {0.0, 0.0};
    // zero durations make the mass row unsatisfiable
    CHECK(optimal_allocation(g).status == LpStatus::infeasible);
  }
}

TEST_CASE("value_curve on the two-route game") {
  GameSpec g = pigou();
  // F is piecewise linear: 2 d' on (0,1], 1 + d' beyond the kink at 1
  ValueCurvePoint a = value_curve(g, 0.5);
  REQUIRE(a.feasible);
  CHECK_THAT(a.value, WithinAbs(1.0, 1e-9));

  ValueCurvePoint b = value_curve(g, 2.0);
  REQUIRE(b.feasible);
  CHECK_THAT(b.value, WithinAbs(3.0, 1e-9));
  CHECK_THAT(b.mass_dual, WithinAbs(1.0, 1e-9));

  ValueCurvePoint c = value_curve(g, 1.0);
  REQUIRE(c.feasible);
  CHECK_THAT(c.value, WithinAbs(2.0, 1e-9));
  CHECK(c.mass_dual >= 1.0 - 1e-9);  // kink: any subgradient in [1,2]
  CHECK(c.mass_dual <= 2.0 + 1e-9);
}

TEST_CASE("value curve properties on random single-type instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameSpec g = random_instance(seed, 1, 3, 4);
    const double d = g.types[0].mass;
    double d1 = 0.3 * d, d2 = 0.6 * d, d3 = 0.95 * d;
    ValueCurvePoint f1 = value_curve(g, d1);
    ValueCurvePoint f2 = value_curve(g, d2);
    ValueCurvePoint f3 = value_curve(g, d3);
    REQUIRE(f1.feasible);
    REQUIRE(f2.feasible);
    REQUIRE(f3.feasible);
    // concavity along the chord
    const double lam = (d2 - d1) / (d3 - d1);
    CHECK(f2.value >= (1 - lam) * f1.value + lam * f3.value - 1e-7);
    // subgradients do not increase with mass
    CHECK(f1.mass_dual >= f2.mass_dual - 1e-7);
    CHECK(f2.mass_dual >= f3.mass_dual - 1e-7);
    // scaling down keeps proportional feasibility
    for (double alpha : {0.25, 0.5, 0.75, 1.0})
      CHECK(value_curve(g, alpha * d2).value >= alpha * f2.value - 1e-7);
  }
}

TEST_CASE("residual certification populates solution and stats") {
  lp_stats().reset();
  LpSolution s = solve_lp(two_route_lp());
  CHECK(s.primal_residual <= 1e-9);
  CHECK(s.dual_residual <= 1e-9);
  CHECK(s.comp_slack_residual <= 1e-9);
  CHECK(s.duality_gap <= 1e-9);
  CHECK(lp_stats().solves == 1);
  CHECK(lp_stats().max_duality_gap <= 1e-9);
}
