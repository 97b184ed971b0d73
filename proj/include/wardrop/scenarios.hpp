#pragma once

#include <cstdint>
#include <random>

#include "model.hpp"

namespace wardrop {

// Two-route circulation with a rate-limited high-reward route. Mass 2, route
// 1 pays 2 per trip but at most one player per unit time can start it; route
// 2 always takes one time unit and pays 1.
inline GameSpec pigou() {
  GameSpec spec;
  spec.resource_rates = {1.0};
  PlayerType t;
  t.name = "players";
  t.mass = 2.0;
  t.rewards = {2.0, 1.0};
  t.durations = {1.0, 1.0};
  t.consumption = Mat(1, 2, 0.0);
  t.consumption(0, 0) = 1.0;
  t.activity_names = {"route1", "route2"};
  spec.types.push_back(std::move(t));
  return spec;
}

// Three regions on a line; customers appear in regions 1 and 3 at unit rate
// and ride to the center. Serving region 1 pays 2 per trip, region 3 pays 1,
// every hop between neighbors takes one time unit. Balance rows tie busy
// trips to return moves; the direct 1<->3 moves exist so any driver mass can
// stay in motion.
//
// Activity order: busy1, busy3, free21, free23, free13, free31.
inline GameSpec ride_hailing(double mass) {
  if (!(mass > 0.0)) throw Error("ride_hailing: mass must be positive");
  GameSpec spec;
  spec.resource_rates = {1.0, 1.0};  // customers per time in regions 1 and 3
  PlayerType t;
  t.name = "drivers";
  t.mass = mass;
  t.rewards = {2.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  t.durations = {1.0, 1.0, 1.0, 1.0, 2.0, 2.0};
  t.consumption = Mat(2, 6, 0.0);
  t.consumption(0, 0) = 1.0;  // busy1 picks up one region-1 customer
  t.consumption(1, 1) = 1.0;  // busy3 picks up one region-3 customer
  t.activity_names = {"busy1", "busy3", "free21", "free23", "free13", "free31"};
  // region flow balance: departures equal arrivals
  t.balance = Mat(3, 6, 0.0);
  // region 1: busy1 + free13 leave, free21 + free31 arrive
  t.balance(0, 0) = 1.0;
  t.balance(0, 4) = 1.0;
  t.balance(0, 2) = -1.0;
  t.balance(0, 5) = -1.0;
  // region 2: free21 + free23 leave, busy1 + busy3 arrive
  t.balance(1, 2) = 1.0;
  t.balance(1, 3) = 1.0;
  t.balance(1, 0) = -1.0;
  t.balance(1, 1) = -1.0;
  // region 3: busy3 + free31 leave, free23 + free13 arrive
  t.balance(2, 1) = 1.0;
  t.balance(2, 5) = 1.0;
  t.balance(2, 3) = -1.0;
  t.balance(2, 4) = -1.0;
  spec.types.push_back(std::move(t));
  return spec;
}

// Two participant types competing for a single unit-rate task stream. Type 1
// (unit mass) values a completion at 1/eps, type 2 (mass 1/eps) at 1. Both
// may idle for free. The equilibrium splits the task stream proportionally
// to mass, which makes the optimal/equilibrium ratio blow up as eps -> 0.
inline GameSpec crowdsourcing(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("crowdsourcing: eps must lie in (0,1)");
  GameSpec spec;
  spec.resource_rates = {1.0};
  for (int l = 0; l < 2; ++l) {
    PlayerType t;
    t.name = l == 0 ? "type1" : "type2";
    t.mass = l == 0 ? 1.0 : 1.0 / eps;
    t.rewards = {l == 0 ? 1.0 / eps : 1.0, 0.0};
    t.durations = {1.0, 1.0};
    t.consumption = Mat(1, 2, 0.0);
    t.consumption(0, 0) = 1.0;
    t.activity_names = {"task", "idle"};
    spec.types.push_back(std::move(t));
  }
  return spec;
}

// Tight family for the single-type inefficiency bound: a scarce activity
// paying 1/eps against an uncapped unit-reward alternative. The optimum
// mixes (value 2 - eps); selfish players queue for the scarce one (value 1).
inline GameSpec poa_family(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("poa_family: eps must lie in (0,1)");
  GameSpec spec;
  spec.resource_rates = {eps};
  PlayerType t;
  t.name = "players";
  t.mass = 1.0;
  t.rewards = {1.0 / eps, 1.0};
  t.durations = {1.0, 1.0};
  t.consumption = Mat(1, 2, 0.0);
  t.consumption(0, 0) = 1.0;
  t.activity_names = {"scarce", "plain"};
  spec.types.push_back(std::move(t));
  return spec;
}

namespace detail {

// mt19937_64 fed through a fixed 53-bit mapping so instances are identical
// across standard libraries.
inline double u01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
inline double uniform(std::mt19937_64& g, double lo, double hi) { return lo + (hi - lo) * u01(g); }

}  // namespace detail

// Reproducible random instance: nonnegative consumption, positive rates and
// masses, no balance rows. Activity 0 of every type consumes nothing and
// pays a positive reward, so both standing assumptions hold by construction.
inline GameSpec random_instance(std::uint64_t seed, std::size_t types = 2,
                                std::size_t resources = 3, std::size_t activities = 4) {
  if (types < 1 || resources < 1 || activities < 1)
    throw Error("random_instance: sizes must be at least 1");
  std::mt19937_64 g(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
  using detail::uniform;
  GameSpec spec;
  spec.resource_rates.resize(resources);
  for (auto& b : spec.resource_rates) b = uniform(g, 0.5, 2.0);
  for (std::size_t l = 0; l < types; ++l) {
    PlayerType t;
    t.name = "type" + std::to_string(l);
    t.mass = uniform(g, 0.5, 3.0);
    t.rewards.resize(activities);
    t.durations.resize(activities);
    t.consumption = Mat(resources, activities, 0.0);
    for (std::size_t j = 0; j < activities; ++j) {
      t.rewards[j] = uniform(g, 0.2, 3.0);
      t.durations[j] = uniform(g, 0.25, 2.5);
      for (std::size_t i = 0; i < resources; ++i) {
        double coin = detail::u01(g);
        if (coin > 0.45 && j != 0) t.consumption(i, j) = uniform(g, 0.1, 1.5);
      }
    }
    // outside option: free of resources, strictly rewarded
    t.rewards[0] = uniform(g, 0.3, 1.5);
    t.durations[0] = uniform(g, 0.5, 2.0);
    for (std::size_t j = 0; j < activities; ++j)
      t.activity_names.push_back("a" + std::to_string(j));
    spec.types.push_back(std::move(t));
  }
  return spec;
}

}  // namespace wardrop
