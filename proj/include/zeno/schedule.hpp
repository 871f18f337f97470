#pragma once

// Pulse-schedule construction and analysis: equal spacing, closed-form Zeno
// predictions, the interrupted-evolution product formula, and a deterministic
// timing optimizer for unequally spaced interruptions.

#include <functional>
#include <variant>
#include <vector>

#include "zeno/measure.hpp"

namespace zeno::schedule {

struct InstantProjection {};

struct FinitePulse {
  double duration = 0.0;
  double strength = 1.0;  // measurement strength eta in [0, 1]
};

struct UnitaryKick {
  measure::KickOperator kick;
};

using EventKind = std::variant<InstantProjection, FinitePulse, UnitaryKick>;

// One timed event; for finite pulses the time marks the start of the pulse
// window [time, time + duration].
struct ScheduleEvent {
  double time = 0.0;
  EventKind kind = InstantProjection{};
};

struct Schedule {
  double total_time = 0.0;
  std::vector<ScheduleEvent> events;  // strictly increasing in time

  // Checks ordering, bounds and pulse-window containment/non-overlap.
  void validate() const;
};

// n instantaneous projections at k T / n, k = 1..n.
Schedule equal_spacing(int n, double total_time);

// Closed form for the ideal interrupted pi-pulse:
// P2(T) = (1 - cos^n(pi/n)) / 2. Strictly decreasing in n, -> 0 as n -> inf.
double zeno_survival_ideal(int n);

struct ProductSurvival {
  double value = 1.0;
  // The product formula assumes sqrt(variance) * T / n << 1; `valid` reports
  // whether that holds (cutoff 0.25, where the neglected quartic term is
  // still below ~1e-3 per interval). The value is returned either way and
  // can be negative outside the validity region.
  bool valid = true;
};

// S(T) ~ [1 - variance (T/n)^2]^n, which -> 1 as n -> inf.
ProductSurvival survival_product(int n, double variance, double total_time);

using ScheduleObjective = std::function<double(const Schedule&)>;

struct OptimizedSchedule {
  Schedule schedule;
  double achieved_objective = 0.0;
};

// Minimizes a deterministic objective over the times of n instantaneous
// projections in (0, T]. Deterministic: a coarse ordered-tuple grid search
// (exhaustive for n <= 3, seeded spacing patterns above that) followed by
// coordinate descent with shrinking steps. The equal-spacing schedule is
// always a candidate, so the result is never worse than it.
OptimizedSchedule optimize_schedule(int n, const ScheduleObjective& objective,
                                    double total_time);

}  // namespace zeno::schedule
