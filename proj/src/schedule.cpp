#include "zeno/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace zeno::schedule {

namespace {
const double kPi = std::acos(-1.0);
}

void Schedule::validate() const {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw InvalidSchedule("Schedule: total_time must be finite and positive");
  }
  double previous_time = -std::numeric_limits<double>::infinity();
  double previous_end = 0.0;
  for (const ScheduleEvent& event : events) {
    if (!(event.time >= 0.0 && event.time <= total_time)) {
      throw InvalidSchedule("Schedule: event time outside [0, total_time]");
    }
    if (!(event.time > previous_time)) {
      throw InvalidSchedule("Schedule: event times must be strictly increasing");
    }
    if (event.time < previous_end) {
      throw InvalidSchedule("Schedule: event falls inside a finite pulse window");
    }
    previous_time = event.time;
    previous_end = event.time;
    if (const auto* pulse = std::get_if<FinitePulse>(&event.kind)) {
      if (!(pulse->duration >= 0.0)) {
        throw InvalidSchedule("Schedule: finite pulse duration must be >= 0");
      }
      if (event.time + pulse->duration > total_time) {
        throw InvalidSchedule("Schedule: finite pulse extends past total_time");
      }
      previous_end = event.time + pulse->duration;
    }
  }
}

Schedule equal_spacing(int n, double total_time) {
  if (n < 1) throw InvalidCount("equal_spacing: n must be >= 1");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw InvalidDuration("equal_spacing: total_time must be finite and positive");
  }
  Schedule s;
  s.total_time = total_time;
  s.events.reserve(n);
  for (int k = 1; k <= n; ++k) {
    // the last event lands exactly on T regardless of rounding
    const double t = (k == n) ? total_time : total_time * k / n;
    s.events.push_back({t, InstantProjection{}});
  }
  return s;
}

double zeno_survival_ideal(int n) {
  if (n < 1) throw InvalidCount("zeno_survival_ideal: n must be >= 1");
  return 0.5 * (1.0 - std::pow(std::cos(kPi / n), n));
}

ProductSurvival survival_product(int n, double variance, double total_time) {
  if (n < 1) throw InvalidCount("survival_product: n must be >= 1");
  const double interval = total_time / n;
  ProductSurvival result;
  result.value = std::pow(1.0 - variance * interval * interval, n);
  result.valid = variance >= 0.0 && std::sqrt(std::max(variance, 0.0)) * interval <= 0.25;
  return result;
}

namespace {

Schedule schedule_from_times(const std::vector<double>& times, double total_time) {
  Schedule s;
  s.total_time = total_time;
  s.events.reserve(times.size());
  for (double t : times) s.events.push_back({t, InstantProjection{}});
  return s;
}

double evaluate(const ScheduleObjective& objective, const std::vector<double>& times,
                double total_time) {
  double value;
  try {
    value = objective(schedule_from_times(times, total_time));
  } catch (const std::exception& e) {
    throw ObjectiveEvaluationFailed(std::string("optimize_schedule: objective threw: ") +
                                    e.what());
  }
  if (!std::isfinite(value)) {
    throw ObjectiveEvaluationFailed("optimize_schedule: objective returned a non-finite value");
  }
  return value;
}

// Ordered n-tuples over the grid {T/g, 2T/g, ..., T}, visited in a fixed
// lexicographic order.
void enumerate_grid(int n, int grid, double total_time,
                    const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<int> index(n);
  std::vector<double> times(n);
  // first combination: 1, 2, ..., n
  for (int i = 0; i < n; ++i) index[i] = i + 1;
  while (true) {
    for (int i = 0; i < n; ++i) {
      times[i] = index[i] == grid ? total_time : total_time * index[i] / grid;
    }
    visit(times);
    int pos = n - 1;
    while (pos >= 0 && index[pos] == grid - (n - 1 - pos)) --pos;
    if (pos < 0) break;
    ++index[pos];
    for (int i = pos + 1; i < n; ++i) index[i] = index[i - 1] + 1;
  }
}

}  // namespace

OptimizedSchedule optimize_schedule(int n, const ScheduleObjective& objective,
                                    double total_time) {
  if (n < 1) throw InvalidCount("optimize_schedule: n must be >= 1");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    throw InvalidDuration("optimize_schedule: total_time must be finite and positive");
  }

  const double min_gap = 1e-9 * total_time;

  // Incumbent: the equal-spacing schedule, so the post-condition
  // achieved <= objective(equal_spacing) holds by construction.
  std::vector<double> best(n);
  for (int k = 1; k <= n; ++k) best[k - 1] = (k == n) ? total_time : total_time * k / n;
  double best_value = evaluate(objective, best, total_time);

  auto consider = [&](const std::vector<double>& times) {
    const double value = evaluate(objective, times, total_time);
    if (value < best_value) {
      best_value = value;
      best = times;
    }
  };

  // Coarse stage. Exhaustive ordered-grid search is affordable for small n;
  // beyond that, seed with the two natural spacing families (k T / n and the
  // trailing-gap variant k T / (n+1)).
  if (n <= 3) {
    enumerate_grid(n, 40, total_time, consider);
  } else {
    std::vector<double> trailing(n);
    for (int k = 1; k <= n; ++k) trailing[k - 1] = total_time * k / (n + 1);
    consider(trailing);
  }

  // Coordinate descent with shrinking step.
  double step = total_time / 40.0;
  std::vector<double> candidate(n);
  while (step > 1e-10 * total_time) {
    bool improved = true;
    int passes = 0;
    while (improved && passes < 64) {
      improved = false;
      ++passes;
      for (int i = 0; i < n; ++i) {
        const double lower = (i == 0 ? min_gap : best[i - 1] + min_gap);
        const double upper = (i == n - 1 ? total_time : best[i + 1] - min_gap);
        for (double direction : {+1.0, -1.0}) {
          const double moved = std::clamp(best[i] + direction * step, lower, upper);
          if (moved == best[i]) continue;
          candidate = best;
          candidate[i] = moved;
          const double value = evaluate(objective, candidate, total_time);
          if (value < best_value) {
            best_value = value;
            best = candidate;
            improved = true;
          }
        }
      }
    }
    step *= 0.5;
  }

  OptimizedSchedule result;
  result.schedule = schedule_from_times(best, total_time);
  result.schedule.validate();
  result.achieved_objective = best_value;
  return result;
}

}  // namespace zeno::schedule
