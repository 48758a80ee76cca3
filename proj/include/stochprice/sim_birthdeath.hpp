#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stochprice/error.hpp"
#include "stochprice/model_fitting.hpp"
#include "stochprice/parallel.hpp"
#include "stochprice/random.hpp"
#include "stochprice/sim_normal.hpp"
#include "stochprice/trajectory.hpp"

namespace stochprice {

/// Continuous-time jump path. event_prices[i] is the price just after the
/// event at event_times[i]; times are strictly increasing in (0, horizon].
struct EventTrajectory {
  std::vector<double> event_times;
  std::vector<double> event_prices;
  double p0 = 0.0;
  double horizon = 0.0;
  SeededStream stream;

  double final_price() const noexcept {
    return event_prices.empty() ? p0 : event_prices.back();
  }
};

/// Event-driven simulation of the birth-death price process. Per event, three
/// independent uniforms are drawn in this order: holding time
/// ~ Exp(lambda + mu_death), branch (birth iff u <= lambda / (lambda + mu_death)),
/// jump magnitude ~ Exp(mean_increment) or Exp(mean_decrement). The event
/// whose time would pass the horizon is discarded.
inline EventTrajectory simulate_birth_death(const BirthDeathModel& model, double p0,
                                            double horizon, SeededStream stream) {
  model.validate();
  if (!std::isfinite(p0) || p0 <= 0.0) {
    throw DomainError("starting price must be positive and finite");
  }
  if (!std::isfinite(horizon) || horizon <= 0.0) {
    throw DomainError("horizon must be positive and finite");
  }
  Philox4x32 rng(stream);
  EventTrajectory traj;
  traj.p0 = p0;
  traj.horizon = horizon;
  traj.stream = stream;

  const double rate = model.total_rate();
  const double p_birth = model.birth_probability();
  // Expected count plus slack; avoids most reallocations.
  const auto expect = static_cast<std::size_t>(rate * horizon * 1.2) + 16;
  traj.event_times.reserve(expect);
  traj.event_prices.reserve(expect);

  double t = 0.0;
  double p = p0;
  while (true) {
    t += -std::log(rng.next_uniform()) / rate;
    if (t > horizon) break;
    if (rng.next_uniform() <= p_birth) {
      p += exponential_with_mean(rng, model.mean_increment);
    } else {
      p -= exponential_with_mean(rng, model.mean_decrement);
    }
    traj.event_times.push_back(t);
    traj.event_prices.push_back(p);
  }
  detail::warn_if_negative(traj.event_prices, stream, "birth-death");
  return traj;
}

/// Right-continuous daily view: the price on day t is the price after the
/// last event with time <= t. Covers days 0..floor(horizon).
inline Trajectory sample_daily(const EventTrajectory& traj) {
  const auto days = static_cast<std::size_t>(std::floor(traj.horizon));
  Trajectory out{{}, traj.stream, ModelKind::kBirthDeath};
  out.prices.reserve(days + 1);
  std::size_t next = 0;
  double p = traj.p0;
  for (std::size_t day = 0; day <= days; ++day) {
    const auto t = static_cast<double>(day);
    while (next < traj.event_times.size() && traj.event_times[next] <= t) {
      p = traj.event_prices[next++];
    }
    out.prices.push_back(p);
  }
  return out;
}

inline std::vector<EventTrajectory> simulate_bd_event_ensemble(
    const BirthDeathModel& model, double p0, std::size_t horizon,
    std::size_t n_replicates, std::uint64_t base_seed) {
  if (n_replicates < 1) throw DomainError("ensemble needs at least 1 replicate");
  model.validate();
  detail::check_start(p0, horizon);
  std::vector<EventTrajectory> out(n_replicates);
  detail::parallel_for(n_replicates, [&](std::size_t k) {
    out[k] = simulate_birth_death(model, p0, static_cast<double>(horizon), {base_seed, k});
  });
  return out;
}

/// Daily-grid ensemble; replicate k runs on stream (base_seed, k).
inline std::vector<Trajectory> simulate_bd_ensemble(const BirthDeathModel& model,
                                                    double p0, std::size_t horizon,
                                                    std::size_t n_replicates,
                                                    std::uint64_t base_seed) {
  const auto events = simulate_bd_event_ensemble(model, p0, horizon, n_replicates, base_seed);
  std::vector<Trajectory> out;
  out.reserve(events.size());
  for (const auto& e : events) out.push_back(sample_daily(e));
  return out;
}

}  // namespace stochprice
