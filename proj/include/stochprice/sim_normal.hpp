#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stochprice/error.hpp"
#include "stochprice/log.hpp"
#include "stochprice/model_fitting.hpp"
#include "stochprice/parallel.hpp"
#include "stochprice/random.hpp"
#include "stochprice/trajectory.hpp"

namespace stochprice {

namespace detail {

inline void check_start(double p0, std::size_t horizon) {
  if (!std::isfinite(p0) || p0 <= 0.0) {
    throw DomainError("starting price must be positive and finite");
  }
  if (horizon < 1) throw DomainError("horizon must be at least 1 trading day");
}

inline void warn_if_negative(const std::vector<double>& prices, SeededStream s,
                             std::string_view model) {
  for (double p : prices) {
    if (p <= 0.0) {
      warn(std::string(model) + " trajectory (seed " + std::to_string(s.seed) +
           ", stream " + std::to_string(s.stream_id) + ") crossed zero");
      return;
    }
  }
}

}  // namespace detail

/// Arithmetic random walk: p[t+1] = p[t] + mu + sigma * z_t, one standard
/// normal per step from the stream. Prices are not floored at zero.
inline Trajectory simulate_normal(const NormalMoveModel& model, double p0,
                                  std::size_t horizon, SeededStream stream) {
  model.validate();
  detail::check_start(p0, horizon);
  Philox4x32 rng(stream);
  Trajectory traj{{}, stream, ModelKind::kNormal};
  traj.prices.reserve(horizon + 1);
  double p = p0;
  traj.prices.push_back(p);
  for (std::size_t t = 0; t < horizon; ++t) {
    p += model.mu + model.sigma * standard_normal(rng);
    traj.prices.push_back(p);
  }
  detail::warn_if_negative(traj.prices, stream, "normal");
  return traj;
}

/// Replicate k runs on stream (base_seed, k).
inline std::vector<Trajectory> simulate_normal_ensemble(const NormalMoveModel& model,
                                                        double p0, std::size_t horizon,
                                                        std::size_t n_replicates,
                                                        std::uint64_t base_seed) {
  if (n_replicates < 1) throw DomainError("ensemble needs at least 1 replicate");
  model.validate();
  detail::check_start(p0, horizon);
  std::vector<Trajectory> out(n_replicates);
  detail::parallel_for(n_replicates, [&](std::size_t k) {
    out[k] = simulate_normal(model, p0, horizon, {base_seed, k});
  });
  return out;
}

}  // namespace stochprice
