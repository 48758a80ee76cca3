#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stochprice/error.hpp"
#include "stochprice/market_data.hpp"

namespace stochprice {

/// Model 1: daily moves are i.i.d. Normal(mu, sigma).
struct NormalMoveModel {
  double mu = 0.0;
  double sigma = 0.0;

  void validate() const {
    if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0) {
      throw DomainError("normal move model needs finite mu and sigma >= 0");
    }
  }
};

/// Model 2: price changes as a birth-death process. Births (up-jumps) arrive
/// at rate `lambda`, deaths (down-jumps) at rate `mu_death`, both per trading
/// day; jump sizes are exponential with the given means.
struct BirthDeathModel {
  double lambda = 0.0;
  double mu_death = 0.0;
  double mean_increment = 0.0;
  double mean_decrement = 0.0;

  double total_rate() const noexcept { return lambda + mu_death; }
  double birth_probability() const noexcept { return lambda / (lambda + mu_death); }

  void validate() const {
    for (double v : {lambda, mu_death, mean_increment, mean_decrement}) {
      if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError("birth-death model parameters must be positive and finite");
      }
    }
  }
};

/// Sign partition of a move series. Zero moves belong to neither side.
struct EventRecord {
  std::vector<std::size_t> birth_days;
  std::vector<std::size_t> death_days;
  std::vector<double> increments;
  std::vector<double> decrements;
};

inline double sample_mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

/// Sample mean and standard deviation (n-1 denominator).
inline NormalMoveModel fit_normal(const MoveSeries& moves) {
  const auto xs = moves.moves();
  if (xs.size() < 2) {
    throw InsufficientDataError("fit_normal needs at least 2 moves, got " +
                                std::to_string(xs.size()));
  }
  const double mean = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

inline EventRecord extract_events(const MoveSeries& moves) {
  EventRecord rec;
  for (std::size_t day = 0; day < moves.size(); ++day) {
    const double d = moves[day];
    if (d > 0.0) {
      rec.birth_days.push_back(day);
      rec.increments.push_back(d);
    } else if (d < 0.0) {
      rec.death_days.push_back(day);
      rec.decrements.push_back(-d);
    }
  }
  return rec;
}

/// Day counts between consecutive events. The stretch before the first event
/// is not a between-events time and is dropped.
inline std::vector<double> interevent_gaps(std::span<const std::size_t> event_days) {
  if (event_days.size() < 2) {
    throw InsufficientDataError("inter-event gaps need at least 2 events, got " +
                                std::to_string(event_days.size()));
  }
  std::vector<double> gaps;
  gaps.reserve(event_days.size() - 1);
  for (std::size_t i = 1; i < event_days.size(); ++i) {
    if (event_days[i] <= event_days[i - 1]) {
      throw DomainError("event days must be strictly increasing");
    }
    gaps.push_back(static_cast<double>(event_days[i] - event_days[i - 1]));
  }
  return gaps;
}

/// Exponential maximum-likelihood rate, 1 / mean.
inline double fit_exponential_rate(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("exponential fit needs a non-empty sample");
  for (double s : samples) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DomainError("exponential fit needs strictly positive finite samples");
    }
  }
  return 1.0 / sample_mean(samples);
}

inline BirthDeathModel fit_birth_death(const MoveSeries& moves) {
  const EventRecord rec = extract_events(moves);
  if (rec.birth_days.size() < 2) {
    throw InsufficientDataError("birth-death fit needs at least 2 births (price increases), got " +
                                std::to_string(rec.birth_days.size()));
  }
  if (rec.death_days.size() < 2) {
    throw InsufficientDataError("birth-death fit needs at least 2 deaths (price decreases), got " +
                                std::to_string(rec.death_days.size()));
  }
  BirthDeathModel m;
  m.lambda = fit_exponential_rate(interevent_gaps(rec.birth_days));
  m.mu_death = fit_exponential_rate(interevent_gaps(rec.death_days));
  m.mean_increment = sample_mean(rec.increments);
  m.mean_decrement = sample_mean(rec.decrements);
  return m;
}

}  // namespace stochprice
