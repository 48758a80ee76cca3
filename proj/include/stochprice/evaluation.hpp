#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stochprice/error.hpp"
#include "stochprice/infotheory.hpp"
#include "stochprice/market_data.hpp"
#include "stochprice/model_fitting.hpp"
#include "stochprice/parallel.hpp"
#include "stochprice/random.hpp"
#include "stochprice/sim_birthdeath.hpp"
#include "stochprice/sim_normal.hpp"

namespace stochprice {

/// What the entropy and lag-1 MI rows are computed over.
enum class MetricBasis { kPrices, kMoves };

constexpr const char* basis_name(MetricBasis b) noexcept {
  return b == MetricBasis::kPrices ? "prices" : "moves";
}

// Sub-seed tags. Each consumer of randomness in an evaluation gets its own
// seed derived from the base seed, so the three never share a stream.
inline constexpr std::uint64_t kModel1SeedTag = 1;
inline constexpr std::uint64_t kModel2SeedTag = 2;
inline constexpr std::uint64_t kShuffleSeedTag = 3;

struct EvaluationOptions {
  std::size_t n_replicates = 100;
  std::size_t bin_count = 10;
  std::uint64_t base_seed = 0;
  MetricBasis basis = MetricBasis::kPrices;
  std::size_t n_shuffles = 1000;
  double floor_quantile = 0.99;
};

struct SourceMetrics {
  std::string source;
  double entropy_bits = 0.0;
  double mi_lag1_bits = 0.0;
  std::size_t n_replicates = 0;
  std::vector<double> entropy_per_replicate;
  std::vector<double> mi_per_replicate;
};

struct CrossMoveMetric {
  double mean_bits = 0.0;
  std::vector<double> per_replicate;
};

struct EvaluationReport {
  SourceMetrics actual;
  SourceMetrics model1;
  SourceMetrics model2;
  CrossMoveMetric model1_vs_actual_moves;
  CrossMoveMetric model2_vs_actual_moves;
  /// Upper quantile of MI(actual moves, shuffled actual moves).
  double shuffle_bias_floor_bits = 0.0;
  std::size_t n_shuffles = 0;
  double floor_quantile = 0.99;
  BinningSpec metric_binning;
  BinningSpec move_binning;
  MetricBasis basis = MetricBasis::kPrices;
  std::uint64_t base_seed = 0;
  NormalMoveModel normal_model;
  BirthDeathModel bd_model;
  double p0 = 0.0;
  std::size_t horizon = 0;
};

/// MI between two move series paired by day index.
inline double cross_move_mi(std::span<const double> actual_moves,
                            std::span<const double> simulated_moves, const BinningSpec& spec) {
  if (actual_moves.size() != simulated_moves.size()) {
    throw DomainError("cross move MI needs equal-length series (" +
                      std::to_string(actual_moves.size()) + " vs " +
                      std::to_string(simulated_moves.size()) + ")");
  }
  std::vector<SamplePair> pairs;
  pairs.reserve(actual_moves.size());
  for (std::size_t i = 0; i < actual_moves.size(); ++i) {
    pairs.emplace_back(actual_moves[i], simulated_moves[i]);
  }
  return mutual_information_bits(pairs, spec, spec);
}

inline double cross_move_mi(const MoveSeries& actual, const MoveSeries& simulated,
                            const BinningSpec& spec) {
  return cross_move_mi(actual.moves(), simulated.moves(), spec);
}

/// Fisher-Yates shuffle driven by one stream.
inline std::vector<double> shuffled(std::span<const double> xs, SeededStream stream) {
  std::vector<double> out(xs.begin(), xs.end());
  Philox4x32 rng(stream);
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

/// Nearest-rank quantile of an unsorted sample.
inline double nearest_rank_quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw DomainError("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(xs.size())));
  rank = std::clamp<std::size_t>(rank, 1, xs.size());
  return xs[rank - 1];
}

/// Bias floor of the plug-in cross-MI: the given quantile of
/// MI(actual, permutation of actual) over n_shuffles permutations.
/// Shuffle k uses stream (seed, k).
inline double shuffled_mi_floor(std::span<const double> actual_moves, const BinningSpec& spec,
                                std::size_t n_shuffles, std::uint64_t seed,
                                double quantile = 0.99) {
  if (n_shuffles < 1) throw DomainError("bias floor needs at least 1 shuffle");
  std::vector<double> mis(n_shuffles);
  detail::parallel_for(n_shuffles, [&](std::size_t k) {
    mis[k] = cross_move_mi(actual_moves, shuffled(actual_moves, {seed, k}), spec);
  });
  return nearest_rank_quantile(std::move(mis), quantile);
}

namespace detail {

inline double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

struct SeriesMetrics {
  double entropy;
  double mi;
};

inline SeriesMetrics series_metrics(std::span<const double> prices, MetricBasis basis,
                                    const BinningSpec& spec) {
  MoveSeries moves;
  std::span<const double> xs = prices;
  if (basis == MetricBasis::kMoves) {
    moves = differences(prices);
    xs = moves.moves();
  }
  const auto pairs = lag_pairs(xs, 1);
  return {entropy_bits(bin_samples(xs, spec)), mutual_information_bits(pairs, spec, spec)};
}

}  // namespace detail

/// Scores both models against the actual series. Each model is simulated for
/// n_replicates trajectories from the first actual price over the actual
/// horizon; entropy, lag-1 MI and cross move-MI are computed per replicate on
/// binnings derived from the actual data, then averaged.
inline EvaluationReport evaluate(const PriceSeries& actual, const NormalMoveModel& m1,
                                 const BirthDeathModel& m2, const EvaluationOptions& opt) {
  if (opt.n_replicates < 1) throw DomainError("evaluation needs at least 1 replicate");
  if (opt.bin_count < 1) throw DomainError("bin_count must be at least 1");
  m1.validate();
  m2.validate();

  EvaluationReport rep;
  rep.basis = opt.basis;
  rep.base_seed = opt.base_seed;
  rep.normal_model = m1;
  rep.bd_model = m2;
  rep.p0 = actual.front();
  rep.horizon = actual.size() - 1;
  rep.n_shuffles = opt.n_shuffles;
  rep.floor_quantile = opt.floor_quantile;

  const MoveSeries actual_moves = differences(actual);
  rep.move_binning = make_binning(actual_moves.moves(), opt.bin_count, "actual moves");
  rep.metric_binning = opt.basis == MetricBasis::kPrices
                           ? make_binning(actual.prices(), opt.bin_count, "actual prices")
                           : rep.move_binning;

  const auto actual_metrics =
      detail::series_metrics(actual.prices(), opt.basis, rep.metric_binning);
  rep.actual = {"actual", actual_metrics.entropy, actual_metrics.mi, 1,
                {actual_metrics.entropy}, {actual_metrics.mi}};

  auto score = [&](const std::vector<Trajectory>& ensemble, const char* name,
                   SourceMetrics& metrics, CrossMoveMetric& cross) {
    const std::size_t n = ensemble.size();
    metrics.source = name;
    metrics.n_replicates = n;
    metrics.entropy_per_replicate.assign(n, 0.0);
    metrics.mi_per_replicate.assign(n, 0.0);
    cross.per_replicate.assign(n, 0.0);
    detail::parallel_for(n, [&](std::size_t k) {
      const auto m = detail::series_metrics(ensemble[k].prices, opt.basis, rep.metric_binning);
      metrics.entropy_per_replicate[k] = m.entropy;
      metrics.mi_per_replicate[k] = m.mi;
      cross.per_replicate[k] =
          cross_move_mi(actual_moves, differences(ensemble[k].prices), rep.move_binning);
    });
    metrics.entropy_bits = detail::mean_of(metrics.entropy_per_replicate);
    metrics.mi_lag1_bits = detail::mean_of(metrics.mi_per_replicate);
    cross.mean_bits = detail::mean_of(cross.per_replicate);
  };

  score(simulate_normal_ensemble(m1, rep.p0, rep.horizon, opt.n_replicates,
                                 derive_seed(opt.base_seed, kModel1SeedTag)),
        "model1", rep.model1, rep.model1_vs_actual_moves);
  score(simulate_bd_ensemble(m2, rep.p0, rep.horizon, opt.n_replicates,
                             derive_seed(opt.base_seed, kModel2SeedTag)),
        "model2", rep.model2, rep.model2_vs_actual_moves);

  if (opt.n_shuffles > 0) {
    rep.shuffle_bias_floor_bits =
        shuffled_mi_floor(actual_moves.moves(), rep.move_binning, opt.n_shuffles,
                          derive_seed(opt.base_seed, kShuffleSeedTag), opt.floor_quantile);
  }
  return rep;
}

}  // namespace stochprice
