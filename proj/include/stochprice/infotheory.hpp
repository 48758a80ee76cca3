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

namespace stochprice {

/// Equal-width bins over [lower, upper]. Values outside the range are
/// clamped into the edge bins, so a binning derived from one data set can
/// score another.
struct BinningSpec {
  std::size_t bin_count = 1;
  double lower = 0.0;
  double upper = 1.0;
  std::string source_tag;

  double width() const noexcept { return (upper - lower) / static_cast<double>(bin_count); }

  std::size_t bin_of(double x) const {
    if (std::isnan(x)) throw DomainError("cannot bin a NaN sample");
    const double pos = std::floor((x - lower) / width());
    if (!(pos > 0.0)) return 0;
    if (pos >= static_cast<double>(bin_count - 1)) return bin_count - 1;
    return static_cast<std::size_t>(pos);
  }

  void validate() const {
    if (bin_count < 1) throw DomainError("bin_count must be at least 1");
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
      throw DomainError("binning range must satisfy lower < upper");
    }
  }
};

struct Histogram {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  BinningSpec spec;
};

/// Range taken from the sample min/max. A constant sample gets a single
/// unit-width bin centred on the value.
inline BinningSpec make_binning(std::span<const double> samples, std::size_t bin_count,
                                std::string source_tag = {}) {
  if (samples.empty()) throw DomainError("cannot derive a binning from an empty sample");
  if (bin_count < 1) throw DomainError("bin_count must be at least 1");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (!std::isfinite(*lo) || !std::isfinite(*hi)) {
    throw DomainError("binning samples must be finite");
  }
  if (*lo == *hi) return {1, *lo - 0.5, *hi + 0.5, std::move(source_tag)};
  return {bin_count, *lo, *hi, std::move(source_tag)};
}

inline Histogram bin_samples(std::span<const double> samples, const BinningSpec& spec) {
  spec.validate();
  Histogram h{std::vector<std::uint64_t>(spec.bin_count, 0), 0, spec};
  for (double x : samples) ++h.counts[spec.bin_of(x)];
  h.total = samples.size();
  return h;
}

/// Plug-in Shannon entropy in bits of a count vector; empty bins contribute 0.
inline double entropy_bits(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw DomainError("entropy of an empty histogram is undefined");
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

inline double entropy_bits(const Histogram& hist) { return entropy_bits(hist.counts); }

using SamplePair = std::pair<double, double>;

/// Plug-in MI in bits: H(X) + H(Y) - H(X,Y) on the spec_x x spec_y grid.
/// Rounding can leave a tiny negative; the result is clamped at 0.
inline double mutual_information_bits(std::span<const SamplePair> pairs,
                                      const BinningSpec& spec_x, const BinningSpec& spec_y) {
  if (pairs.empty()) throw DomainError("mutual information needs at least one pair");
  spec_x.validate();
  spec_y.validate();
  std::vector<std::uint64_t> cx(spec_x.bin_count, 0);
  std::vector<std::uint64_t> cy(spec_y.bin_count, 0);
  std::vector<std::uint64_t> cxy(spec_x.bin_count * spec_y.bin_count, 0);
  for (const auto& [x, y] : pairs) {
    const auto i = spec_x.bin_of(x);
    const auto j = spec_y.bin_of(y);
    ++cx[i];
    ++cy[j];
    ++cxy[i * spec_y.bin_count + j];
  }
  const double mi = entropy_bits(cx) + entropy_bits(cy) - entropy_bits(cxy);
  return std::max(0.0, mi);
}

/// (x[t], x[t + lag]) for every valid t.
inline std::vector<SamplePair> lag_pairs(std::span<const double> series, std::size_t lag = 1) {
  if (series.size() <= lag) {
    throw InsufficientDataError("series of length " + std::to_string(series.size()) +
                                " has no pairs at lag " + std::to_string(lag));
  }
  std::vector<SamplePair> pairs;
  pairs.reserve(series.size() - lag);
  for (std::size_t t = 0; t + lag < series.size(); ++t) {
    pairs.emplace_back(series[t], series[t + lag]);
  }
  return pairs;
}

}  // namespace stochprice
