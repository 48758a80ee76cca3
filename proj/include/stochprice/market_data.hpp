#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stochprice/error.hpp"

namespace stochprice {

/// Ordered daily prices, indexed by 0-based trading day.
/// Holds at least two strictly positive, finite values.
class PriceSeries {
 public:
  explicit PriceSeries(std::vector<double> prices, std::string label = {})
      : prices_(std::move(prices)), label_(std::move(label)) {
    if (prices_.size() < 2) {
      throw InsufficientDataError("price series needs at least 2 prices, got " +
                                  std::to_string(prices_.size()));
    }
    for (std::size_t i = 0; i < prices_.size(); ++i) {
      if (!std::isfinite(prices_[i]) || prices_[i] <= 0.0) {
        throw DomainError("price at day " + std::to_string(i) +
                          " is not a positive finite value");
      }
    }
  }

  std::span<const double> prices() const noexcept { return prices_; }
  std::size_t size() const noexcept { return prices_.size(); }
  double operator[](std::size_t day) const { return prices_[day]; }
  double front() const noexcept { return prices_.front(); }
  double back() const noexcept { return prices_.back(); }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<double> prices_;
  std::string label_;
};

/// Day-to-day differences of a price series; moves[i] = p[i+1] - p[i].
class MoveSeries {
 public:
  MoveSeries() = default;
  explicit MoveSeries(std::vector<double> moves)
      : moves_(std::move(moves)), source_length_(moves_.size() + 1) {}

  std::span<const double> moves() const noexcept { return moves_; }
  std::size_t size() const noexcept { return moves_.size(); }
  bool empty() const noexcept { return moves_.empty(); }
  double operator[](std::size_t i) const { return moves_[i]; }
  std::size_t source_length() const noexcept { return source_length_; }

 private:
  std::vector<double> moves_;
  std::size_t source_length_ = 1;
};

inline MoveSeries differences(std::span<const double> prices) {
  std::vector<double> moves;
  if (prices.size() > 1) moves.reserve(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) {
    moves.push_back(prices[i] - prices[i - 1]);
  }
  return MoveSeries(std::move(moves));
}

inline MoveSeries differences(const PriceSeries& series) {
  return differences(series.prices());
}

namespace detail {

inline std::string_view trim_field(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim_field(line.substr(start)));
      break;
    }
    fields.push_back(trim_field(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

inline bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace detail

/// Reads one price column from a header-bearing, comma-separated stream.
/// Rows are taken in file order; other columns are ignored. Data rows are
/// numbered from 1 in error messages.
inline PriceSeries parse_price_csv(std::istream& in,
                                   std::string_view column = "Open",
                                   std::string label = {}) {
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!detail::blank(line)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw SchemaError("CSV input is empty (no header line)");

  // Tolerate a UTF-8 byte order mark.
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  const auto header = detail::split_csv_line(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) {
      col = i;
      break;
    }
  }
  if (col == header.size()) {
    std::string available;
    for (const auto& h : header) {
      if (!available.empty()) available += ", ";
      available += h;
    }
    throw SchemaError("column '" + std::string(column) +
                      "' not found; available columns: " + available);
  }

  std::vector<double> prices;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (detail::blank(line)) continue;
    ++row;
    const auto fields = detail::split_csv_line(line);
    if (col >= fields.size()) {
      throw ParseError("row " + std::to_string(row) + ": missing '" +
                           std::string(column) + "' field",
                       row);
    }
    const auto cell = fields[col];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
      throw ParseError("row " + std::to_string(row) + ": '" + std::string(cell) +
                           "' is not a number",
                       row);
    }
    if (!std::isfinite(value) || value <= 0.0) {
      throw ParseError("row " + std::to_string(row) + ": price " +
                           std::string(cell) + " is not positive",
                       row);
    }
    prices.push_back(value);
  }
  if (prices.size() < 2) {
    throw InsufficientDataError("CSV has " + std::to_string(prices.size()) +
                                " data row(s); at least 2 are required");
  }
  return PriceSeries(std::move(prices), std::move(label));
}

}  // namespace stochprice
