#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "stochprice/random.hpp"

namespace stochprice {

enum class ModelKind { kNormal, kBirthDeath };

constexpr std::string_view model_tag(ModelKind kind) noexcept {
  return kind == ModelKind::kNormal ? "normal" : "bd";
}

/// Daily prices for days 0..horizon; prices[0] is the starting price.
struct Trajectory {
  std::vector<double> prices;
  SeededStream stream;
  ModelKind model = ModelKind::kNormal;

  std::size_t horizon() const noexcept { return prices.empty() ? 0 : prices.size() - 1; }
};

}  // namespace stochprice
