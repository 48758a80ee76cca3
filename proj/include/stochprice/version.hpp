#pragma once

namespace stochprice {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stochprice
