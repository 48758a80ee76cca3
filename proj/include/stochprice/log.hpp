#pragma once

#include <atomic>
#include <iostream>
#include <mutex>
#include <string_view>

namespace stochprice {

using WarningHandler = void (*)(std::string_view);

namespace detail {

inline void stderr_warning(std::string_view msg) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "warning: " << msg << '\n';
}

inline std::atomic<WarningHandler>& warning_handler_slot() {
  static std::atomic<WarningHandler> slot{&stderr_warning};
  return slot;
}

}  // namespace detail

/// Replaces the process-wide warning sink; nullptr silences warnings.
/// Returns the previous handler. The handler may be called concurrently.
inline WarningHandler set_warning_handler(WarningHandler handler) noexcept {
  return detail::warning_handler_slot().exchange(handler);
}

inline void warn(std::string_view msg) {
  if (auto h = detail::warning_handler_slot().load()) h(msg);
}

}  // namespace stochprice
