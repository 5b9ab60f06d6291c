#ifndef WEBERBOX_IO_HPP
#define WEBERBOX_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace weberbox {

/// Locale-independent formatting with 15 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

/// Thread cap from WEBERBOX_THREADS (0 or unset = hardware concurrency).
inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("WEBERBOX_THREADS");
  if (env == nullptr) return hw;
  const long v = std::strtol(env, nullptr, 10);
  if (v <= 0) return hw;
  return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
}

/// Static-partition parallel loop; results must be written to pre-sized
/// per-index slots so output order is deterministic.
inline void parallel_for(size_t count, const std::function<void(size_t)>& body) {
  const unsigned threads = thread_budget();
  if (threads <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (size_t i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace weberbox

#endif  // WEBERBOX_IO_HPP
