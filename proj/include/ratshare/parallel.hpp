#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ratshare/error.hpp"

namespace ratshare {

/// Thread cap from RATSHARE_THREADS, or nullopt when unset.
inline std::optional<unsigned> threads_from_env() {
  const char* raw = std::getenv("RATSHARE_THREADS");
  if (raw == nullptr) return std::nullopt;
  const std::string text(raw);
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || v < 1)
    throw Error(ErrorCode::BadConfig, "RATSHARE_THREADS must be a positive integer, got '" + text + "'");
  return static_cast<unsigned>(v);
}

inline unsigned max_threads() {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const auto cap = threads_from_env();
  return cap ? std::min(*cap, hw) : hw;
}

/// Evaluates fn(0..count-1) on up to max_threads() workers. Results come
/// back in index order, so the output never depends on scheduling.
template <typename Fn>
auto parallel_map(std::size_t count, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<std::optional<R>> slots(count);
  const std::size_t workers = std::min<std::size_t>(max_threads(), count);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](std::size_t w) {
    try {
      for (std::size_t idx = w; idx < count; idx += workers) slots[idx].emplace(fn(idx));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ratshare
