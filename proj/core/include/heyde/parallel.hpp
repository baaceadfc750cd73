#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace heyde {

/// Evaluates fn(i) for i in [0, count) across `shards` worker threads. Each shard owns a
/// contiguous index range and writes into its own slots, so the result order depends only on
/// the index, never on scheduling. shards == 0 picks hardware_concurrency().
template <class Fn>
auto sharded_map(std::size_t count, std::size_t shards, Fn fn) {
  using Result = decltype(fn(std::size_t{}));
  if (shards == 0) shards = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  shards = std::clamp<std::size_t>(shards, 1, std::max<std::size_t>(count, 1));

  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(shards);
  auto run_shard = [&](std::size_t s) {
    const std::size_t begin = count * s / shards;
    const std::size_t end = count * (s + 1) / shards;
    try {
      for (std::size_t i = begin; i < end; ++i) slots[i].emplace(fn(i));
    } catch (...) {
      errors[s] = std::current_exception();
    }
  };

  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(shards);
    for (std::size_t s = 0; s < shards; ++s) workers.emplace_back(run_shard, s);
    for (auto& w : workers) w.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<Result> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace heyde
