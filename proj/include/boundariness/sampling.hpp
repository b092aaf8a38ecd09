#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace boundariness::sampling {

/// Counter-based generator: the i-th draw is a pure function of (key, i), so
/// a stream can be forked per work item without coupling to scheduling.
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Independent child stream for work item `index`.
  RandomStream fork(std::uint64_t index) const;

  double uniform();   // [0, 1)
  double gaussian();  // standard normal

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_label(std::uint64_t seed, std::string_view label);

/// Inclusive linear axis: steps points from min to max (steps == 1 gives
/// {min}), plus any extra values appended in order.
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;
  std::vector<double> extra;

  std::vector<double> values() const;
};

struct ScanConfig {
  std::uint64_t seed = 1;
  std::size_t n_samples = 500;
  double psd_tol = 1e-9;
  int bisect_depth = 40;
  std::map<std::string, GridAxis> grid;

  /// Throws InputError on n_samples < 1, bisect_depth outside [10, 60],
  /// negative psd_tol or an empty grid axis.
  void validate() const;
};

RandomStream derive_stream(const ScanConfig& cfg, std::string_view label);
RandomStream derive_stream(std::uint64_t seed, std::string_view label);

/// Runs fn(i) for i in [0, n) over contiguous chunks on up to
/// hardware_concurrency threads. fn must only write to slot i of any shared
/// output. The exception from the lowest failing chunk is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace boundariness::sampling
