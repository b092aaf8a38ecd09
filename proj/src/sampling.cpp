#include "boundariness/sampling.hpp"

#include <cmath>
#include <numbers>

#include "boundariness/errors.hpp"

namespace boundariness::sampling {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(seed) ^ h);
}

RandomStream::result_type RandomStream::operator()() {
  const std::uint64_t c = counter_++;
  return mix64(key_ ^ mix64(c + 0x632be59bd9b4e019ULL));
}

RandomStream RandomStream::fork(std::uint64_t index) const {
  return RandomStream(mix64(key_ + 0xd1b54a32d192ed03ULL * (index + 1)));
}

double RandomStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double RandomStream::gaussian() {
  // Box-Muller, one value per call.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> GridAxis::values() const {
  std::vector<double> out;
  if (steps == 1) {
    out.push_back(min);
  } else if (steps > 1) {
    for (std::size_t i = 0; i < steps; ++i)
      out.push_back(min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

void ScanConfig::validate() const {
  if (n_samples < 1) throw InputError("config: n_samples must be >= 1");
  if (bisect_depth < 10 || bisect_depth > 60) throw InputError("config: bisect_depth must lie in [10, 60]");
  if (!(psd_tol >= 0.0)) throw InputError("config: psd_tol must be >= 0");
  for (const auto& [name, axis] : grid)
    if (axis.steps == 0 && axis.extra.empty()) throw InputError("config: grid axis '" + name + "' is empty");
}

RandomStream derive_stream(const ScanConfig& cfg, std::string_view label) { return derive_stream(cfg.seed, label); }

RandomStream derive_stream(std::uint64_t seed, std::string_view label) { return RandomStream(hash_label(seed, label)); }

}  // namespace boundariness::sampling
