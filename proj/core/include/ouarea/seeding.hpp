#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ouarea {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for substream `stream` of `seed`. Depends only on the pair, so
/// results do not depend on the order in which substreams are consumed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// derive_seed applied along a path of stream labels.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

/// Standard normal variates from one substream.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(mix64(seed)) {}
  double operator()() { return dist_(engine_); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace ouarea
