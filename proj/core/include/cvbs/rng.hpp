#pragma once

#include <cstdint>
#include <random>

namespace cvbs {

// SplitMix64 finalizer. Used for seed expansion and for deriving named
// sub-streams from one master seed.
std::uint64_t splitmix64(std::uint64_t x);

// Derives the seed of a named sub-stream from a master seed. Stages of a
// pipeline draw from disjoint streams, so rerunning one stage in isolation
// reproduces exactly the draws it made inside the full pipeline.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

// Stream ids used by the experiment pipeline.
inline constexpr std::uint64_t kHaarStream = 1;
inline constexpr std::uint64_t kHomodyneStream = 2;
inline constexpr std::uint64_t kFockStream = 3;

// Deterministic random source. Gaussian variates use Box-Muller on explicit
// 53-bit uniforms, so the stream is pinned by the seed alone and does not
// depend on library internals of std::normal_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on (0, 1]. The lower end is excluded so log() is always finite.
  double uniform01();

  // Standard normal.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cvbs
