#pragma once

#include <cstdint>

namespace rqa {

// Named substreams of a master seed. Each (master, stream, counter) triple
// keys an independent generator, so per-iteration, per-role batches are
// reproducible and identical across weighting strategies.
enum class Stream : std::uint64_t {
  kInterior = 1,
  kBoundary = 2,
  kInitial = 3,
  kTestSet = 4,
  kNetworkInit = 5,
};

// Keyed counter-based generator. The key (master seed, stream tag, counter)
// is hashed through the SplitMix64 finalizer to produce the stream state,
// which then advances as a plain SplitMix64 sequence. All draws are computed
// from raw 64-bit words, so sequences are bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng substream(std::uint64_t master, Stream stream,
                       std::uint64_t counter);

  std::uint64_t next_u64();

  // Uniform strictly inside (0, 1).
  double uniform01();
  double uniform(double a, double b);

  // Standard normal via Box-Muller; pairs are cached.
  double normal();

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace rqa
