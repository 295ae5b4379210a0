#pragma once

#include <cstdint>
#include <random>

namespace seqlevy {

/// SplitMix64 finalizer; bijective mixing of a 64-bit word.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Folds one identifier word into a seed. Substream derivation is the chain
///   seed' = mix64(seed ^ mix64(word)),
/// so a stream's seed depends only on (master, words...), never on the order
/// in which streams are instantiated.
std::uint64_t fold_in(std::uint64_t seed, std::uint64_t word) noexcept;

/// Identifies the random component a substream feeds.
enum class StreamComponent : std::uint64_t {
  Wiener = 0,
  LargeJumps = 1,
  SmallJumps = 2,
};

/// Seed of the substream for (context, replica, component, shell) under a
/// master seed. `context` separates independent sampling passes that reuse
/// the same replica indices (e.g. the two arms of a two-sample test).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t context,
                          std::uint64_t replica, StreamComponent component,
                          std::uint64_t shell = 0) noexcept;

/// Deterministic random stream: a seeded mt19937_64 plus hand-rolled
/// variate transforms, so every draw is bitwise reproducible independently
/// of the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_open01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is
  /// cached, so consumption from the engine stays deterministic.
  double gaussian();

  /// Poisson variate by sequential inversion, chunked so the running pmf
  /// never underflows for large rates.
  std::uint64_t poisson(double lambda);

 private:
  std::uint64_t poisson_inversion(double lambda);

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace seqlevy
