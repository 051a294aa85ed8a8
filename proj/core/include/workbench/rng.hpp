#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace workbench {

// SplitMix64 finalizer; seed scrambler and per-run seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed of run i under a master seed. This formula is part of the
// report reproducibility contract: seed_i = splitmix64(master + (i+1)*phi64).
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return splitmix64(master_seed + (run_index + 1) * 0x9e3779b97f4a7c15ull);
}

// mt19937_64 with hand-rolled draws. The engine's sequence is fixed by
// the standard; std::uniform_*_distribution sequences are not, so no
// standard distribution appears here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n) by rejection sampling; n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (pairs cached).
  double gaussian();

  // First k entries of a random permutation of [0, n).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  // Index drawn proportionally to nonnegative weights; returns the
  // lowest index if all weights are zero.
  std::size_t pick_weighted(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace workbench
