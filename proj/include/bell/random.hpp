#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bell {

inline constexpr std::uint64_t kDefaultSeed = 20140917;

// Seeded generator for property tests and demos. Built only on the raw
// mt19937_64 stream so sequences are identical across standard libraries;
// the <random> distributions are implementation-defined and are avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  // Standard normal via Box-Muller.
  double normal();
  // Flat (Dirichlet(1,...,1)) sample on the probability simplex.
  std::vector<double> simplex(std::size_t size);

 private:
  std::mt19937_64 engine_;
};

}  // namespace bell
