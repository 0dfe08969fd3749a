#pragma once

#include <cstdint>

namespace nga {

// SplitMix64 (Steele, Lea & Flood, 2014).
//
// This generator is part of the file-format contract: generated instances,
// parameter initializations and Gumbel noise are pure functions of a 64-bit
// seed through the exact bit operations below, so test vectors are portable
// across implementations. Floating-point draws use the top 53 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform();
  // Uniform on (0, 1); never returns 0, safe for log().
  double uniform_open();
  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller (one draw per call, nothing cached).
  double normal();
  // Standard Gumbel: -log(-log(U)).
  double gumbel();

  // Independent child stream; does not advance this generator.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

// Deterministic seed derivation used for per-sample and per-instance streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace nga
