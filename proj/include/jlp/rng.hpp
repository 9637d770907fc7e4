#ifndef JLP_RNG_HPP
#define JLP_RNG_HPP

#include <cstdint>

namespace jlp::rng {

// Identifies the exact pseudorandom pipeline used for released artifacts.
// Recorded in release metadata; bump the version if any part of the
// generator, the seeding rule, or the variate transforms changes.
inline constexpr const char* kGeneratorId = "xoshiro256++/polar-box-muller/v1";

// SplitMix64 step: advances `state` and returns the next output.
// Used for seeding and for the seed-derivation rule below.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Deterministic per-trial seed derivation: seed_i = mix(master_seed, i).
// Implemented as one SplitMix64 output of (master + GOLDEN_GAMMA * (i + 1)),
// so trial streams are decorrelated yet reproducible from the master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// xoshiro256++ (Blackman/Vigna). State is seeded from four SplitMix64
// outputs, which keeps all-zero states unreachable.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1): top 53 bits of the next output.
  double next_double();

  // Uniform double in (0, 1), open at both ends; safe as a log/CDF argument.
  double next_double_open();

 private:
  std::uint64_t s_[4];
};

// Standard normal variates via the Marsaglia polar method (an exact
// transform of uniforms, no table-driven approximation), generated in
// pairs with one value cached between calls.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double next();

  Xoshiro256pp& uniform_source() { return gen_; }

 private:
  Xoshiro256pp gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace jlp::rng

namespace jlp {
// The generators are part of the library's public vocabulary; make them
// reachable without the nested namespace.
using rng::derive_seed;
using rng::kGeneratorId;
using rng::NormalSampler;
using rng::splitmix64_next;
using rng::Xoshiro256pp;
}  // namespace jlp

#endif  // JLP_RNG_HPP
