#pragma once

#include <cstdint>
#include <random>

namespace wdistill {

// Reproducible random source.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++ standard.
// Uniforms take the top 53 bits of one engine draw: u = (x >> 11) * 2^-53.
// Gaussians use the basic Box-Muller transform on two uniforms (u1 mapped to
// (0,1] so log() is finite), returning cos and sin variates alternately.
// No std::*_distribution is used, since those are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream `index` of a master seed: the engine is seeded with
  // splitmix64(master ^ splitmix64(index + 1)).
  static Rng substream(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();  // N(0, 1)

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace wdistill
