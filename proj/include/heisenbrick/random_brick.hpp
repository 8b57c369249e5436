#pragma once

#include <cstdint>
#include <vector>

#include "heisenbrick/brick.hpp"

namespace hb {

/// splitmix64: tiny, portable, and byte-identical across runs, which the
/// determinism contract requires (std distributions are not pinned by the
/// standard).
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by rejection.
  uint64_t below(uint64_t n) {
    const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }
};

struct ComponentSpec {
  enum class Kind { singleton, interval, uniform };
  Kind kind = Kind::uniform;
  uint32_t size = 1;
};

struct RandomBrickSpec {
  uint32_t p = 5;
  uint32_t n = 1;
  std::vector<ComponentSpec> x_profiles, y_profiles;  // length n
  uint32_t z_size = 1;
};

/// Deterministic under (spec, seed); components sample without replacement
/// from F*, Z from F.
Brick random_brick(const RandomBrickSpec& spec, uint64_t seed, FieldPtr field);

/// A random profile (mix of singletons, intervals, uniform draws) for sweep
/// suites, deterministic under the rng state.
RandomBrickSpec random_spec(uint32_t p, uint32_t n, Rng& rng);

}  // namespace hb
