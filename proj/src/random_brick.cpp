#include "heisenbrick/random_brick.hpp"

#include <numeric>
#include <string>

namespace hb {

namespace {

// First `count` entries of a partial Fisher-Yates shuffle of `candidates`.
ResidueSet sample_without_replacement(FieldPtr field, std::vector<uint16_t> candidates,
                                      uint32_t count, Rng& rng) {
  ResidueSet s(std::move(field));
  for (uint32_t k = 0; k < count; ++k) {
    const uint64_t j = k + rng.below(candidates.size() - k);
    std::swap(candidates[k], candidates[j]);
    s.insert(candidates[k]);
  }
  return s;
}

ResidueSet component(const FieldPtr& field, const ComponentSpec& spec, Rng& rng) {
  const uint32_t p = field->p();
  if (spec.size == 0 || spec.size > p - 1)
    throw input_error("component size must be in [1, p-1], got " +
                      std::to_string(spec.size));
  switch (spec.kind) {
    case ComponentSpec::Kind::singleton: {
      ResidueSet s(field);
      s.insert(1 + static_cast<uint32_t>(rng.below(p - 1)));
      return s;
    }
    case ComponentSpec::Kind::interval: {
      // A length-L window inside [1, p-1]: stays in F* without wrapping.
      const uint32_t start = 1 + static_cast<uint32_t>(rng.below(p - spec.size));
      return ResidueSet::interval(field, start, start + spec.size);
    }
    case ComponentSpec::Kind::uniform: {
      std::vector<uint16_t> cand(p - 1);
      std::iota(cand.begin(), cand.end(), uint16_t{1});
      return sample_without_replacement(field, std::move(cand), spec.size, rng);
    }
  }
  throw input_error("unknown component kind");
}

}  // namespace

Brick random_brick(const RandomBrickSpec& spec, uint64_t seed, FieldPtr field) {
  if (field->p() != spec.p) throw input_error("random_brick: field/spec mismatch");
  if (spec.x_profiles.size() != spec.n || spec.y_profiles.size() != spec.n)
    throw input_error("random_brick: profile count must equal n");
  if (spec.z_size == 0 || spec.z_size > spec.p)
    throw input_error("z_size must be in [1, p]");

  Rng rng(seed);
  std::vector<ResidueSet> xs, ys;
  for (uint32_t i = 0; i < spec.n; ++i) xs.push_back(component(field, spec.x_profiles[i], rng));
  for (uint32_t i = 0; i < spec.n; ++i) ys.push_back(component(field, spec.y_profiles[i], rng));

  std::vector<uint16_t> cand(spec.p);
  std::iota(cand.begin(), cand.end(), uint16_t{0});
  ResidueSet z = sample_without_replacement(field, std::move(cand), spec.z_size, rng);
  return Brick::make(std::move(field), std::move(xs), std::move(ys), std::move(z));
}

RandomBrickSpec random_spec(uint32_t p, uint32_t n, Rng& rng) {
  RandomBrickSpec spec;
  spec.p = p;
  spec.n = n;
  auto draw = [&]() {
    ComponentSpec c;
    const uint64_t kind = rng.below(5);
    if (kind == 0) {
      c.kind = ComponentSpec::Kind::singleton;
      c.size = 1;
    } else if (kind <= 2) {
      c.kind = ComponentSpec::Kind::interval;
      c.size = 1 + static_cast<uint32_t>(rng.below(p - 1));
    } else {
      c.kind = ComponentSpec::Kind::uniform;
      c.size = 1 + static_cast<uint32_t>(rng.below(p - 1));
    }
    return c;
  };
  for (uint32_t i = 0; i < n; ++i) spec.x_profiles.push_back(draw());
  for (uint32_t i = 0; i < n; ++i) spec.y_profiles.push_back(draw());
  spec.z_size = 1 + static_cast<uint32_t>(rng.below(p));
  return spec;
}

}  // namespace hb
