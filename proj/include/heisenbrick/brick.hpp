#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heisenbrick/heisenberg.hpp"
#include "heisenbrick/residue_set.hpp"

namespace hb {

struct Caps {
  uint64_t brute_force = ElementSet::kDefaultBruteCap;
  uint64_t fibers = 10'000'000;
};

/// B = [X, Y, Z]: the product-structured subset {[x,y,z] : x_i in X_i,
/// y_i in Y_i, z in Z}. Coordinate sets must avoid 0 and be nonempty;
/// zero_relaxed marks the designated witness constructions (the prop2 and
/// small-period families) whose intervals start at 0.
struct Brick {
  FieldPtr field;
  uint32_t n = 1;
  std::vector<ResidueSet> xs, ys;
  ResidueSet z;
  bool zero_relaxed = false;

  static Brick make(FieldPtr field, std::vector<ResidueSet> xs,
                    std::vector<ResidueSet> ys, ResidueSet z,
                    bool zero_relaxed = false);

  GroupParams params() const { return {field, n}; }
};

/// |B| = |Z| * prod |X_i||Y_i|; throws computation_error past 64 bits.
uint64_t brick_cardinality(const Brick& b);

bool brick_contains(const Brick& b, const HeisElement& g);

/// Materializes B; requires p^(2n+1) under the brute-force cap.
ElementSet brick_elements(const Brick& b, uint64_t brute_cap = ElementSet::kDefaultBruteCap);

/// A subset of H_n, coordinate-slice by slice: over each support point
/// (u, v) the set of center coordinates {w : [u,v,w] in the set}. Built from
/// brick products, so the support is the full grid of per-coordinate support
/// lists and every fiber is nonempty. Fibers are interned: equal fibers share
/// one ResidueSet in the pool.
class FiberedProductSet {
public:
  const FieldPtr& field() const { return field_; }
  uint32_t n() const { return n_; }
  uint32_t p() const { return field_->p(); }

  const std::vector<std::vector<uint16_t>>& u_support() const { return u_support_; }
  const std::vector<std::vector<uint16_t>>& v_support() const { return v_support_; }

  uint64_t support_size() const { return fiber_of_.size(); }
  uint64_t total_cardinality() const { return total_; }

  const std::vector<ResidueSet>& pool() const { return pool_; }
  uint32_t pool_index(uint64_t grid) const { return fiber_of_[grid]; }

  /// Fiber over (u, v); null when (u, v) is outside the support.
  const ResidueSet* fiber(std::span<const uint16_t> u,
                          std::span<const uint16_t> v) const;

  /// Decodes a grid index into the (u, v) vectors.
  void decode(uint64_t grid, std::vector<uint16_t>& u, std::vector<uint16_t>& v) const;

  /// Calls fn(grid_index, u, v, fiber) in canonical (u, v)-lexicographic order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::vector<uint16_t> u(n_), v(n_);
    for (uint64_t g = 0; g < fiber_of_.size(); ++g) {
      decode(g, u, v);
      fn(g, u, v, pool_[fiber_of_[g]]);
    }
  }

  struct Projections {
    std::vector<ResidueSet> u, v;
    ResidueSet w;
  };
  Projections projections() const;

  ElementSet to_element_set(uint64_t brute_cap = ElementSet::kDefaultBruteCap) const;

private:
  friend FiberedProductSet product_fibered(const Brick&, const Brick&, uint64_t);

  FieldPtr field_;
  uint32_t n_ = 1;
  std::vector<std::vector<uint16_t>> u_support_, v_support_;
  std::vector<uint32_t> fiber_of_;  // mixed-radix grid over (u_1..u_n, v_1..v_n)
  std::vector<ResidueSet> pool_;
  uint64_t total_ = 0;

  FiberedProductSet() = default;
};

/// B * B' computed exactly, fiber by fiber: the fiber over (u, v) is
/// (Z + Z') + sum_i D_i(u_i, v_i) with D_i the product set of the
/// intersections X_i ∩ (u_i - X'_i) and Y'_i ∩ (v_i - Y_i).
FiberedProductSet product_fibered(const Brick& a, const Brick& b,
                                  uint64_t fiber_cap = Caps{}.fibers);

inline FiberedProductSet square_fibered(const Brick& b,
                                        uint64_t fiber_cap = Caps{}.fibers) {
  return product_fibered(b, b, fiber_cap);
}

/// Single fiber of B * B' over (u, v) without materializing the rest.
ResidueSet fiber_at(const Brick& a, const Brick& b, std::span<const uint16_t> u,
                    std::span<const uint16_t> v);
inline ResidueSet fiber_at(const Brick& b, std::span<const uint16_t> u,
                           std::span<const uint16_t> v) {
  return fiber_at(b, b, u, v);
}

}  // namespace hb
