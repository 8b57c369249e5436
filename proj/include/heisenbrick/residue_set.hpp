#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "heisenbrick/prime_field.hpp"

namespace hb {

/// Subset of Z/p as a fixed-width bit array; the universal currency for the
/// coordinate sets X_i, Y_i, Z and for product-set fibers. Bits at positions
/// >= p of the last word are always zero.
class ResidueSet {
public:
  explicit ResidueSet(FieldPtr field);
  static ResidueSet full(FieldPtr field);
  static ResidueSet units(FieldPtr field);  // F* = F \ {0}
  static ResidueSet of(FieldPtr field, std::initializer_list<uint32_t> values);
  static ResidueSet of(FieldPtr field, const std::vector<uint32_t>& values);
  /// {lo, lo+1, ..., hi-1} reduced mod p; requires hi - lo <= p.
  static ResidueSet interval(FieldPtr field, uint32_t lo, uint32_t hi);

  const FieldPtr& field() const { return field_; }
  uint32_t p() const { return field_->p(); }

  bool contains(uint32_t r) const {
    return (words_[r >> 6] >> (r & 63)) & 1;
  }
  void insert(uint32_t r);
  void erase(uint32_t r);

  uint32_t cardinality() const;
  bool empty() const { return cardinality() == 0; }
  bool is_full() const { return cardinality() == p(); }

  /// Members in ascending order.
  std::vector<uint16_t> values() const;
  /// Smallest residue not in the set, or p when the set is full.
  uint32_t first_missing() const;

  std::span<const uint64_t> words() const { return words_; }
  std::size_t word_count() const { return words_.size(); }

  bool operator==(const ResidueSet& o) const {
    return p() == o.p() && words_ == o.words_;
  }

  ResidueSet& operator&=(const ResidueSet& o);
  ResidueSet& operator|=(const ResidueSet& o);
  friend ResidueSet operator&(ResidueSet a, const ResidueSet& b) { return a &= b; }
  friend ResidueSet operator|(ResidueSet a, const ResidueSet& b) { return a |= b; }

private:
  ResidueSet(FieldPtr field, std::vector<uint64_t> words)
      : field_(std::move(field)), words_(std::move(words)) {}

  FieldPtr field_;
  std::vector<uint64_t> words_;

  friend ResidueSet sumset(const ResidueSet&, const ResidueSet&);
  friend ResidueSet translate(const ResidueSet&, uint32_t);
  friend ResidueSet product_set(const ResidueSet&, const ResidueSet&);
};

/// {a + b : a in A, b in B}. Word-parallel: the larger operand is doubled into
/// a 2p-bit buffer and rotate-OR'ed once per member of the smaller operand.
/// In debug-style builds the Cauchy-Davenport bound is asserted on the result.
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);

/// {lambda * a}; lambda must be nonzero.
ResidueSet dilate(const ResidueSet& a, uint32_t lambda);

/// {-a}.
ResidueSet reflect(const ResidueSet& a);

/// {a + t}.
ResidueSet translate(const ResidueSet& a, uint32_t t);

/// {c - a : a in A}.
ResidueSet difference_from(uint32_t c, const ResidueSet& a);

/// {x * y : x in X, y in Y}. Zero members are handled directly; the nonzero
/// parts multiply as a sumset of discrete logs over Z/(p-1).
ResidueSet product_set(const ResidueSet& x, const ResidueSet& y);

/// r(t) = #{(a,b) in X x Y : ab = t}; X, Y must avoid 0.
std::vector<uint64_t> product_count_table(const ResidueSet& x, const ResidueSet& y);

/// counts[a] = |X ∩ (a - X)| for every a in F: the popular-shift scan.
std::vector<uint32_t> shift_intersection_counts(const ResidueSet& x);

}  // namespace hb
