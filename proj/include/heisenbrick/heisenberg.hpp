#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heisenbrick/prime_field.hpp"

namespace hb {

/// Parameters of the group H_n over F_p: p^(2n+1) upper unitriangular
/// matrices [x, y, z], stored as flat residue vectors (the matrix realization
/// is never materialized; the product rule determines the group).
struct GroupParams {
  FieldPtr field;
  uint32_t n = 1;

  uint32_t p() const { return field->p(); }
};

/// Order p^(2n+1), or nullopt when it does not fit in 64 bits.
std::optional<uint64_t> group_order(const GroupParams& gp);

/// The triple [x, y, z]; all entries in [0, p).
struct HeisElement {
  std::vector<uint16_t> x, y;
  uint16_t z = 0;

  bool operator==(const HeisElement&) const = default;
};

HeisElement identity(const GroupParams& gp);

/// [x,y,z][x',y',z'] = [x+x', y+y', <x,y'> + z + z'].
HeisElement mul(const GroupParams& gp, const HeisElement& a, const HeisElement& b);

/// [x,y,z]^{-1} = [-x, -y, <x,y> - z].
HeisElement inv(const GroupParams& gp, const HeisElement& a);

/// a b a^{-1} b^{-1}.
HeisElement commutator(const GroupParams& gp, const HeisElement& a,
                       const HeisElement& b);

/// Whether the two-step nilpotency word [[a,b],c] evaluates to the identity
/// (it must, for every triple).
bool nilpotency_check(const GroupParams& gp, const HeisElement& a,
                      const HeisElement& b, const HeisElement& c);

/// Lexicographic rank of (x_1..x_n, y_1..y_n, z) in base p.
uint64_t element_rank(const GroupParams& gp, const HeisElement& a);
HeisElement element_unrank(const GroupParams& gp, uint64_t rank);

/// Explicit subset of H_n as a bit vector over element ranks. Only
/// constructible when p^(2n+1) fits under the brute-force cap, so every
/// oracle that materializes sets stays at desk scale by construction.
class ElementSet {
public:
  static constexpr uint64_t kDefaultBruteCap = 1'000'000;

  ElementSet(GroupParams gp, uint64_t brute_cap = kDefaultBruteCap);

  const GroupParams& params() const { return gp_; }
  uint64_t order() const { return order_; }
  uint64_t size() const { return size_; }

  bool contains_rank(uint64_t r) const {
    return (bits_[r >> 6] >> (r & 63)) & 1;
  }
  bool contains(const HeisElement& a) const {
    return contains_rank(element_rank(gp_, a));
  }
  void insert_rank(uint64_t r);
  void insert(const HeisElement& a) { insert_rank(element_rank(gp_, a)); }

  /// Ranks in ascending order = elements in lexicographic (x, y, z) order.
  std::vector<uint64_t> ranks() const;
  std::vector<HeisElement> elements() const;

  bool operator==(const ElementSet& o) const {
    return order_ == o.order_ && bits_ == o.bits_;
  }

private:
  GroupParams gp_;
  uint64_t order_ = 0;
  uint64_t size_ = 0;
  std::vector<uint64_t> bits_;
};

ElementSet full_group(const GroupParams& gp, uint64_t brute_cap = ElementSet::kDefaultBruteCap);

/// {s * t : s in S, t in T} by exhaustive enumeration.
ElementSet brute_product_set(const ElementSet& s, const ElementSet& t);

struct Lemma1Result {
  bool hypothesis_holds = false;  // |S| + |T| > |H_n|
  bool product_is_full = false;
  bool implication_holds = true;  // hypothesis => product = H_n
};
Lemma1Result lemma1_check(const ElementSet& s, const ElementSet& t);

/// {P^{-1} s P : s in S}.
ElementSet conjugate_set(const ElementSet& s, const HeisElement& conjugator);

struct SubgroupCheck {
  bool ok = false;
  std::string reason;  // empty when ok
  // For a closure failure: the offending pair (a, b) with a*b outside S.
  std::optional<std::pair<HeisElement, HeisElement>> witness;
};
SubgroupCheck check_subgroup(const ElementSet& s);
inline bool is_subgroup(const ElementSet& s) { return check_subgroup(s).ok; }

enum class Span : uint8_t { zero, full };

/// Coordinate subgroup profile (K_1..K_n, L_1..L_n, M), each entry {0} or F.
/// Closure: either M = F, or M = {0} and no index has both K_i = L_i = F
/// (the commutator of x- and y-generators at the same index is central).
struct CoordinateSubgroup {
  std::vector<Span> kx, ky;
  Span m = Span::zero;

  static CoordinateSubgroup make(std::vector<Span> kx, std::vector<Span> ky, Span m);
  static CoordinateSubgroup trivial(uint32_t n);
  static CoordinateSubgroup center(uint32_t n);
  static CoordinateSubgroup whole_group(uint32_t n);

  static bool closure_ok(const std::vector<Span>& kx, const std::vector<Span>& ky,
                         Span m);

  uint32_t full_count() const;
  /// p^full_count, or nullopt if it does not fit in 64 bits.
  std::optional<uint64_t> order(uint32_t p) const;
  /// Profile-wise containment (this subgroup inside the other).
  bool contained_in(const CoordinateSubgroup& o) const;

  bool operator==(const CoordinateSubgroup&) const = default;
};

ElementSet coordinate_subgroup_elements(const GroupParams& gp,
                                        const CoordinateSubgroup& g,
                                        uint64_t brute_cap = ElementSet::kDefaultBruteCap);

/// Materializes an arbitrary coordinate box (no closure requirement); used to
/// exhibit closure-failure witnesses for invalid profiles.
ElementSet materialize_profile(const GroupParams& gp, const std::vector<Span>& kx,
                               const std::vector<Span>& ky, Span m,
                               uint64_t brute_cap = ElementSet::kDefaultBruteCap);

}  // namespace hb
