#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heisenbrick/brick.hpp"

namespace hb {

struct Rational {
  uint64_t num = 0, den = 1;
  static Rational reduced(uint64_t num, uint64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// The shift a maximizing |X ∩ (a - X)| (smallest a on ties) together with the
/// intersection itself. |tilde| >= ceil(|X|^2 / p) always.
struct PopularShift {
  uint32_t shift = 0;
  ResidueSet tilde;
};
PopularShift choose_popular_shift(const ResidueSet& x);

/// Center cosets [u, v, F] inside a product set, against the |B|/p threshold.
struct CosetReport {
  uint64_t count = 0;
  std::vector<uint64_t> witness_grid;  // grid indices of full fibers
  Rational threshold;                  // |B| / p
  bool meets_threshold = false;
};
CosetReport count_center_cosets(const FiberedProductSet& P, const Brick& b);

/// Popular-shift certificate for a full center coset in B*B: when
/// |Z|^2 prod |X~_i||Y~_i| > p^{n+2}, the coset [a, b, F] lies in B*B.
/// The full fiber is verified through two independent routes (set algebra and
/// the exact convolution oracle) which must agree.
struct Th1Certificate {
  std::vector<uint16_t> a, b;
  std::vector<uint32_t> xt_sizes, yt_sizes;
  bool condition_holds = false;
  std::string lhs, rhs;       // exact decimal integers
  bool fiber_full = false;    // meaningful when condition_holds
  bool sumprod_covers = false;
};
Th1Certificate th1_certificate(const Brick& b);

/// E = all pairs (a, b) whose tilde products clear the p^{n+2} threshold; every
/// member's coset is checked against the actual fiber.
struct GoodPairReport {
  uint64_t pair_count = 0;           // |E|
  std::vector<uint64_t> members;     // (a, b) encoded base p over 2n digits
  bool all_fibers_full = true;
  std::optional<uint64_t> bad_pair;  // first member whose fiber is not full
  bool closed_form_applicable = false;  // prod |X||Y| > p^{n+2}
  std::string closed_form_num, closed_form_den;
  bool meets_closed_form = false;    // |E| * den >= num
  double heuristic_bound = 0.0;      // (1 - p^{-3/2}) |B| / |Z|
  bool meets_heuristic = false;
};
GoodPairReport good_pair_set_E(const Brick& b, uint64_t pair_cap = 10'000'000);

/// Right-invariance of a fibered set under the 2n+1 generator directions and
/// the coordinate subgroup they generate (the structured period).
struct PeriodReport {
  std::vector<bool> x_invariant, y_invariant;
  bool center_invariant = false;
  CoordinateSubgroup period;
  std::optional<uint64_t> full_stabilizer_order;  // brute force only
};
PeriodReport structured_period(const FiberedProductSet& P);

/// {g : S * g = S}, exhaustively. Result is a subgroup (checked).
ElementSet brute_stabilizer(const ElementSet& s);

/// Whether any coset of any nontrivial subgroup lies inside S. Scanning the
/// order-p cyclic subgroups is complete: every nontrivial subgroup of the
/// p-group H_n contains one, and a coset of the larger subgroup contains a
/// coset of the smaller.
struct CyclicCosetScan {
  bool found = false;
  std::optional<std::pair<uint64_t, uint64_t>> witness;  // (coset rep, generator)
};
CyclicCosetScan find_cyclic_coset(const ElementSet& s);

/// The growth/period dichotomy analysis: medium components force growth
/// (sqrt2 each), three or more large components force a big recipe period.
struct Th13Analysis {
  uint32_t k = 0;    // components with 1 < size <= p/sqrt2
  uint32_t ell = 0;  // components with size > p/sqrt2
  struct Pin {
    char letter;     // 'x' or 'y'
    uint32_t index;  // coordinate
    uint16_t w;      // popular sum pinned there
  };
  std::vector<Pin> pins;  // two entries when ell >= 3
  CoordinateSubgroup recipe;
  CoordinateSubgroup verified_period;
  Rational ratio;  // |B*B| / |B|
  long double ratio_lower_bound = 0;  // (1/4) (|B|/|G_ver|)^{ln3 / (2 ln p)}
  bool ratio_meets_bound = false;
  bool ratio_meets_sqrt2_k = false;   // |BB|^2 >= 2^k |B|^2, exactly
  bool recipe_stabilizes = false;     // recipe inside the verified period
  bool pinned_cosets_full = true;     // coset family at the pins is in B*B
  std::optional<std::pair<std::vector<uint16_t>, std::vector<uint16_t>>>
      pinned_coset_witness;           // a family cell with a non-full fiber
};
Th13Analysis th13_analysis(const Brick& b, uint64_t fiber_cap = Caps{}.fibers);

/// The interval witness brick B = [R, .., R, Z] with R = {r >= 0 : 2n r^2 < p-1}
/// and Z = {z >= 0 : 4z < p}: large, yet its square contains no coset of any
/// nontrivial subgroup. R contains 0, so the brick is zero-relaxed.
Brick prop2_construct(FieldPtr field, uint32_t n);

struct Prop2Report {
  uint32_t p = 0, n = 0;
  uint64_t r_size = 0, z_size = 0, cardinality = 0;
  std::string bound_num, bound_den;  // p^{n+1} over 4 (2n)^n
  bool size_bound_holds = false;
  uint32_t w_size = 0;
  bool w_not_full = false;
  bool no_full_line = false;
  bool relaxed_zero = true;
  std::optional<bool> stabilizer_trivial;  // brute force when under cap
  std::optional<bool> no_cyclic_coset;     // brute force when under cap
  std::optional<std::pair<uint64_t, uint64_t>> cyclic_witness;
  bool pass = false;
};
Prop2Report prop2_verify(FieldPtr field, uint32_t n, const Caps& caps = {});

/// The small-period family in H_1: X = Y = {t >= 0 : 4t^2 < p}, Z = F.
/// |B*B| < 4|B| while the period is exactly the center.
struct SmallPeriodReport {
  uint32_t p = 0;
  uint64_t x_size = 0, b_cardinality = 0, bb_cardinality = 0;
  bool growth_bound_holds = false;  // |BB| < 4 |B|
  bool period_is_center = false;
  PeriodReport period;
  bool pass = false;
};
SmallPeriodReport small_period_example(FieldPtr field, const Caps& caps = {});

}  // namespace hb
