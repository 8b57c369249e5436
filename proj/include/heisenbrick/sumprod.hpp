#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heisenbrick/residue_set.hpp"
#include "heisenbrick/transform.hpp"

namespace hb {

/// Instance of the sum-product coverage question: is
/// mZ + X_1 Y_1 + ... + X_n Y_n all of F?
struct SumProdInstance {
  FieldPtr field;
  uint32_t m = 2;
  std::vector<ResidueSet> xs, ys;
  ResidueSet z;

  static SumProdInstance make(FieldPtr field, uint32_t m, std::vector<ResidueSet> xs,
                              std::vector<ResidueSet> ys, ResidueSet z);
  uint32_t n() const { return static_cast<uint32_t>(xs.size()); }
};

/// f(t) = (1/|X|) * #{a in X : t/a in Y}; 0 <= f <= 1 and supp f = X*Y.
std::vector<double> normalized_f(const ResidueSet& x, const ResidueSet& y);

struct FSpectrumReport {
  double f_zero = 0;             // ^f(0)
  uint64_t y_cardinality = 0;
  bool zero_matches = false;     // ^f(0) = |Y| within 1e-9 * p
  double bound = 0;              // sqrt(p |Y| / |X|)
  double max_nonzero_mag = 0;    // max_{r != 0} |^f(r)|
  bool bound_holds = false;      // within relative 1e-9
};
FSpectrumReport f_spectrum_checks(const ResidueSet& x, const ResidueSet& y);

/// Condition (1): |Z|^2 prod |X_i||Y_i| > p^{n+2}, with the exact margin.
struct ConditionMargin {
  bool holds = false;
  std::string lhs, rhs, margin;  // decimal integers; margin = lhs - rhs (signed)
};
ConditionMargin condition_one(const SumProdInstance& inst);

/// N(u) = number of representations u = z_1+...+z_m + sum x_j y_j, exactly,
/// with the Fourier identity p S(u) = sum_r ^Z(r)^m prod ^f_i(r) e(-ru)
/// evaluated as a consistency check (never as the decision path).
struct SolutionProfile {
  std::vector<uint64_t> exact_counts;
  std::vector<double> normalized;  // N(u) / prod |X_i|
  bool threshold_holds = false;    // condition (1)
  uint64_t min_count = 0;
  uint32_t argmin = 0;
  double max_fourier_deviation = 0;  // max_u |p S(u) - fourier(u)|
  bool fourier_consistent = false;   // deviation <= 1e-6 * p * max(1, S(u)) everywhere
};
SolutionProfile solution_profile(const SumProdInstance& inst);

struct CoverageResult {
  bool covers = false;
  std::optional<uint32_t> missing;  // smallest uncovered residue
  bool condition_holds = false;
};
/// Decided by the exact convolution counts. For m >= 2, condition (1) forces
/// coverage; a counterexample would be an internal error.
CoverageResult covers_field(const SumProdInstance& inst);

/// |Z|^m prod |Y_i| - p |Z|^{m-1} prod sqrt(p |Y_i| / |X_i|): the proof's
/// penultimate lower bound on p S; positivity forces coverage.
long double positivity_chain_lower_bound(const SumProdInstance& inst);

}  // namespace hb
