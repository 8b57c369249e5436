#include "heisenbrick/sumprod.hpp"

#include <algorithm>
#include <cmath>

#include "bigint.hpp"

namespace hb {

namespace {

void check_unit_set(const ResidueSet& s, const char* which) {
  if (s.empty()) throw input_error(std::string(which) + " is empty");
  if (s.contains(0)) throw input_error(std::string(which) + " contains 0");
}

std::vector<uint64_t> indicator(const ResidueSet& s) {
  std::vector<uint64_t> v(s.p(), 0);
  for (uint16_t x : s.values()) v[x] = 1;
  return v;
}

}  // namespace

SumProdInstance SumProdInstance::make(FieldPtr field, uint32_t m,
                                      std::vector<ResidueSet> xs,
                                      std::vector<ResidueSet> ys, ResidueSet z) {
  if (m < 1) throw input_error("m must be >= 1");
  if (xs.empty() || xs.size() != ys.size())
    throw input_error("instance needs n >= 1 with matching X and Y lists");
  const uint32_t p = field->p();
  for (const auto& s : xs) {
    if (s.p() != p) throw input_error("X over a different field");
    check_unit_set(s, "X");
  }
  for (const auto& s : ys) {
    if (s.p() != p) throw input_error("Y over a different field");
    check_unit_set(s, "Y");
  }
  if (z.p() != p) throw input_error("Z over a different field");
  if (z.empty()) throw input_error("Z is empty");
  return SumProdInstance{std::move(field), m, std::move(xs), std::move(ys),
                         std::move(z)};
}

std::vector<double> normalized_f(const ResidueSet& x, const ResidueSet& y) {
  check_unit_set(x, "X");
  check_unit_set(y, "Y");
  const auto& f = *x.field();
  const uint32_t p = f.p();
  const auto xv = x.values();
  std::vector<double> out(p, 0.0);
  for (uint32_t t = 0; t < p; ++t) {
    uint32_t hits = 0;
    for (uint16_t a : xv) hits += y.contains(f.div(t, a));
    out[t] = static_cast<double>(hits) / static_cast<double>(xv.size());
  }
  return out;
}

FSpectrumReport f_spectrum_checks(const ResidueSet& x, const ResidueSet& y) {
  const uint32_t p = x.p();
  const auto fhat = dft(normalized_f(x, y));

  FSpectrumReport r;
  r.y_cardinality = y.cardinality();
  r.f_zero = fhat[0].real();
  r.zero_matches = std::abs(fhat[0].real() - static_cast<double>(r.y_cardinality)) <=
                       1e-9 * p &&
                   std::abs(fhat[0].imag()) <= 1e-9 * p;
  r.bound = std::sqrt(static_cast<double>(p) * static_cast<double>(r.y_cardinality) /
                      static_cast<double>(x.cardinality()));
  for (uint32_t k = 1; k < p; ++k)
    r.max_nonzero_mag = std::max(r.max_nonzero_mag, std::abs(fhat[k]));
  r.bound_holds = r.max_nonzero_mag <= r.bound * (1.0 + 1e-9);
  return r;
}

ConditionMargin condition_one(const SumProdInstance& inst) {
  const uint32_t p = inst.field->p();
  BigInt lhs = BigInt(inst.z.cardinality()) * inst.z.cardinality();
  for (uint32_t i = 0; i < inst.n(); ++i) {
    lhs *= inst.xs[i].cardinality();
    lhs *= inst.ys[i].cardinality();
  }
  const BigInt rhs = big_pow(p, inst.n() + 2);
  ConditionMargin m;
  m.holds = lhs > rhs;
  m.lhs = lhs.str();
  m.rhs = rhs.str();
  m.margin = BigInt(lhs - rhs).str();
  return m;
}

namespace {

std::vector<uint64_t> exact_counts(const SumProdInstance& inst) {
  std::vector<uint64_t> acc = indicator(inst.z);
  const auto zi = indicator(inst.z);
  for (uint32_t k = 1; k < inst.m; ++k) acc = cyclic_convolve(acc, zi);
  for (uint32_t i = 0; i < inst.n(); ++i)
    acc = cyclic_convolve(acc, product_count_table(inst.xs[i], inst.ys[i]));
  return acc;
}

}  // namespace

SolutionProfile solution_profile(const SumProdInstance& inst) {
  const uint32_t p = inst.field->p();
  SolutionProfile out;
  out.exact_counts = exact_counts(inst);
  out.threshold_holds = condition_one(inst).holds;

  double xprod = 1.0;
  for (const auto& x : inst.xs) xprod *= static_cast<double>(x.cardinality());
  out.normalized.resize(p);
  for (uint32_t u = 0; u < p; ++u)
    out.normalized[u] = static_cast<double>(out.exact_counts[u]) / xprod;

  out.min_count = ~uint64_t{0};
  for (uint32_t u = 0; u < p; ++u) {
    if (out.exact_counts[u] < out.min_count) {
      out.min_count = out.exact_counts[u];
      out.argmin = u;
    }
  }

  // Fourier route: p S(u) = sum_r ^Z(r)^m prod_i ^f_i(r) e(-ru).
  const auto zhat = dft_indicator(inst.z).values;
  std::vector<std::complex<double>> t(p);
  for (uint32_t r = 0; r < p; ++r) {
    std::complex<double> v{1.0, 0.0};
    for (uint32_t k = 0; k < inst.m; ++k) v *= zhat[r];
    t[r] = v;
  }
  for (uint32_t i = 0; i < inst.n(); ++i) {
    const auto fh = dft(normalized_f(inst.xs[i], inst.ys[i]));
    for (uint32_t r = 0; r < p; ++r) t[r] *= fh[r];
  }
  const auto back = inverse_dft(t);  // back[u] = (1/p) sum_r t(r) e(-ru)

  out.fourier_consistent = true;
  for (uint32_t u = 0; u < p; ++u) {
    const double ps = static_cast<double>(p) * out.normalized[u];
    const double fourier = static_cast<double>(p) * back[u].real();
    const double dev = std::abs(ps - fourier);
    out.max_fourier_deviation = std::max(out.max_fourier_deviation, dev);
    if (dev > 1e-6 * p * std::max(1.0, out.normalized[u])) out.fourier_consistent = false;
  }
  return out;
}

CoverageResult covers_field(const SumProdInstance& inst) {
  CoverageResult r;
  r.condition_holds = condition_one(inst).holds;
  const auto counts = exact_counts(inst);
  r.covers = true;
  for (uint32_t u = 0; u < counts.size(); ++u) {
    if (counts[u] == 0) {
      r.covers = false;
      r.missing = u;
      break;
    }
  }
  if (r.condition_holds && inst.m >= 2 && !r.covers)
    throw computation_error(
        "sum-product coverage violated under condition (1); missing residue " +
        std::to_string(*r.missing));
  return r;
}

long double positivity_chain_lower_bound(const SumProdInstance& inst) {
  const long double p = inst.field->p();
  const long double zc = inst.z.cardinality();
  long double main = std::pow(zc, static_cast<long double>(inst.m));
  long double err = p * std::pow(zc, static_cast<long double>(inst.m) - 1);
  for (uint32_t i = 0; i < inst.n(); ++i) {
    const long double xc = inst.xs[i].cardinality();
    const long double yc = inst.ys[i].cardinality();
    main *= yc;
    err *= std::sqrt(p * yc / xc);
  }
  return main - err;
}

}  // namespace hb
