#include "heisenbrick/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heisenbrick/kernels.hpp"

namespace hb {

namespace {

std::vector<std::complex<double>> root_table(std::size_t p) {
  std::vector<std::complex<double>> w(p);
  for (std::size_t k = 0; k < p; ++k) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
    w[k] = {std::cos(t), std::sin(t)};
  }
  return w;
}

}  // namespace

Spectrum dft_indicator(const ResidueSet& a) {
  const uint64_t p = a.p();
  const auto w = root_table(p);
  const auto xs = a.values();

  Spectrum s;
  s.source_cardinality = xs.size();
  s.values.assign(p, {0.0, 0.0});
  for (uint64_t r = 0; r < p; ++r) {
    std::complex<double> acc{0.0, 0.0};
    for (uint16_t x : xs) acc += w[(x * r) % p];
    s.values[r] = acc;
  }

  // values[0] = |A| exactly; Parseval: sum |values|^2 = p |A|.
  const double card = static_cast<double>(s.source_cardinality);
  if (std::abs(s.values[0].real() - card) > 1e-9 * static_cast<double>(p) ||
      std::abs(s.values[0].imag()) > 1e-9 * static_cast<double>(p))
    throw computation_error("spectrum: values[0] != |A|");
  double energy = 0.0;
  for (const auto& v : s.values) energy += std::norm(v);
  const double expect = static_cast<double>(p) * card;
  if (expect > 0 && std::abs(energy - expect) > 1e-6 * expect)
    throw computation_error("spectrum: Parseval violated");
  return s;
}

std::vector<std::complex<double>> dft(std::span<const double> f) {
  const std::size_t p = f.size();
  const auto w = root_table(p);
  std::vector<std::complex<double>> out(p, {0.0, 0.0});
  for (std::size_t r = 0; r < p; ++r) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t x = 0; x < p; ++x)
      if (f[x] != 0.0) acc += f[x] * w[(x * r) % p];
    out[r] = acc;
  }
  return out;
}

std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> v) {
  const std::size_t p = v.size();
  const auto w = root_table(p);
  std::vector<std::complex<double>> out(p, {0.0, 0.0});
  for (std::size_t x = 0; x < p; ++x) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t r = 0; r < p; ++r) acc += v[r] * std::conj(w[(x * r) % p]);
    out[x] = acc / static_cast<double>(p);
  }
  return out;
}

std::vector<uint64_t> cyclic_convolve(std::span<const uint64_t> f,
                                      std::span<const uint64_t> g) {
  if (f.size() != g.size() || f.empty())
    throw input_error("cyclic_convolve: length mismatch");
  const std::size_t p = f.size();

  auto sum_of = [](std::span<const uint64_t> a) {
    unsigned __int128 s = 0;
    for (uint64_t v : a) s += v;
    return s;
  };
  auto max_of = [](std::span<const uint64_t> a) {
    uint64_t m = 0;
    for (uint64_t v : a) m = std::max(m, v);
    return m;
  };

  // Every output entry is bounded by sum(outer) * max(inner): pick the smaller
  // orientation and refuse to wrap silently.
  std::span<const uint64_t> outer = f, inner = g;
  unsigned __int128 bound = sum_of(f) * max_of(g);
  const unsigned __int128 alt = sum_of(g) * max_of(f);
  if (alt < bound) {
    bound = alt;
    outer = g;
    inner = f;
  }
  constexpr unsigned __int128 kMax = ~uint64_t{0};
  if (bound > kMax) {
    throw computation_error("cyclic_convolve: accumulator bound exceeds 64 bits (p=" +
                            std::to_string(p) + ", sum(f)*max(g) and sum(g)*max(f) both > 2^64;"
                            " sum(outer)=" + std::to_string(static_cast<uint64_t>(
                                sum_of(outer) > kMax ? kMax : sum_of(outer))) +
                            ", max(inner)=" + std::to_string(max_of(inner)) + ")");
  }

  std::vector<uint64_t> doubled(2 * p);
  for (std::size_t t = 0; t < p; ++t) doubled[t] = doubled[t + p] = inner[t];

  uint64_t inner_max = 0;
  for (uint64_t v : inner) inner_max = std::max(inner_max, v);

  std::vector<uint64_t> acc(p, 0);
  const auto& K = kernels::active();
  for (std::size_t i = 0; i < p; ++i) {
    const uint64_t c = outer[i];
    if (c == 0) continue;
    const uint64_t* row = doubled.data() + (p - i);
    if (c < (uint64_t{1} << 32) && inner_max < (uint64_t{1} << 32)) {
      K.mac(acc.data(), row, c, p);
    } else {
      for (std::size_t u = 0; u < p; ++u) acc[u] += c * row[u];
    }
  }
  return acc;
}

}  // namespace hb
