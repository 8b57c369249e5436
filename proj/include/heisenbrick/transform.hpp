#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "heisenbrick/residue_set.hpp"

namespace hb {

/// Discrete Fourier transform of an indicator function on Z/p:
/// values[r] = sum_{x in A} e(x r), e(x) = exp(2*pi*i*x/p).
struct Spectrum {
  std::vector<std::complex<double>> values;
  uint64_t source_cardinality = 0;
};

/// Naive O(p^2) transform; exactness of downstream decisions never rests on
/// it (the integer convolution path is the ground truth). Validates
/// values[0] = |A| and Parseval on construction.
Spectrum dft_indicator(const ResidueSet& a);

/// DFT of an arbitrary real sequence of length p: out[r] = sum_x f[x] e(x r).
std::vector<std::complex<double>> dft(std::span<const double> f);

/// out[x] = (1/p) sum_r v[r] e(-x r).
std::vector<std::complex<double>> inverse_dft(std::span<const std::complex<double>> v);

/// Exact integer cyclic convolution over Z/p (p = f.size() = g.size()):
/// (f*g)(u) = sum_a f(a) g(u-a mod p). Throws computation_error when the
/// worst-case accumulator bound would overflow 64 bits.
std::vector<uint64_t> cyclic_convolve(std::span<const uint64_t> f,
                                      std::span<const uint64_t> g);

}  // namespace hb
