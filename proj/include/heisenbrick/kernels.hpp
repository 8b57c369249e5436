#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hb::kernels {

// Word-level inner loops shared by the set-algebra and convolution code.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is picked once at startup from CPUID, overridable
// with HEISENBRICK_KERNELS=scalar|avx2|auto. Both variants must produce
// identical results on any input satisfying the stated contracts; this is
// enforced by tests/test_kernels.cpp.

/// dst[i] |= window(src, 64*i + 64*q + r) for i in [0, n), where window(s, o)
/// is the 64-bit word starting at bit offset o of the bit string s.
/// Contract: r < 64; src readable on [q, q + n] inclusive (one guard word).
using OrShiftedFn = void (*)(uint64_t* dst, const uint64_t* src, std::size_t q,
                             unsigned r, std::size_t n);

/// Returns sum_i popcount(a[i] & window(src, 64*i + 64*q + r)).
/// Same contract as OrShiftedFn.
using AndShiftedPopcountFn = uint64_t (*)(const uint64_t* a, const uint64_t* src,
                                          std::size_t q, unsigned r, std::size_t n);

/// acc[i] += c * src[i] for i in [0, n).
/// Contract: c < 2^32, src[i] < 2^32, and no acc[i] overflows uint64_t.
/// (Callers with wider values use their own plain loop.)
using MacFn = void (*)(uint64_t* acc, const uint64_t* src, uint64_t c,
                       std::size_t n);

struct Table {
  std::string_view name;
  OrShiftedFn or_shifted;
  AndShiftedPopcountFn and_shifted_popcount;
  MacFn mac;
};

const Table& scalar();

/// AVX2 table, or nullptr when the build or the CPU does not support it.
const Table* avx2();

/// Runtime-selected table (cached after first call).
const Table& active();

}  // namespace hb::kernels
