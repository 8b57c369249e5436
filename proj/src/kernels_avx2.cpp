#include "heisenbrick/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

namespace hb::kernels {

namespace {

void or_shifted_avx2(uint64_t* dst, const uint64_t* src, std::size_t q,
                     unsigned r, std::size_t n) {
  src += q;
  std::size_t i = 0;
  if (r == 0) {
    for (; i + 4 <= n; i += 4) {
      __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
      __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
    }
    for (; i < n; ++i) dst[i] |= src[i];
    return;
  }
  const unsigned l = 64 - r;
  for (; i + 4 <= n; i += 4) {
    __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 1));
    __m256i w = _mm256_or_si256(_mm256_srli_epi64(lo, static_cast<int>(r)),
                                _mm256_slli_epi64(hi, static_cast<int>(l)));
    __m256i d = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, w));
  }
  for (; i < n; ++i) dst[i] |= (src[i] >> r) | (src[i + 1] << l);
}

uint64_t and_shifted_popcount_avx2(const uint64_t* a, const uint64_t* src,
                                   std::size_t q, unsigned r, std::size_t n) {
  src += q;
  uint64_t total = 0;
  std::size_t i = 0;
  if (r == 0) {
    for (; i + 4 <= n; i += 4) {
      __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
      __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      __m256i v = _mm256_and_si256(av, s);
      total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 0)));
      total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 1)));
      total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 2)));
      total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 3)));
    }
    for (; i < n; ++i) total += std::popcount(a[i] & src[i]);
    return total;
  }
  const unsigned l = 64 - r;
  for (; i + 4 <= n; i += 4) {
    __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + 1));
    __m256i w = _mm256_or_si256(_mm256_srli_epi64(lo, static_cast<int>(r)),
                                _mm256_slli_epi64(hi, static_cast<int>(l)));
    __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i v = _mm256_and_si256(av, w);
    total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 0)));
    total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 1)));
    total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 2)));
    total += std::popcount(static_cast<uint64_t>(_mm256_extract_epi64(v, 3)));
  }
  for (; i < n; ++i)
    total += std::popcount(a[i] & ((src[i] >> r) | (src[i + 1] << l)));
  return total;
}

// Exact under the MacFn contract: _mm256_mul_epu32 multiplies the low 32 bits
// of each 64-bit lane, so c and src[i] must both fit in 32 bits.
void mac_avx2(uint64_t* acc, const uint64_t* src, uint64_t c, std::size_t n) {
  const __m256i cv = _mm256_set1_epi64x(static_cast<long long>(c));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i p = _mm256_mul_epu32(s, cv);
    __m256i a = _mm256_loadu_si256(reinterpret_cast<__m256i*>(acc + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), _mm256_add_epi64(a, p));
  }
  for (; i < n; ++i) acc[i] += c * src[i];
}

const Table kAvx2{"avx2", &or_shifted_avx2, &and_shifted_popcount_avx2, &mac_avx2};

}  // namespace

const Table* avx2() {
  static const Table* t = __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
  return t;
}

}  // namespace hb::kernels

#else

namespace hb::kernels {
const Table* avx2() { return nullptr; }
}  // namespace hb::kernels

#endif
