#include "heisenbrick/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <string>

#include "heisenbrick/errors.hpp"

namespace hb::kernels {

namespace {

void or_shifted_scalar(uint64_t* dst, const uint64_t* src, std::size_t q,
                       unsigned r, std::size_t n) {
  src += q;
  if (r == 0) {
    for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
    return;
  }
  const unsigned l = 64 - r;
  for (std::size_t i = 0; i < n; ++i) dst[i] |= (src[i] >> r) | (src[i + 1] << l);
}

uint64_t and_shifted_popcount_scalar(const uint64_t* a, const uint64_t* src,
                                     std::size_t q, unsigned r, std::size_t n) {
  src += q;
  uint64_t total = 0;
  if (r == 0) {
    for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & src[i]);
    return total;
  }
  const unsigned l = 64 - r;
  for (std::size_t i = 0; i < n; ++i)
    total += std::popcount(a[i] & ((src[i] >> r) | (src[i + 1] << l)));
  return total;
}

void mac_scalar(uint64_t* acc, const uint64_t* src, uint64_t c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += c * src[i];
}

const Table kScalar{"scalar", &or_shifted_scalar, &and_shifted_popcount_scalar,
                    &mac_scalar};

const Table& pick() {
  const char* env = std::getenv("HEISENBRICK_KERNELS");
  std::string_view want = env ? env : "auto";
  if (want == "scalar") return kScalar;
  const Table* a = avx2();
  if (want == "avx2") {
    if (!a) throw input_error("HEISENBRICK_KERNELS=avx2 but AVX2 is unavailable");
    return *a;
  }
  if (want != "auto" && want != "")
    throw input_error("HEISENBRICK_KERNELS must be scalar, avx2 or auto");
  return a ? *a : kScalar;
}

}  // namespace

const Table& scalar() { return kScalar; }

const Table& active() {
  static const Table& t = pick();
  return t;
}

}  // namespace hb::kernels
