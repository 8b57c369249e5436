#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

// Exact big-integer arithmetic for the threshold comparisons (|Z|^2 prod > p^{n+2}
// and friends) whose sides outgrow 128 bits at larger n. Kept out of public
// headers; reports carry decimal strings.

namespace hb {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(uint64_t base, uint32_t exp) {
  BigInt b = base, r = 1;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

}  // namespace hb
