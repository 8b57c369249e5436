#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "heisenbrick/errors.hpp"

namespace hb {

/// Exact arithmetic in Z/p for an odd prime p. Immutable after construction;
/// shared between sets and group elements via shared_ptr. Inverse, exp and
/// discrete-log tables are precomputed because division and set products sit
/// in the inner loops downstream.
class PrimeField {
public:
  static constexpr uint32_t kDefaultMaxModulus = 9973;

  explicit PrimeField(uint32_t p, uint32_t max_modulus = kDefaultMaxModulus);

  uint32_t p() const { return p_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  uint32_t mul(uint32_t a, uint32_t b) const {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p_);
  }
  uint32_t inv(uint32_t a) const {
    if (a == 0) throw input_error("inverse of 0 in F_" + std::to_string(p_));
    return inverse_[a];
  }
  uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
  uint32_t pow(uint32_t a, uint64_t e) const;

  const std::vector<uint16_t>& inverse_table() const { return inverse_; }

  /// Smallest primitive root of p.
  uint32_t generator() const { return generator_; }
  /// dlog(a) for a != 0: the k in [0, p-1) with generator^k = a.
  uint32_t dlog(uint32_t a) const {
    if (a == 0) throw input_error("dlog of 0");
    return dlog_[a];
  }
  uint32_t exp(uint32_t k) const { return exp_[k]; }  // k in [0, p-1)

private:
  uint32_t p_;
  uint32_t generator_;
  std::vector<uint16_t> inverse_;  // inverse_[a] for a in [1, p)
  std::vector<uint16_t> dlog_;     // dlog_[a] for a in [1, p)
  std::vector<uint16_t> exp_;      // exp_[k] for k in [0, p-1)
};

using FieldPtr = std::shared_ptr<const PrimeField>;

FieldPtr make_field(uint32_t p, uint32_t max_modulus = PrimeField::kDefaultMaxModulus);

bool is_prime(uint32_t n);

}  // namespace hb
