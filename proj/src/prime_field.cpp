#include "heisenbrick/prime_field.hpp"

#include <string>

namespace hb {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<uint32_t> prime_factors(uint32_t n) {
  std::vector<uint32_t> fs;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

PrimeField::PrimeField(uint32_t p, uint32_t max_modulus) : p_(p) {
  if (!is_prime(p)) throw input_error("modulus " + std::to_string(p) + " is not prime");
  if (p == 2) throw input_error("p = 2 is not supported; the toolkit targets odd primes");
  if (p > max_modulus)
    throw input_error("modulus " + std::to_string(p) + " exceeds cap " +
                      std::to_string(max_modulus));

  // inverse_[a] via the standard recurrence inv(a) = -(p/a) * inv(p mod a).
  inverse_.assign(p, 0);
  inverse_[1] = 1;
  for (uint32_t a = 2; a < p; ++a) {
    uint64_t q = p / a, r = p % a;
    inverse_[a] = static_cast<uint16_t>((p - (q * inverse_[r]) % p) % p);
  }

  const auto factors = prime_factors(p - 1);
  generator_ = 0;
  for (uint32_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (uint32_t q : factors) {
      if (pow(g, (p - 1) / q) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator_ = g;
      break;
    }
  }

  exp_.assign(p - 1, 0);
  dlog_.assign(p, 0);
  uint32_t v = 1;
  for (uint32_t k = 0; k + 1 < p; ++k) {
    exp_[k] = static_cast<uint16_t>(v);
    dlog_[v] = static_cast<uint16_t>(k);
    v = mul(v, generator_);
  }
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1;
  uint32_t b = a % p_;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FieldPtr make_field(uint32_t p, uint32_t max_modulus) {
  return std::make_shared<const PrimeField>(p, max_modulus);
}

}  // namespace hb
