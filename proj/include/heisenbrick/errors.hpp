#pragma once

#include <stdexcept>
#include <string>

namespace hb {

/// Malformed or inconsistent inputs (bad modulus, field mismatch, 0 in X_i, ...).
/// The CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured cap (brute-force group size, fiber count) would be exceeded.
/// The CLI maps this to exit code 3.
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Exact arithmetic could not be carried out (accumulator overflow) or an
/// internal cross-check that must hold mathematically failed.
class computation_error : public std::runtime_error {
public:
  explicit computation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hb
