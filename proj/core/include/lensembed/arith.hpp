#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lensembed {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Least nonnegative residue of a modulo m (m > 0).
std::int64_t mod(std::int64_t a, std::int64_t m);

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m);

// Inverse of a modulo m; throws DomainError when gcd(a, m) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

// Integer square root (floor) for n >= 0.
std::int64_t isqrt(std::int64_t n);

// Overflow-checked arithmetic; throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace lensembed
