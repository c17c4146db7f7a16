#include "lensembed/arith.hpp"

#include <cmath>
#include <numeric>

namespace lensembed {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  __int128 r = static_cast<__int128>(mod(a, m)) * mod(b, m) % m;
  return static_cast<std::int64_t>(r);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw DomainError("inverse_mod: modulus must be positive");
  std::int64_t r0 = m, r1 = mod(a, m);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t t = r0 / r1;
    std::int64_t r2 = r0 - t * r1;
    std::int64_t s2 = s0 - t * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) {
    if (m == 1) return 0;
    throw DomainError("inverse_mod: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  return mod(s0, m);
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in multiplication");
  return r;
}

}  // namespace lensembed
