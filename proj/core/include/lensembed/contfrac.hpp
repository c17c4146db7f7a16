#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lensembed/arith.hpp"

namespace lensembed {

using BigInt = boost::multiprecision::cpp_int;

// Hirzebruch-Jung string [a_1,...,a_l]^- with convergents p_j/q_j for j = -1..l,
// seeded by p_{-1} = 0, p_0 = 1, q_{-1} = -1, q_0 = 0.
class HJString {
 public:
  HJString();
  explicit HJString(std::vector<BigInt> terms);
  static HJString from_ints(std::span<const std::int64_t> terms);

  const std::vector<BigInt>& terms() const { return terms_; }
  std::size_t length() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  const BigInt& p(std::ptrdiff_t j) const { return p_.at(static_cast<std::size_t>(j + 1)); }
  const BigInt& q(std::ptrdiff_t j) const { return q_.at(static_cast<std::size_t>(j + 1)); }
  BigInt r(std::ptrdiff_t j) const { return p(j) - q(j); }

  HJString reversed() const;
  std::vector<std::int64_t> to_ints() const;
  std::string to_string() const;

  friend bool operator==(const HJString& a, const HJString& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<BigInt> terms_;
  std::vector<BigInt> p_;
  std::vector<BigInt> q_;
};

HJString hj_expand(const BigInt& p, const BigInt& q);
std::pair<BigInt, BigInt> hj_eval(const HJString& s);
BigInt reverse_orbit(const BigInt& p, const BigInt& q);
HJString riemenschneider_dual(const HJString& s);

// Machine-word variants for the search engines.
std::vector<std::int64_t> hj_terms(std::int64_t p, std::int64_t q);
std::int64_t reverse_orbit(std::int64_t p, std::int64_t q);
std::int64_t q_orbit(std::int64_t p, std::int64_t q);
// Numerators p_{-1}, p_0, ..., p_l of a string of machine-word terms.
std::vector<std::int64_t> numerators(std::span<const std::int64_t> terms);

}  // namespace lensembed
