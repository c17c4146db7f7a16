#include "lensembed/contfrac.hpp"

#include <numeric>
#include <sstream>

namespace lensembed {

namespace {

void validate_pair(const BigInt& p, const BigInt& q) {
  if (q <= 0 || q >= p) throw DomainError("expected 0 < q < p, got p=" + p.str() + " q=" + q.str());
  if (boost::multiprecision::gcd(p, q) != 1) throw DomainError("p and q must be coprime");
}

void validate_pair(std::int64_t p, std::int64_t q) {
  if (q <= 0 || q >= p) {
    throw DomainError("expected 0 < q < p, got p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
  if (std::gcd(p, q) != 1) throw DomainError("p and q must be coprime");
}

}  // namespace

HJString::HJString() : p_{0, 1}, q_{-1, 0} {}

HJString::HJString(std::vector<BigInt> terms) : terms_(std::move(terms)), p_{0, 1}, q_{-1, 0} {
  p_.reserve(terms_.size() + 2);
  q_.reserve(terms_.size() + 2);
  for (const auto& a : terms_) {
    if (a < 2) throw DomainError("continued fraction terms must be >= 2, got " + a.str());
    std::size_t k = p_.size();
    p_.push_back(a * p_[k - 1] - p_[k - 2]);
    q_.push_back(a * q_[k - 1] - q_[k - 2]);
  }
}

HJString HJString::from_ints(std::span<const std::int64_t> terms) {
  return HJString(std::vector<BigInt>(terms.begin(), terms.end()));
}

HJString HJString::reversed() const {
  return HJString(std::vector<BigInt>(terms_.rbegin(), terms_.rend()));
}

std::vector<std::int64_t> HJString::to_ints() const {
  std::vector<std::int64_t> out;
  out.reserve(terms_.size());
  for (const auto& a : terms_) {
    if (a > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("term exceeds int64");
    out.push_back(static_cast<std::int64_t>(a));
  }
  return out;
}

std::string HJString::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < terms_.size(); ++i) os << (i ? "," : "") << terms_[i];
  os << ']';
  return os.str();
}

HJString hj_expand(const BigInt& p, const BigInt& q) {
  validate_pair(p, q);
  std::vector<BigInt> terms;
  BigInt num = p, den = q;
  while (den != 0) {
    BigInt a = (num + den - 1) / den;
    BigInt next = a * den - num;
    terms.push_back(a);
    num = den;
    den = next;
  }
  return HJString(std::move(terms));
}

std::pair<BigInt, BigInt> hj_eval(const HJString& s) {
  if (s.empty()) throw DomainError("cannot evaluate the empty string");
  auto l = static_cast<std::ptrdiff_t>(s.length());
  return {s.p(l), s.q(l)};
}

BigInt reverse_orbit(const BigInt& p, const BigInt& q) {
  validate_pair(p, q);
  auto rev = hj_expand(p, q).reversed();
  return hj_eval(rev).second;
}

// Point rule: row i holds a_i - 1 dots, each row starting in the column where
// the previous one ended; column counts plus one are the dual terms.
HJString riemenschneider_dual(const HJString& s) {
  if (s.empty()) throw DomainError("cannot dualize the empty string");
  constexpr std::int64_t kMaxDots = 50'000'000;
  std::vector<std::int64_t> columns;
  std::int64_t total = 0;
  for (const auto& a : s.terms()) {
    if (a - 1 > kMaxDots - total) throw DomainError("string too large to dualize");
    auto dots = static_cast<std::int64_t>(a - 1);
    total += dots;
    if (columns.empty()) {
      columns.assign(static_cast<std::size_t>(dots), 1);
    } else {
      columns.back() += 1;
      columns.insert(columns.end(), static_cast<std::size_t>(dots - 1), 1);
    }
  }
  std::vector<BigInt> dual;
  dual.reserve(columns.size());
  for (auto c : columns) dual.emplace_back(c + 1);
  return HJString(std::move(dual));
}

std::vector<std::int64_t> hj_terms(std::int64_t p, std::int64_t q) {
  validate_pair(p, q);
  std::vector<std::int64_t> terms;
  std::int64_t num = p, den = q;
  while (den != 0) {
    std::int64_t a = (num + den - 1) / den;
    std::int64_t next = a * den - num;
    terms.push_back(a);
    num = den;
    den = next;
  }
  return terms;
}

std::int64_t reverse_orbit(std::int64_t p, std::int64_t q) {
  validate_pair(p, q);
  return inverse_mod(q, p);
}

std::int64_t q_orbit(std::int64_t p, std::int64_t q) {
  return std::min(q, reverse_orbit(p, q));
}

std::vector<std::int64_t> numerators(std::span<const std::int64_t> terms) {
  std::vector<std::int64_t> p{0, 1};
  p.reserve(terms.size() + 2);
  for (auto a : terms) {
    std::size_t k = p.size();
    p.push_back(checked_add(checked_mul(a, p[k - 1]), -p[k - 2]));
  }
  return p;
}

}  // namespace lensembed
