#include "lensembed/berge.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <utility>

#include "lensembed/arith.hpp"

namespace lensembed {

namespace {

struct TypeName {
  BergeType type;
  const char* tag;
};

constexpr std::array<TypeName, 20> kNames{{
    {BergeType::I_plus, "I+"},        {BergeType::I_minus, "I-"},       {BergeType::II_plus, "II+"},
    {BergeType::II_minus, "II-"},     {BergeType::IIIa_plus, "III(a)+"}, {BergeType::IIIa_minus, "III(a)-"},
    {BergeType::IIIb_plus, "III(b)+"}, {BergeType::IIIb_minus, "III(b)-"}, {BergeType::IVa_plus, "IV(a)+"},
    {BergeType::IVa_minus, "IV(a)-"}, {BergeType::IVb_plus, "IV(b)+"},   {BergeType::IVb_minus, "IV(b)-"},
    {BergeType::Va_plus, "V(a)+"},    {BergeType::Va_minus, "V(a)-"},   {BergeType::Vb_plus, "V(b)+"},
    {BergeType::Vb_minus, "V(b)-"},   {BergeType::VII, "VII"},          {BergeType::VIII, "VIII"},
    {BergeType::IX, "IX"},            {BergeType::X, "X"},
}};

using i128 = __int128;

// Residue family of types III-V: p = sign * (alpha*k + beta) * d mod k^2, with d ranging over
// divisors of (gamma*k + delta) subject to a parity rule.
struct CongruenceRule {
  BergeType type;
  int sign;
  int alpha, beta;
  int gamma, delta;
  enum class Parity { none, cofactor_odd, d_odd } parity;
};

constexpr std::array<CongruenceRule, 12> kRules{{
    {BergeType::IIIa_plus, 1, 2, -1, 1, 1, CongruenceRule::Parity::cofactor_odd},
    {BergeType::IIIa_minus, -1, 2, -1, 1, 1, CongruenceRule::Parity::cofactor_odd},
    {BergeType::IIIb_plus, 1, 2, 1, 1, -1, CongruenceRule::Parity::cofactor_odd},
    {BergeType::IIIb_minus, -1, 2, 1, 1, -1, CongruenceRule::Parity::cofactor_odd},
    {BergeType::IVa_plus, 1, 1, -1, 2, 1, CongruenceRule::Parity::none},
    {BergeType::IVa_minus, -1, 1, -1, 2, 1, CongruenceRule::Parity::none},
    {BergeType::IVb_plus, 1, 1, 1, 2, -1, CongruenceRule::Parity::none},
    {BergeType::IVb_minus, -1, 1, 1, 2, -1, CongruenceRule::Parity::none},
    {BergeType::Va_plus, 1, 1, 1, 1, 1, CongruenceRule::Parity::d_odd},
    {BergeType::Va_minus, -1, 1, 1, 1, 1, CongruenceRule::Parity::d_odd},
    {BergeType::Vb_plus, 1, 1, -1, 1, -1, CongruenceRule::Parity::d_odd},
    {BergeType::Vb_minus, -1, 1, -1, 1, -1, CongruenceRule::Parity::d_odd},
}};

const CongruenceRule* rule_for(BergeType t) {
  for (const auto& r : kRules)
    if (r.type == t) return &r;
  return nullptr;
}

std::vector<std::int64_t> admissible_d(const CongruenceRule& r, std::int64_t k) {
  std::vector<std::int64_t> out;
  std::int64_t m = r.gamma * k + r.delta;
  if (m <= 0) return out;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    for (std::int64_t e : {d, m / d}) {
      bool ok = true;
      if (r.parity == CongruenceRule::Parity::cofactor_odd) ok = (m / e) % 2 == 1;
      if (r.parity == CongruenceRule::Parity::d_odd) ok = e % 2 == 1;
      if (ok && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Least nonnegative residue of the rule's right-hand side modulo k^2.
std::int64_t rule_residue(const CongruenceRule& r, std::int64_t k, std::int64_t d) {
  i128 k2 = static_cast<i128>(k) * k;
  i128 v = static_cast<i128>(r.sign) * (static_cast<i128>(r.alpha) * k + r.beta) * d;
  v %= k2;
  if (v < 0) v += k2;
  return static_cast<std::int64_t>(v);
}

i128 mod128(i128 a, i128 m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace

std::string to_string(BergeType t) {
  for (const auto& n : kNames)
    if (n.type == t) return n.tag;
  return "?";
}

std::optional<BergeType> parse_berge_type(const std::string& tag) {
  for (const auto& n : kNames)
    if (tag == n.tag) return n.type;
  return std::nullopt;
}

const std::vector<BergeType>& all_berge_types() {
  static const std::vector<BergeType> all = [] {
    std::vector<BergeType> v;
    for (const auto& n : kNames) v.push_back(n.type);
    return v;
  }();
  return all;
}

KOrbit canonical_k_orbit(std::int64_t p, std::int64_t k) {
  if (p < 1) throw DomainError("canonical_k_orbit: modulus must be positive");
  std::int64_t r = mod(k, p);
  if (p == 1) return {1, 0};
  if (std::gcd(r, p) != 1) throw DomainError("canonical_k_orbit: k not coprime to p");
  std::int64_t inv = inverse_mod(r, p);
  std::int64_t rep = std::min({r, p - r, inv, p - inv});
  return {p, rep};
}

std::vector<BergeType> BergeEntry::types() const {
  std::vector<BergeType> out;
  for (const auto& s : sources)
    if (std::find(out.begin(), out.end(), s.type) == out.end()) out.push_back(s.type);
  std::sort(out.begin(), out.end());
  return out;
}

std::string BergeEntry::type_tags() const {
  std::string out;
  for (auto t : types()) {
    if (!out.empty()) out += '|';
    out += to_string(t);
  }
  return out;
}

bool satisfies_type(BergeType type, std::int64_t p, std::int64_t k) {
  if (p < 2) return false;
  switch (type) {
    case BergeType::I_plus:
    case BergeType::I_minus:
    case BergeType::II_plus:
    case BergeType::II_minus: {
      if (k < 1) return false;
      bool plus = type == BergeType::I_plus || type == BergeType::II_plus;
      std::int64_t m = plus ? p - 1 : p + 1;
      if (m <= 0 || m % k) return false;
      std::int64_t i = m / k;
      std::int64_t g = std::gcd(i, k);
      if (type == BergeType::I_plus || type == BergeType::I_minus) return g == 1;
      return g == 2 && i >= 4 && k >= 4;
    }
    case BergeType::VII:
      return mod128(static_cast<i128>(k) * k + k + 1, p) == 0;
    case BergeType::VIII:
      return mod128(static_cast<i128>(k) * k - k - 1, p) == 0;
    case BergeType::IX:
    case BergeType::X: {
      std::int64_t want = type == BergeType::IX ? 2 : 3;
      if (mod(k, 11) != want) return false;
      return static_cast<i128>(11) * p == 2 * static_cast<i128>(k) * k + k + 1;
    }
    default: {
      const CongruenceRule* r = rule_for(type);
      if (!r || k < 1) return false;
      i128 k2 = static_cast<i128>(k) * k;
      for (std::int64_t d : admissible_d(*r, k))
        if (mod128(p, k2) == rule_residue(*r, k, d)) return true;
      return false;
    }
  }
}

std::vector<BergeEntry> berge_entries(std::int64_t max_p, const std::set<BergeType>& filter) {
  if (max_p < 2) throw DomainError("berge_entries: max_p must be at least 2");
  auto wanted = [&](BergeType t) { return filter.empty() || filter.count(t) > 0; };
  std::map<std::pair<std::int64_t, std::int64_t>, BergeEntry> table;

  auto emit = [&](BergeType type, std::int64_t p, std::int64_t i, std::int64_t k, std::int64_t d) {
    if (p < 2 || p > max_p) return;
    std::int64_t r = mod(k, p);
    if (std::gcd(r, p) != 1) return;
    KOrbit orbit = canonical_k_orbit(p, r);
    auto [it, fresh] = table.try_emplace({p, orbit.representative});
    BergeEntry& e = it->second;
    if (fresh) {
      e.p = p;
      e.k_orbit = orbit;
    }
    BergeSource s{type, i, k, d};
    if (std::find(e.sources.begin(), e.sources.end(), s) == e.sources.end()) e.sources.push_back(s);
  };

  for (std::int64_t k = 1; k <= max_p + 1; ++k) {
    for (std::int64_t i = 1; i * k <= max_p + 1; ++i) {
      std::int64_t g = std::gcd(i, k);
      if (g == 1) {
        if (wanted(BergeType::I_plus)) emit(BergeType::I_plus, i * k + 1, i, k, 0);
        if (wanted(BergeType::I_minus)) emit(BergeType::I_minus, i * k - 1, i, k, 0);
      } else if (g == 2 && i >= 4 && k >= 4) {
        if (wanted(BergeType::II_plus)) emit(BergeType::II_plus, i * k + 1, i, k, 0);
        if (wanted(BergeType::II_minus)) emit(BergeType::II_minus, i * k - 1, i, k, 0);
      }
    }
  }

  // The least residue of each III-V class grows at least linearly in k, so this range is complete.
  for (std::int64_t k = 1; k <= 2 * max_p + 4; ++k) {
    i128 k2 = static_cast<i128>(k) * k;
    for (const auto& r : kRules) {
      if (!wanted(r.type)) continue;
      for (std::int64_t d : admissible_d(r, k)) {
        std::int64_t base = rule_residue(r, k, d);
        for (i128 p = base; p <= max_p; p += k2)
          if (p >= 2) emit(r.type, static_cast<std::int64_t>(p), 0, k, d);
      }
    }
  }

  if (wanted(BergeType::VII) || wanted(BergeType::VIII)) {
    for (std::int64_t p = 2; p <= max_p; ++p) {
      for (std::int64_t k = 1; k < p; ++k) {
        std::int64_t k2 = mul_mod(k, k, p);
        if (wanted(BergeType::VII) && mod(k2 + k + 1, p) == 0) emit(BergeType::VII, p, 0, k, 0);
        if (wanted(BergeType::VIII) && mod(k2 - k - 1, p) == 0) emit(BergeType::VIII, p, 0, k, 0);
      }
    }
  }

  if (wanted(BergeType::IX) || wanted(BergeType::X)) {
    std::int64_t bound = isqrt(11 * max_p) + 2;
    for (std::int64_t k = -bound; k <= bound; ++k) {
      std::int64_t num = 2 * k * k + k + 1;
      if (num % 11) continue;
      std::int64_t p = num / 11;
      if (mod(k, 11) == 2 && wanted(BergeType::IX)) emit(BergeType::IX, p, 0, k, 0);
      if (mod(k, 11) == 3 && wanted(BergeType::X)) emit(BergeType::X, p, 0, k, 0);
    }
  }

  std::vector<BergeEntry> out;
  out.reserve(table.size());
  for (auto& [key, e] : table) {
    std::sort(e.sources.begin(), e.sources.end());
    e.k = mod(e.sources.front().k, e.p);
    e.q = mod(-mul_mod(e.k, e.k, e.p), e.p);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace lensembed
