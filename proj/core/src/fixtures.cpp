#include "lensembed/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <optional>

#include "lensembed/arith.hpp"
#include "lensembed/contfrac.hpp"
#include "lensembed/embed.hpp"

namespace lensembed {

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& text, std::size_t pos, const Params& env) : s_(text), pos_(pos), env_(env) {}

  std::int64_t parse() { return sum(); }
  std::size_t pos() const { return pos_; }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool operand_follows(std::size_t at) const {
    while (at < s_.size() && std::isspace(static_cast<unsigned char>(s_[at]))) ++at;
    return at < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[at])) || s_[at] == '(');
  }
  std::int64_t sum() {
    std::int64_t v = product();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-') && operand_follows(pos_ + 1)) {
        char op = s_[pos_++];
        std::int64_t r = product();
        v = op == '+' ? checked_add(v, r) : checked_add(v, -r);
      } else {
        return v;
      }
    }
  }
  std::int64_t product() {
    std::int64_t v = unary();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/') && operand_follows(pos_ + 1)) {
        char op = s_[pos_++];
        std::int64_t r = unary();
        if (op == '*') {
          v = checked_mul(v, r);
        } else {
          if (r == 0 || v % r != 0) throw DomainError("inexact division in '" + s_ + "'");
          v /= r;
        }
      } else {
        return v;
      }
    }
  }
  std::int64_t unary() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return -unary();
    }
    return atom();
  }
  std::int64_t atom() {
    skip();
    if (pos_ >= s_.size()) throw DomainError("unexpected end of '" + s_ + "'");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      std::int64_t v = sum();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw DomainError("missing ')' in '" + s_ + "'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = checked_add(checked_mul(v, 10), s_[pos_++] - '0');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = env_.find(name);
      if (it == env_.end()) throw DomainError("unknown variable '" + name + "'");
      return it->second;
    }
    throw DomainError("unexpected '" + std::string(1, c) + "' in '" + s_ + "'");
  }

  const std::string& s_;
  std::size_t pos_;
  const Params& env_;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

struct Endpoint {
  std::int64_t index = 0;
  bool star = false;
};

struct IndexRange {
  std::vector<std::int64_t> indices;
  bool star_first = false;
  bool star_last = false;
};

// Parses the inside of v(...) starting at pos; returns the range and moves pos past ')'.
IndexRange parse_range(const std::string& s, std::size_t& pos, const Params& env) {
  auto endpoint = [&]() {
    ExprParser ep(s, pos, env);
    Endpoint e{ep.parse(), false};
    pos = ep.pos();
    while (pos < s.size() && s[pos] == ' ') ++pos;
    if (pos < s.size() && s[pos] == '*') {
      e.star = true;
      ++pos;
    }
    return e;
  };
  Endpoint first = endpoint();
  IndexRange r;
  if (s.compare(pos, 2, "..") == 0 || (pos < s.size() && s[pos] == '>')) {
    bool descending = s[pos] == '>';
    pos += descending ? 1 : 2;
    Endpoint last = endpoint();
    if (descending) {
      for (auto i = first.index; i >= last.index; --i) r.indices.push_back(i);
    } else {
      for (auto i = first.index; i <= last.index; ++i) r.indices.push_back(i);
    }
    r.star_first = first.star;
    r.star_last = last.star;
  } else {
    r.indices.push_back(first.index);
    r.star_first = r.star_last = first.star;
  }
  if (pos >= s.size() || s[pos] != ')') throw DomainError("missing ')' in basis term '" + s + "'");
  ++pos;
  return r;
}

std::optional<std::vector<std::int64_t>> standard_vector(const std::vector<std::int64_t>& sigma) {
  std::size_t j = sigma.size() - 1;
  std::vector<std::int64_t> v(sigma.size(), 0);
  v[j] = -1;
  std::int64_t prefix = std::accumulate(sigma.begin(), sigma.end() - 1, std::int64_t{0});
  if (sigma[j] == prefix + 1) {
    v[0] += 2;
    for (std::size_t i = 1; i < j; ++i) v[i] += 1;
  } else {
    std::int64_t rem = sigma[j];
    for (std::size_t i = j; i-- > 0 && rem > 0;) {
      if (sigma[i] <= rem) {
        v[i] += 1;
        rem -= sigma[i];
      }
    }
    if (rem != 0) return std::nullopt;
  }
  return v;
}

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += a[i] * b[i];
  return s;
}

// Finds changemakers whose standard basis realizes the basis terms with Gram matrix
// equal to the tridiagonal form of the norms up to the signs of off-diagonal entries.
class SigmaSearch {
 public:
  SigmaSearch(const std::vector<BasisTerm>& terms, const std::vector<std::int64_t>& norms, std::size_t limit)
      : terms_(terms), norms_(norms), limit_(limit) {
    for (std::size_t i = 0; i < terms.size(); ++i) by_last_[terms[i].coeffs.rbegin()->first].push_back(i);
  }

  std::vector<std::vector<std::int64_t>> run() {
    sigma_ = {1};
    values_.assign(terms_.size(), {});
    done_.assign(terms_.size(), false);
    descend();
    return found_;
  }

 private:
  std::int64_t target(std::size_t i, std::size_t j) const {
    if (i == j) return norms_[i];
    return (i + 1 == j || j + 1 == i) ? 1 : 0;
  }

  bool descend() {
    std::size_t j = sigma_.size();
    if (j == norms_.size() + 1) {
      found_.push_back(sigma_);
      return found_.size() >= limit_;
    }
    std::int64_t total = std::accumulate(sigma_.begin(), sigma_.end(), std::int64_t{0});
    for (std::int64_t x = sigma_.back(); x <= total + 1; ++x) {
      sigma_.push_back(x);
      auto v = standard_vector(sigma_);
      if (v) {
        basis_.push_back(*v);
        std::vector<std::size_t> placed;
        bool ok = true;
        auto it = by_last_.find(static_cast<std::int64_t>(j));
        if (it != by_last_.end()) {
          for (auto i : it->second) {
            std::vector<std::int64_t> val(j + 1, 0);
            for (auto [idx, c] : terms_[i].coeffs) {
              const auto& b = basis_[idx - 1];
              for (std::size_t t = 0; t < b.size(); ++t) val[t] += c * b[t];
            }
            if (dot(val, val) != norms_[i]) {
              ok = false;
              break;
            }
            values_[i] = val;
            done_[i] = true;
            placed.push_back(i);
            for (std::size_t o = 0; o < terms_.size() && ok; ++o) {
              if (o == i || !done_[o]) continue;
              if (std::abs(dot(val, values_[o])) != target(i, o)) ok = false;
            }
            if (!ok) break;
          }
        }
        bool stop = ok && descend();
        for (auto i : placed) done_[i] = false;
        basis_.pop_back();
        if (stop) {
          sigma_.pop_back();
          return true;
        }
      }
      sigma_.pop_back();
    }
    return false;
  }

  const std::vector<BasisTerm>& terms_;
  const std::vector<std::int64_t>& norms_;
  std::size_t limit_;
  std::map<std::int64_t, std::vector<std::size_t>> by_last_;
  std::vector<std::int64_t> sigma_;
  std::vector<std::vector<std::int64_t>> basis_;
  std::vector<std::vector<std::int64_t>> values_;
  std::vector<bool> done_;
  std::vector<std::vector<std::int64_t>> found_;
};

int sign_against(std::int64_t k, std::int64_t formula, std::int64_t p) {
  if (mod(k - formula, p) == 0) return 1;
  if (mod(k + formula, p) == 0) return -1;
  return 0;
}

// The search may present the mirror string, whose class is the inverse residue.
int orbit_sign(std::int64_t k, std::int64_t formula, std::int64_t p, bool* inverted) {
  *inverted = false;
  if (int s = sign_against(k, formula, p); s != 0) return s;
  if (std::gcd(mod(k, p), p) != 1) return 0;
  int s = sign_against(inverse_mod(mod(k, p), p), formula, p);
  *inverted = s != 0;
  return s;
}

// Tests the type on the formula value itself and on every orbit representative with
// both positive and negative lifts.
bool lands_in_type(BergeType type, std::int64_t p, std::int64_t k) {
  if (satisfies_type(type, p, k)) return true;
  if (std::gcd(mod(k, p), p) != 1) return false;
  std::int64_t r = mod(k, p);
  std::int64_t inv = inverse_mod(r, p);
  for (std::int64_t x : {r, p - r, inv, p - inv}) {
    if (satisfies_type(type, p, x) || satisfies_type(type, p, x - p)) return true;
  }
  return false;
}

Params with_derived(const SmallFamily& f, Params env) {
  for (const auto& part : split(f.derived, ';')) {
    auto d = trim(part);
    if (d.empty()) continue;
    auto eq = d.find('=');
    env[trim(d.substr(0, eq))] = eval_expr(d.substr(eq + 1), env);
  }
  return env;
}

using BT = BergeType;

}  // namespace

std::int64_t eval_expr(const std::string& text, const Params& env) {
  ExprParser ep(text, 0, env);
  std::int64_t v = ep.parse();
  std::size_t pos = ep.pos();
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw DomainError("trailing input in '" + text + "'");
  return v;
}

std::vector<std::int64_t> build_norms(const std::string& text, const Params& env) {
  std::vector<std::int64_t> out;
  bool merge = false;
  for (const auto& raw : split(text, ',')) {
    auto tok = trim(raw);
    if (tok.rfind("2^[", 0) == 0 && tok.back() == ']') {
      std::int64_t count = eval_expr(tok.substr(3, tok.size() - 4), env);
      if (count == -1) {
        if (out.empty()) throw DomainError("2^[-1] at the start of '" + text + "'");
        merge = true;
      } else if (count < 0) {
        throw DomainError("negative run length in '" + text + "'");
      } else {
        out.insert(out.end(), static_cast<std::size_t>(count), 2);
      }
      continue;
    }
    std::int64_t x = eval_expr(tok, env);
    if (merge) {
      out.back() += x - 2;
      merge = false;
    } else {
      out.push_back(x);
    }
  }
  if (merge) out.pop_back();
  return out;
}

std::vector<BasisTerm> build_basis(const std::string& text, const Params& env) {
  std::vector<BasisTerm> out;
  for (const auto& raw : split(text, ';')) {
    std::string tok = trim(raw);
    std::size_t pos = 0;
    std::int64_t sign = 1;
    if (tok.empty()) throw DomainError("empty basis term in '" + text + "'");
    if (tok[pos] == '-') {
      sign = -1;
      ++pos;
    }
    if (tok[pos] == '(') {
      ++pos;
      BasisTerm term;
      while (pos < tok.size() && tok[pos] != ')') {
        std::int64_t s = 1;
        while (tok[pos] == ' ') ++pos;
        if (tok[pos] == '+' || tok[pos] == '-') s = tok[pos++] == '-' ? -1 : 1;
        if (tok.compare(pos, 2, "v(") != 0) throw DomainError("expected v( in '" + tok + "'");
        pos += 2;
        auto r = parse_range(tok, pos, env);
        for (auto i : r.indices) term.coeffs[i] += sign * s;
      }
      if (pos >= tok.size()) throw DomainError("missing ')' in '" + tok + "'");
      ++pos;
      term.starred = pos < tok.size() && tok[pos] == '*';
      std::erase_if(term.coeffs, [](const auto& kv) { return kv.second == 0; });
      if (term.coeffs.empty()) throw DomainError("vanishing sum in '" + tok + "'");
      out.push_back(std::move(term));
      continue;
    }
    if (tok.compare(pos, 2, "v(") != 0) throw DomainError("expected v( in '" + tok + "'");
    pos += 2;
    auto r = parse_range(tok, pos, env);
    bool trailing_star = pos < tok.size() && tok[pos] == '*';
    for (std::size_t t = 0; t < r.indices.size(); ++t) {
      BasisTerm term;
      term.coeffs[r.indices[t]] = sign;
      term.starred = (t == 0 && r.star_first) || (t + 1 == r.indices.size() && r.star_last) || trailing_star;
      out.push_back(std::move(term));
    }
  }
  return out;
}

std::string to_string(BasisSource s) {
  switch (s) {
    case BasisSource::table:
      return "table";
    case BasisSource::table_resigned:
      return "table-resigned";
    case BasisSource::search:
      return "search";
    case BasisSource::none:
      return "none";
  }
  return "none";
}

const std::vector<SmallFamily>& small_families() {
  static const std::vector<SmallFamily> families = {
      {"just-right-1.1", {{"a", 2}}, "s=a", "-v(s)*; -v(s+2); v(s+3); v(s-1>1*); -(v(s+1)+v(s-1>1))*",
       "a+1,3,5,2^[a-1],3", "11*(-a-1)+3", "(2*k*k+k+1)/11", {BT::X}},
      {"just-right-1.2", {{"a", 2}}, "s=a", "-v(s)*; -v(s+3); v(s+2); v(s-1>1*); -(v(s+1)+v(s-1>1))*",
       "a+1,4,4,2^[a-1],3", "11*(-a-1)+2", "(2*k*k+k+1)/11", {BT::IX}},
      {"just-right-2.1", {}, "", "-v(1)*; -v(3); v(4)*; -v(2)*", "2,3,5,3", "-19", "64", {BT::X}},
      {"just-right-2.2", {}, "", "-v(1)*; -v(4); v(3)*; -v(2)*", "2,4,4,3", "-20", "71", {BT::IX}},
      {"just-right-2.3", {{"a", 2}}, "s=a", "-v(1*..s-1); -v(s+3); v(s+2); v(s)*; v(s+1)", "2^[a-1],5,3,a+1,2",
       "11*a+2", "(2*k*k+k+1)/11", {BT::IX}},
      {"just-right-2.4", {{"a", 2}}, "s=a", "-v(1*..s-1); -v(s+2); v(s+3); v(s)*; v(s+1)", "2^[a-1],4,4,a+1,2",
       "11*a+3", "(2*k*k+k+1)/11", {BT::X}},
      {"just-right-2.5", {{"a", 1}, {"b", 0}}, "m=a+3;n=m+b", "v(2); v(1)*; v(m); -v(3*..m-1); -v(m+1..n)",
       "2,2,a+3,4,2^[a-1],3,2^[b-1]", "3*a+5", "(b+1)*k*k-3*(k+1)", {BT::IVb_minus, BT::Va_minus}},
      {"just-right-3.1", {{"a", 1}}, "n=a", "v(1*..n)", "2^[a]", "1", "n+1", {BT::I_plus}},
      {"just-right-3.2", {{"a", 1}}, "n=a+3", "-v(2); -v(1)*; v(3); v(4*..n)", "2,2,3,5,2^[a-1]", "5",
       "25*(a+1)-18", {BT::IIIa_minus, BT::Va_minus}},
      {"gappy-isolated.1", {{"a", 2}, {"b", 1}, {"c", 0}}, "s=a;g=s+b+2;n=g+c",
       "v(s)*; v(s+1); -(v(g)+v(1..s-1)+v(s+1))*; v(1*..s-1); v(s+2..g-1); v(g+1..n)",
       "a+1,2,b+3,2^[a-1],4,2^[b-1],3,2^[c-1]", "2*a*b+3*a+b+2", "(c+1)*k*k-(2*a+1)*(k+1)", {BT::IVb_minus}},
      {"gappy-isolated.3", {{"a", 2}, {"b", 1}, {"c", 0}}, "s=a;g=s+b+2;n=g+c",
       "-v(1*..s-1); -v(s+1); v(g); v(s)*; v(s+2..g-1); v(g+1..n)", "2^[a-1],3,b+2,a+1,3,2^[b-1],3,2^[c-1]",
       "2*a*b+3*a+b+1", "(c+1)*k*k-(2*a+1)*(k-1)", {BT::IVa_minus}},
      {"gappy-isolated.4", {{"a", 1}, {"b", 1}, {"c", 0}}, "j=a+2;g=j+b+1;n=g+c",
       "-v(j); -v(1)*; -v(g); v(2*..j-1); v(j+1..g-1); v(g+1..n)", "a+2,2,b+3,3,2^[a-1],3,2^[b-1],3,2^[c-1]",
       "2*a*b+4*a+3*b+5", "(c+1)*k*k-(2*a+3)*(k+1)", {BT::Va_minus}},
      {"gappy-isolated.5", {{"a", 1}, {"b", 1}, {"c", 0}}, "j=a+2;g=j+b;n=g+c",
       "-v(j-1>2*); v(g); v(1)*; v(j..g-1); v(g+1..n)", "2^[a-1],3,b+2,2,a+2,2^[b-1],3,2^[c-1]",
       "2*a*b+2*a+b+2", "(c+1)*k*k-(2*a+1)*(k-1)", {BT::Vb_minus}},
      {"gappy-attached.1", {{"a", 2}, {"b", 1}, {"c", 0}}, "s=a;g=s+b+2;n=g+c",
       "v(s)*; v(g); -v(s+1); -v(s-1>1*); (v(s+2)+v(1..s-1))*; v(s+3..g-1); v(g+1..n)",
       "a+1,b+2,3,2^[a-1],4,2^[b-1],3,2^[c-1]", "2*a*b+3*a+2*b+2", "(c+1)*k*k-(a+1)*(2*k-1)", {BT::IIIa_minus}},
      {"gappy-attached.2", {{"a", 1}, {"b", 0}}, "g=a+3;n=g+b", "v(1)*; v(g); -v(2)*; v(3*..g-1); v(g+1..n)",
       "2,a+2,3,4,2^[a-1],3,2^[b-1]", "4*a+5", "(b+1)*k*k-2*(2*k-1)", {BT::IIIa_minus}},
      {"gappy-attached.3", {{"a", 2}, {"b", 1}, {"c", 0}}, "s=a;g=s+b+2;n=g+c",
       "-v(1*..s-1); -v(g); -v(s+1); (v(s)+v(s+1))*; v(s+2..g-1); v(g+1..n)",
       "2^[a-1],b+3,2,a+1,3,2^[b-1],3,2^[c-1]", "2*a*b+3*a+1", "(c+1)*k*k-a*(2*k+1)", {BT::IIIb_minus}},
      {"gappy-triangle", {{"a", 2}, {"b", 0}}, "s=a;n=s+b+2",
       "-v(s)*; -v(s+1); -(v(s+2)-v(1..s-1))*; v(1*..s-1); v(s+3..n)", "a+1,2,3,2^[a-1],5,2^[b-1]", "3*a+2",
       "(b+1)*k*k-(k+1)*(2*k-1)/3", {BT::IIIa_minus, BT::IVb_minus}},
      {"breakable-1.1", {{"a", 1}, {"b", 0}}, "m=a+3;n=m-1+b", "-v(3*..m-1); -(v(1)-v(3..m-1))*; v(2)*; v(m..n)",
       "3,2^[a-1],4,3,a+2,2^[b-1]", "4*a+3", "b*k*k+2*(2*k+1)", {BT::IIIb_plus}},
      {"breakable-1.2", {{"a", 1}, {"b", 0}}, "m=a+4;n=m-1+b",
       "-v(3)*; -(v(1)-v(3..m-1))*; -v(m-1>4*); v(2)*; v(m..n)", "3,3,2^[a-1],3,3,a+3,2^[b-1]", "5*a+7",
       "b*k*k+5*(k-1)", {BT::IVa_plus}},
      {"breakable-2.1", {{"a", 1}, {"b", 0}}, "m=a+4;n=m-1+b",
       "v(4..m-1); (v(1)-v(3..m-1)); (v(3)+v(2))*; -v(2); v(m..n)", "3,2^[a-1],3,3,2,a+3,2^[b-1]", "4*a+5",
       "b*k*k+2*(2*k-1)", {BT::IIIa_plus}},
      {"breakable-2.2", {{"a", 1}, {"b", 1}, {"c", 0}}, "s=a;m=s+b+2;n=m-1+c",
       "v(s>2); (v(1)-v(2..s)-v(s+2))*; v(m-1>s+2*); v(s+1); v(m..n)", "2^[a-1],4,2^[b-1],3,a+1,b+2,2^[c-1]",
       "2*a*b+2*a+b", "c*k*k+(2*a+1)*(k+1)", {BT::Va_plus}},
      {"breakable-2.3", {{"a", 1}, {"b", 1}, {"c", 0}}, "s=a;m=s+b+2;n=m-1+c",
       "v(s+1); v(s+2*..m-1); (v(1)-v(s+2..m-1))*; v(2..s); v(m..n)", "a+1,3,2^[b-1],4,2^[a-1],b+3,2^[c-1]",
       "2*a*b+2*a+b+2", "c*k*k+(2*a+1)*(k-1)", {BT::Vb_plus}},
      {"breakable-3.1", {{"a", 2}, {"b", 0}, {"c", 0}}, "t=a;m=t+b+3;n=m-1+c",
       "v(1*..t-1); v(t+3..m-1); (v(t)-v(1..t-1)-v(t+2..m-1)); v(t+2)*; v(t+1); v(m..n)",
       "2^[a-1],3,2^[b-1],3,a+2,2,b+3,2^[c-1]", "2*a*b+3*a+2*b+2", "c*k*k+(a+1)*(2*k-1)", {BT::IIIa_plus},
       true},
      {"breakable-3.2", {{"a", 2}, {"b", 0}, {"c", 0}}, "t=a;m=t+b+3;n=m-1+c",
       "-v(t+2)*; (-v(t)+v(1..t-1)+v(t+2..m-1)); -v(m-1>t+4); (-v(t+3)+v(1..t-1))*; v(1*..t-1); v(t+1); "
       "v(m..n)",
       "a+2,3,2^[b-1],3,2^[a-1],3,b+3,2^[c-1]", "2*a*b+3*a+3*b+4", "c*k*k+(2*a+3)*(k-1)", {BT::IVa_plus}, true},
      {"breakable-3.3", {{"a", 2}, {"b", 1}, {"c", 0}}, "t=a;m=t+b+2;n=m-1+c",
       "-v(t-1>1*); (-v(t)+v(t+2..m-1))*; v(m-1>t+2*); v(t+1); v(m..n)", "2^[a-1],4,2^[b-1],a+2,2,b+2,2^[c-1]",
       "2*a*b+a+b+1", "c*k*k+(2*a+1)*(k+1)", {BT::IVb_plus}},
      {"breakable-3.4", {{"a", 2}, {"b", 1}, {"c", 0}}, "t=a;m=t+b+2;n=m-1+c",
       "-v(t+2*..m-1); (-v(t)+v(t+2..m-1))*; v(1*..t-1); v(t+1); v(m..n)", "a+2,2^[b-1],4,2^[a-1],3,b+2,2^[c-1]",
       "2*a*b+2*a+b+2", "c*k*k+(a+1)*(2*k+1)", {BT::IIIb_plus}},
  };
  return families;
}

FixtureInstance check_small_family(const SmallFamily& f, const Params& params) {
  FixtureInstance inst;
  inst.family = f.name;
  inst.params = params;
  Params env = with_derived(f, params);
  inst.k_formula = eval_expr(f.k, env);
  env["k"] = inst.k_formula;
  inst.p_formula = eval_expr(f.p, env);
  inst.norms = build_norms(f.norms, env);
  auto [P, Q] = hj_eval(HJString::from_ints(inst.norms));
  inst.p = static_cast<std::int64_t>(P);
  inst.q = static_cast<std::int64_t>(Q);
  inst.types = f.types;
  auto num = numerators(inst.norms);
  std::size_t n = inst.norms.size();

  auto settle = [&](std::int64_t k_raw) {
    inst.k_computed = mod(k_raw, inst.p);
    inst.k_sign = sign_against(k_raw, inst.k_formula, inst.p);
  };

  std::vector<BasisTerm> terms;
  std::string problem;
  try {
    terms = build_basis(f.basis, env);
  } catch (const DomainError& e) {
    problem = e.what();
  }
  if (problem.empty() && terms.size() != n) problem = "table basis has " + std::to_string(terms.size()) + " elements";
  for (const auto& t : terms) {
    if (!problem.empty()) break;
    for (auto [j, c] : t.coeffs) {
      if (j < 1 || j > static_cast<std::int64_t>(n)) problem = "table basis uses v_" + std::to_string(j);
    }
  }

  if (problem.empty()) {
    auto sigmas = SigmaSearch(terms, inst.norms, 4).run();
    for (const auto& sigma : sigmas) {
      std::vector<std::vector<std::int64_t>> sb;
      for (std::size_t j = 1; j < sigma.size(); ++j) {
        std::vector<std::int64_t> prefix(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        auto v = *standard_vector(prefix);
        v.resize(sigma.size(), 0);
        sb.push_back(v);
      }
      std::vector<std::vector<std::int64_t>> x(n, std::vector<std::int64_t>(sigma.size(), 0));
      for (std::size_t i = 0; i < n; ++i) {
        for (auto [j, c] : terms[i].coeffs) {
          for (std::size_t t = 0; t < sigma.size(); ++t) x[i][t] += c * sb[j - 1][t];
        }
      }
      std::vector<std::int64_t> eps(n, 1);
      for (std::size_t i = 1; i < n; ++i) eps[i] = eps[i - 1] * -dot(x[i - 1], x[i]);
      if (2 * std::count(eps.begin(), eps.end(), -1) > static_cast<std::ptrdiff_t>(n))
        for (auto& e : eps) e = -e;
      std::int64_t k = 0;
      bool stars = true;
      for (std::size_t i = 0; i < n; ++i) {
        k += num[i + 1] * eps[i] * x[i][0];
        stars = stars && ((x[i][0] != 0) == terms[i].starred);
      }
      bool resigned = std::count(eps.begin(), eps.end(), -1) > 0;
      if (inst.source == BasisSource::none || (inst.k_sign == 0 && sign_against(k, inst.k_formula, inst.p) != 0)) {
        inst.source = resigned ? BasisSource::table_resigned : BasisSource::table;
        inst.sigma = sigma;
        inst.stars_match = stars;
        settle(k);
      }
    }
    if (sigmas.empty()) problem = "no changemaker realizes the table basis";
  }

  if (inst.source == BasisSource::none) {
    inst.note = problem;
    SearchOptions opts;
    opts.node_budget = 20'000'000;
    try {
      for (const auto& e : find_embeddings(inst.p, inst.q, opts)) {
        bool inverted = false;
        int s = orbit_sign(e.k.raw, inst.k_formula, inst.p, &inverted);
        if (inst.source == BasisSource::none || (inst.k_sign == 0 && s != 0)) {
          inst.source = BasisSource::search;
          inst.sigma = e.sigma.entries();
          inst.stars_match = true;
          inst.k_computed = mod(e.k.raw, inst.p);
          inst.k_sign = s;
          inst.inverted = inverted;
        }
      }
    } catch (const BudgetExceeded&) {
      inst.note += "; embedding search exhausted its budget";
    }
  }

  inst.types_ok = !inst.types.empty();
  for (auto t : inst.types) inst.types_ok = inst.types_ok && lands_in_type(t, inst.p_formula, inst.k_formula);
  return inst;
}

namespace {

struct Convergents {
  std::vector<std::int64_t> p, q;  // index j = 0..l
  std::int64_t r(std::size_t j) const { return p[j] - q[j]; }
};

Convergents convergents(const std::vector<std::int64_t>& a) {
  Convergents c;
  std::int64_t p0 = 0, p1 = 1, q0 = -1, q1 = 0;
  c.p.push_back(1);
  c.q.push_back(0);
  for (auto x : a) {
    std::int64_t p2 = x * p1 - p0, q2 = x * q1 - q0;
    p0 = p1;
    p1 = p2;
    q0 = q1;
    q1 = q2;
    c.p.push_back(p1);
    c.q.push_back(q1);
  }
  return c;
}

std::pair<std::int64_t, std::int64_t> eval_pair(const std::vector<std::int64_t>& nu) {
  auto [P, Q] = hj_eval(HJString::from_ints(nu));
  return {static_cast<std::int64_t>(P), static_cast<std::int64_t>(Q)};
}

struct LargeFamily {
  std::string name;
  bool needs_long_tail = false;  // requires m >= 2
  std::function<std::vector<std::int64_t>(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b)>
      norms;
  std::function<std::int64_t(const Convergents&, std::size_t l)> p;
  std::function<std::int64_t(const Convergents&, std::size_t l)> k;
  std::vector<BergeType> any_of;
};

// b_m, ..., b_2 followed by the extra entries.
std::vector<std::int64_t> reversed_tail(const std::vector<std::int64_t>& b, std::size_t skip_front) {
  std::vector<std::int64_t> out;
  for (std::size_t j = b.size(); j-- > skip_front;) out.push_back(b[j]);
  return out;
}

const std::vector<LargeFamily>& large_families() {
  static const std::vector<LargeFamily> families = {
      {"just-right-3.3", false,
       [](const auto& a, const auto& b) {
         auto nu = a;
         nu.push_back(2);
         auto t = reversed_tail(b, 1);
         nu.insert(nu.end(), t.begin(), t.end());
         return nu;
       },
       [](const Convergents& c, std::size_t l) { return c.p[l] * c.r(l) + 1; },
       [](const Convergents& c, std::size_t l) { return c.p[l]; }, {BT::I_plus}},
      {"tight-unbreakable-1.3", true,
       [](const auto& a, const auto& b) {
         auto nu = a;
         nu.back() += b.back();
         for (std::size_t j = b.size() - 1; j-- > 1;) nu.push_back(b[j]);
         return nu;
       },
       [](const Convergents& c, std::size_t l) { return c.p[l] * c.r(l) - 1; },
       [](const Convergents& c, std::size_t l) { return c.p[l]; }, {BT::I_minus}},
      {"tight-unbreakable-2", false,
       [](const auto& a, const auto& b) {
         auto nu = a;
         nu.push_back(5);
         auto t = reversed_tail(b, 1);
         nu.insert(nu.end(), t.begin(), t.end());
         return nu;
       },
       [](const Convergents& c, std::size_t l) { return 4 * c.p[l] * c.r(l) + 1; },
       [](const Convergents& c, std::size_t l) { return 2 * c.p[l]; }, {BT::II_plus, BT::I_minus}},
      {"just-right-1.3", true,
       [](const auto& a, const auto& b) {
         auto nu = a;
         nu.back() += 1;
         nu.push_back(2);
         nu.push_back(2);
         nu.push_back(b.back() + 1);
         for (std::size_t j = b.size() - 1; j-- > 1;) nu.push_back(b[j]);
         return nu;
       },
       [](const Convergents& c, std::size_t l) { return 4 * c.p[l] * c.r(l) - 1; },
       [](const Convergents& c, std::size_t l) { return 2 * c.p[l]; }, {BT::II_minus}},
      {"gappy-isolated.2", false,
       [](const auto& a, const auto& b) {
         auto nu = a;
         auto t = reversed_tail(b, 0);
         nu.insert(nu.end(), t.begin(), t.end());
         return nu;
       },
       [](const Convergents& c, std::size_t l) {
         return c.p[l] * c.p[l] - c.p[l] * c.p[l - 1] + c.p[l - 1] * c.p[l - 1];
       },
       [](const Convergents& c, std::size_t l) {
         return c.p[l] * c.r(l) - c.p[l - 1] * c.r(l) + c.p[l - 1] * c.r(l - 1) - 1;
       },
       {BT::VII}},
      {"berge-viii", false,
       [](const auto& a, const auto& b) {
         auto nu = a;
         nu.back() += b.back() + 1;
         for (std::size_t j = b.size() - 1; j-- > 0;) nu.push_back(b[j]);
         return nu;
       },
       [](const Convergents& c, std::size_t l) {
         return c.p[l] * c.p[l] + c.p[l] * c.p[l - 1] - c.p[l - 1] * c.p[l - 1];
       },
       [](const Convergents& c, std::size_t l) {
         return c.p[l] * c.r(l) + c.p[l - 1] * c.r(l) - c.p[l - 1] * c.r(l - 1);
       },
       {BT::VIII}},
  };
  return families;
}

struct IdentityTally {
  std::map<std::string, IdentityCheck> by_name;
  void record(const std::string& name, bool ok) {
    auto& c = by_name[name];
    c.name = name;
    ++c.checked;
    if (!ok) ++c.failed;
  }
};

void check_identities(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, const Convergents& c,
                      std::int64_t cap, IdentityTally& tally) {
  std::size_t l = a.size(), m = b.size();
  std::int64_t pl = c.p[l], pl1 = c.p[l - 1], ql = c.q[l], ql1 = c.q[l - 1], rl = c.r(l), rl1 = c.r(l - 1);
  auto same = [](std::pair<std::int64_t, std::int64_t> got, std::int64_t num, std::int64_t den) {
    return got.first == num && got.second == den;
  };
  auto tail = reversed_tail(b, 1);
  if (m >= 2) tally.record("tail", same(eval_pair(tail), rl, rl - rl1));
  for (std::int64_t t = 1; t <= cap; ++t) {
    auto nu = a;
    nu.push_back(t + 1);
    nu.insert(nu.end(), tail.begin(), tail.end());
    tally.record("splice-plus", same(eval_pair(nu), pl * rl * t + 1, ql * rl * t + 1));
  }
  if (m >= 2) {
    for (std::int64_t t = 2; t <= cap; ++t) {
      auto nu = a;
      nu.back() += 1;
      nu.insert(nu.end(), static_cast<std::size_t>(t - 2), 2);
      nu.push_back(b.back() + 1);
      for (std::size_t j = m - 1; j-- > 1;) nu.push_back(b[j]);
      tally.record("splice-minus", same(eval_pair(nu), pl * rl * t - 1, ql * rl * t - 1));
    }
  }
  {
    auto nu = a;
    auto full = reversed_tail(b, 0);
    nu.insert(nu.end(), full.begin(), full.end());
    tally.record("fold", same(eval_pair(nu), pl * pl - pl * pl1 + pl1 * pl1, pl * ql - pl * ql1 + pl1 * ql1));
  }
  if (m >= 2) {
    auto nu = a;
    nu.insert(nu.end(), tail.begin(), tail.end());
    tally.record("fold-tail", same(eval_pair(nu), pl * rl - pl1 * rl + pl1 * rl1, ql * rl - ql1 * rl + ql1 * rl1));
  }
  {
    auto nu = a;
    nu.back() += b.back() + 1;
    for (std::size_t j = m - 1; j-- > 0;) nu.push_back(b[j]);
    tally.record("merge", same(eval_pair(nu), pl * pl + pl * pl1 - pl1 * pl1, ql * pl + ql1 * pl - ql1 * pl1 - 1));
  }
  if (m >= 2) {
    auto nu = a;
    nu.back() += b.back() + 1;
    for (std::size_t j = m - 1; j-- > 1;) nu.push_back(b[j]);
    tally.record("merge-tail",
                 same(eval_pair(nu), pl * rl + pl1 * rl - pl1 * rl1 - 1, ql * rl + ql1 * rl - ql1 * rl1 - 1));
  }
}

FixtureInstance check_large_family(const LargeFamily& f, const std::vector<std::int64_t>& a,
                                   const std::vector<std::int64_t>& b, const Convergents& c) {
  std::size_t l = a.size();
  FixtureInstance inst;
  inst.family = f.name;
  for (std::size_t i = 0; i < l; ++i) inst.params["a" + std::to_string(i + 1)] = a[i];
  inst.norms = f.norms(a, b);
  std::tie(inst.p, inst.q) = eval_pair(inst.norms);
  inst.p_formula = f.p(c, l);
  inst.k_formula = f.k(c, l);
  inst.types = f.any_of;
  if (inst.p != inst.p_formula) return inst;

  std::int64_t minus_sq = mod(-mul_mod(mod(inst.k_formula, inst.p), mod(inst.k_formula, inst.p), inst.p), inst.p);
  bool relation = minus_sq == mod(inst.q, inst.p) ||
                  (std::gcd(inst.q, inst.p) == 1 && minus_sq == inverse_mod(inst.q, inst.p));
  if (!relation) {
    inst.note = "-k^2 matches neither q nor its inverse";
    return inst;
  }
  SearchOptions opts;
  opts.node_budget = 20'000'000;
  try {
    for (const auto& e : find_embeddings(inst.p, inst.q, opts)) {
      bool inverted = false;
      int s = orbit_sign(e.k.raw, inst.k_formula, inst.p, &inverted);
      if (inst.source == BasisSource::none || (inst.k_sign == 0 && s != 0)) {
        inst.source = BasisSource::search;
        inst.sigma = e.sigma.entries();
        inst.k_computed = mod(e.k.raw, inst.p);
        inst.k_sign = s;
        inst.inverted = inverted;
      }
    }
  } catch (const BudgetExceeded&) {
    inst.note = "embedding search exhausted its budget";
  }
  if (inst.source == BasisSource::none && inst.note.empty()) inst.note = "no changemaker embedding";
  for (auto t : f.any_of) inst.types_ok = inst.types_ok || lands_in_type(t, inst.p, inst.k_formula);
  return inst;
}

void for_each_string(std::int64_t cap, const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  for (std::int64_t len = 1; len <= cap - 2; ++len) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(len), 2);
    for (;;) {
      visit(a);
      std::size_t i = 0;
      while (i < a.size() && a[i] == cap) a[i++] = 2;
      if (i == a.size()) break;
      ++a[i];
    }
  }
}

}  // namespace

std::size_t FixtureReport::failures() const {
  std::size_t n = 0;
  for (const auto& i : instances) n += i.ok() ? 0 : 1;
  for (const auto& c : identities) n += c.failed;
  return n;
}

FixtureReport fixtures_check(std::int64_t param_cap) {
  if (param_cap < 2) throw DomainError("fixtures: param_cap must be at least 2");
  FixtureReport report;
  report.param_cap = param_cap;

  for (const auto& f : small_families()) {
    std::vector<std::string> names;
    for (const auto& [name, lo] : f.minimum) names.push_back(name);
    Params params;
    std::function<void(std::size_t)> sweep = [&](std::size_t i) {
      if (i == names.size()) {
        if (f.b_zero_needs_c_zero && params.at("b") == 0 && params.at("c") != 0) return;
        report.instances.push_back(check_small_family(f, params));
        return;
      }
      for (std::int64_t v = f.minimum.at(names[i]); v <= param_cap; ++v) {
        params[names[i]] = v;
        sweep(i + 1);
      }
    };
    sweep(0);
  }

  IdentityTally tally;
  for_each_string(param_cap, [&](const std::vector<std::int64_t>& a) {
    auto c = convergents(a);
    std::size_t l = a.size();
    auto b = hj_terms(c.p[l], c.r(l));
    check_identities(a, b, c, param_cap, tally);
    for (const auto& f : large_families()) {
      if (f.needs_long_tail && b.size() < 2) continue;
      report.instances.push_back(check_large_family(f, a, b, c));
    }
  });
  for (auto& [name, c] : tally.by_name) report.identities.push_back(c);
  return report;
}

}  // namespace lensembed
