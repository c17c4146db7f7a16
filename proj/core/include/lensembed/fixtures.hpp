#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lensembed/berge.hpp"

namespace lensembed {

using Params = std::map<std::string, std::int64_t>;

// Integer expression over named parameters: + - * / (exact) and parentheses.
std::int64_t eval_expr(const std::string& text, const Params& env);

// Norm string such as "a+1,3,2^[a-1],3". A run 2^[-1] merges its neighbours y,z into
// y+z-2, or drops the preceding entry when it is trailing.
std::vector<std::int64_t> build_norms(const std::string& text, const Params& env);

// One element of a vertex basis written in the standard basis v_1..v_n.
struct BasisTerm {
  std::map<std::int64_t, std::int64_t> coeffs;  // index j -> coefficient of v_j
  bool starred = false;
};

// Basis string such as "-v(s)*; v(s-1>1*); -(v(s+1)+v(1..s-1))*".
// v(i..j) ascends, v(i>j) descends (both empty when reversed); a '*' after an endpoint
// stars that element, a '*' after a single element or a parenthesized sum stars it.
std::vector<BasisTerm> build_basis(const std::string& text, const Params& env);

struct SmallFamily {
  std::string name;
  Params minimum;               // free parameters with their least values
  std::string derived;          // "s=a;g=s+b+2;n=g+c"
  std::string basis;
  std::string norms;
  std::string k;
  std::string p;
  std::vector<BergeType> types;  // every listed type must hold
  bool b_zero_needs_c_zero = false;
};

const std::vector<SmallFamily>& small_families();

enum class BasisSource { table, table_resigned, search, none };
std::string to_string(BasisSource s);

struct FixtureInstance {
  std::string family;
  Params params;
  std::vector<std::int64_t> norms;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t p_formula = 0;
  std::int64_t k_formula = 0;
  std::int64_t k_computed = 0;  // weighted sum over the starred elements, reduced mod p
  int k_sign = 0;               // +1: k_computed = k_formula, -1: = -k_formula, 0: neither
  bool inverted = false;         // matched through the inverse residue
  BasisSource source = BasisSource::none;
  std::vector<std::int64_t> sigma;
  bool stars_match = true;      // printed stars agree with the elements pairing with e_0
  std::vector<BergeType> types;
  bool types_ok = false;
  std::string note;

  bool ok() const { return p == p_formula && k_sign != 0 && types_ok && source != BasisSource::none; }
};

struct IdentityCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
};

struct FixtureReport {
  std::int64_t param_cap = 0;
  std::vector<FixtureInstance> instances;
  std::vector<IdentityCheck> identities;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
};

// Instantiates every small family with parameters up to param_cap and every large
// family on all strings of length 1..param_cap-2 with entries 2..param_cap.
FixtureReport fixtures_check(std::int64_t param_cap);

FixtureInstance check_small_family(const SmallFamily& family, const Params& params);

}  // namespace lensembed
