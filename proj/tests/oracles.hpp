#pragma once

// Naive reference implementations used only by the test suites.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Vec = std::vector<std::int64_t>;
using Matrix = std::vector<Vec>;

// a_1 - 1/(a_2 - 1/(...)) by back substitution over the rationals; any integer terms.
// Returns nullopt when a partial tail evaluates to zero.
std::optional<Rational> minus_fraction(const std::vector<std::int64_t>& terms);

// Cofactor expansion; exponential, for small matrices only.
BigInt determinant(const Matrix& m);

// Fraction-free Bareiss elimination over BigInt.
BigInt determinant_bareiss(const Matrix& m);

// Nondecreasing, positive, and every amount 0..sum is a subset sum.
bool makes_change(const Vec& v);

std::int64_t dot(const Vec& a, const Vec& b);
std::int64_t pair(const Matrix& gram, const Vec& a, const Vec& b);

// Every integer vector y (in basis coordinates) with |y| <= bound, found by a box search
// whose side comes from the diagonal of the inverse Gram matrix.
std::vector<Vec> short_vectors(const Matrix& gram, std::int64_t bound);

// x = y + z with y, z nonzero and <y, z> >= 0 for some y in the list of short vectors.
bool reducible(const Matrix& gram, const Vec& x, const std::vector<Vec>& candidates);

// Reducibility of v inside the complement of sigma in Z^{n+1}, by exhaustive search of
// all y with entries bounded by sqrt(|v|).
bool reducible_in_complement(const Vec& sigma, const Vec& v);

// Gram matrix of explicit frame vectors.
Matrix gram_of(const std::vector<Vec>& vectors);

// Least positive residue of a^{-1} mod m, by trial.
std::int64_t inverse_by_trial(std::int64_t a, std::int64_t m);

}  // namespace oracle
