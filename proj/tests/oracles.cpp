#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace oracle {

std::optional<Rational> minus_fraction(const std::vector<std::int64_t>& terms) {
  if (terms.empty()) return std::nullopt;
  Rational value = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    if (value == 0) return std::nullopt;
    value = Rational(terms[i]) - 1 / value;
  }
  return value;
}

BigInt determinant(const Matrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  BigInt total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    BigInt term = BigInt(m[0][c]) * determinant(minor);
    total += (c % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

BigInt determinant_bareiss(const Matrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[r], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool makes_change(const Vec& v) {
  if (v.empty()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) return false;
    if (i > 0 && v[i] < v[i - 1]) return false;
  }
  std::int64_t total = std::accumulate(v.begin(), v.end(), std::int64_t{0});
  std::vector<bool> reach(static_cast<std::size_t>(total) + 1, false);
  reach[0] = true;
  for (auto x : v)
    for (std::int64_t s = total; s >= x; --s)
      if (reach[static_cast<std::size_t>(s - x)]) reach[static_cast<std::size_t>(s)] = true;
  for (bool r : reach)
    if (!r) return false;
  return true;
}

std::int64_t dot(const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t pair(const Matrix& gram, const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * gram[i][j] * b[j];
  return s;
}

namespace {

// Diagonal of the inverse of a positive definite matrix, by rational Gauss-Jordan.
std::vector<Rational> inverse_diagonal(const Matrix& gram) {
  std::size_t n = gram.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("singular Gram matrix");
    std::swap(a[piv], a[c]);
    Rational d = a[c][c];
    for (auto& x : a[c]) x /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(a[i][n + i]);
  return out;
}

}  // namespace

std::vector<Vec> short_vectors(const Matrix& gram, std::int64_t bound) {
  std::size_t n = gram.size();
  auto diag = inverse_diagonal(gram);
  Vec box(n);
  for (std::size_t i = 0; i < n; ++i) {
    double limit = std::sqrt(static_cast<double>(bound) * static_cast<double>(diag[i])) + 1e-9;
    box[i] = static_cast<std::int64_t>(std::floor(limit));
  }
  std::vector<Vec> out;
  Vec y(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      bool zero = true;
      for (auto c : y) zero = zero && c == 0;
      if (!zero && pair(gram, y, y) <= bound) out.push_back(y);
      return;
    }
    for (std::int64_t c = -box[i]; c <= box[i]; ++c) {
      y[i] = c;
      rec(i + 1);
    }
    y[i] = 0;
  };
  rec(0);
  return out;
}

bool reducible(const Matrix& gram, const Vec& x, const std::vector<Vec>& candidates) {
  std::int64_t nx = pair(gram, x, x);
  for (const auto& y : candidates) {
    if (y == x) continue;
    std::int64_t ny = pair(gram, y, y);
    if (ny >= nx) continue;
    if (pair(gram, y, x) - ny >= 0) return true;
  }
  return false;
}

bool reducible_in_complement(const Vec& sigma, const Vec& v) {
  std::int64_t nv = dot(v, v);
  auto r = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(nv)) + 1e-9));
  std::size_t n = sigma.size();
  Vec y(n, 0);
  std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t norm) -> bool {
    if (norm > nv) return false;
    if (i == n) {
      if (norm == 0 || y == v || dot(y, sigma) != 0) return false;
      Vec z(n);
      for (std::size_t k = 0; k < n; ++k) z[k] = v[k] - y[k];
      return dot(y, z) >= 0;
    }
    for (std::int64_t c = -r; c <= r; ++c) {
      y[i] = c;
      if (rec(i + 1, norm + c * c)) return true;
    }
    y[i] = 0;
    return false;
  };
  return rec(0, 0);
}

Matrix gram_of(const std::vector<Vec>& vectors) {
  Matrix g(vectors.size(), Vec(vectors.size(), 0));
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j) g[i][j] = dot(vectors[i], vectors[j]);
  return g;
}

std::int64_t inverse_by_trial(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r = ((a % m) + m) % m;
  for (std::int64_t x = 1; x < m; ++x)
    if ((r * x) % m == 1) return x;
  throw std::invalid_argument("no inverse");
}

}  // namespace oracle
