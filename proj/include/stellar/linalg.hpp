#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace stellar {

// All coordinates live in small integer lattices, so exact linear algebra
// over int64 is sufficient: entries stay tiny, matrices are at most 9x9.

constexpr int kMaxDim = 9;

using Vec = std::array<std::int64_t, kMaxDim>;

inline Vec zero_vec() { return Vec{}; }

inline Vec add(const Vec& a, const Vec& b) {
  Vec r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(const Vec& a, std::int64_t c) {
  Vec r{};
  for (int i = 0; i < kMaxDim; ++i) r[i] = c * a[i];
  return r;
}

inline Vec negate(const Vec& a) { return scale(a, -1); }

inline std::int64_t dot(const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (int i = 0; i < kMaxDim; ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const Vec& a) {
  for (int i = 0; i < kMaxDim; ++i)
    if (a[i] != 0) return false;
  return true;
}

struct VecHash {
  std::size_t operator()(const Vec& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < kMaxDim; ++i) {
      h ^= static_cast<std::uint64_t>(v[i]);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Rank of a small integer matrix by fraction-free elimination.
inline int rank_of(std::vector<Vec> rows, int dim) {
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] == 0) continue;
      std::int64_t a = rows[rank][col], b = rows[r][col];
      std::int64_t g = std::gcd(a, b);
      std::int64_t ma = b / g, mb = a / g;
      for (int c = 0; c < dim; ++c) rows[r][c] = rows[r][c] * mb - rows[rank][c] * ma;
    }
    ++rank;
  }
  return rank;
}

// True if v lies in the span of the given rows.
inline bool in_span(const std::vector<Vec>& rows, const Vec& v, int dim) {
  int r0 = rank_of(rows, dim);
  auto aug = rows;
  aug.push_back(v);
  return rank_of(aug, dim) == r0;
}

// Determinant of an n x n integer matrix (Bareiss).
inline std::int64_t det_int(std::array<std::array<std::int64_t, kMaxDim>, kMaxDim> m, int n) {
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) { piv = r; break; }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Solve M x = b for an invertible n x n integer matrix by Cramer's rule.
// Returns numerators plus a common denominator (the determinant, sign-fixed).
struct RationalSolution {
  std::array<std::int64_t, kMaxDim> num{};
  std::int64_t den = 1;
};

inline RationalSolution solve_cramer(
    const std::array<std::array<std::int64_t, kMaxDim>, kMaxDim>& m,
    const std::array<std::int64_t, kMaxDim>& b, int n) {
  std::int64_t d = det_int(m, n);
  if (d == 0) throw std::domain_error("solve_cramer: singular matrix");
  RationalSolution s;
  s.den = d;
  for (int j = 0; j < n; ++j) {
    auto mj = m;
    for (int i = 0; i < n; ++i) mj[i][j] = b[i];
    s.num[j] = det_int(mj, n);
  }
  if (s.den < 0) {
    s.den = -s.den;
    for (int j = 0; j < n; ++j) s.num[j] = -s.num[j];
  }
  std::int64_t g = s.den;
  for (int j = 0; j < n; ++j) g = std::gcd(g, s.num[j]);
  if (g > 1) {
    s.den /= g;
    for (int j = 0; j < n; ++j) s.num[j] /= g;
  }
  return s;
}

// Integer coefficients of v over an independent set of basis vectors,
// via the Gram matrix.  Throws if v is not an integer combination.
inline std::array<std::int64_t, kMaxDim> integer_coords(
    const std::vector<Vec>& basis, const Vec& v, int dim) {
  int n = static_cast<int>(basis.size());
  std::array<std::array<std::int64_t, kMaxDim>, kMaxDim> g{};
  std::array<std::int64_t, kMaxDim> rhs{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], v);
  }
  auto s = solve_cramer(g, rhs, n);
  std::array<std::int64_t, kMaxDim> c{};
  Vec check{};
  for (int j = 0; j < n; ++j) {
    if (s.num[j] % s.den != 0)
      throw std::domain_error("integer_coords: non-integral coefficient");
    c[j] = s.num[j] / s.den;
    check = add(check, scale(basis[j], c[j]));
  }
  if (!(check == v)) throw std::domain_error("integer_coords: not in span");
  (void)dim;
  return c;
}

}  // namespace stellar
