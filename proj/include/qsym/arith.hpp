#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsym {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Integral lattice point (coordinates in a fixed basis).
using Vec = std::vector<long>;
using RVec = std::vector<Rational>;
using RMatrix = std::vector<RVec>;
using IMatrix = std::vector<Vec>;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw MathError("zero denominator");
  Rational r{BigInt(num), BigInt(den)};
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_ll(const BigInt& z) {
  if (!z.fits_slong_p()) throw MathError("integer overflow converting " + z.get_str());
  return z.get_si();
}

inline long to_ll(const Rational& r) {
  if (!is_integer(r)) throw MathError("expected an integer, got " + r.get_str());
  return to_ll(r.get_num());
}

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw MathError("malformed rational '" + s + "'");
  r.canonicalize();
  return r;
}

inline RVec to_rvec(const Vec& v) {
  RVec out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(rat(x));
  return out;
}

inline Vec to_vec(const RVec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_ll(x));
  return out;
}

inline bool all_integer(const RVec& v) {
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline Vec operator-(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline Vec scaled(Vec a, long k) {
  for (auto& x : a) x *= k;
  return a;
}

inline bool is_zero(const Vec& v) {
  for (long x : v)
    if (x != 0) return false;
  return true;
}

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

inline RMatrix identity_matrix(std::size_t n) {
  RMatrix m(n, RVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RVec mat_vec(const RMatrix& m, const RVec& v) {
  RVec out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline RMatrix mat_mul(const RMatrix& a, const RMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RMatrix out(n, RVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline RMatrix transpose(const RMatrix& a) {
  if (a.empty()) return {};
  RMatrix t(a[0].size(), RVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
inline RMatrix inverse(RMatrix a) {
  const std::size_t n = a.size();
  RMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw MathError("singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline long lcm_ll(long a, long b) { return std::lcm(a, b); }

inline BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Integer combination x with sum_i x_i * rows[i] == target, or empty when none exists.
/// Works by a Hermite-style row reduction that tracks the unimodular transform.
inline std::vector<BigInt> integer_combination(const IMatrix& rows, const Vec& target) {
  const std::size_t m = rows.size();
  const std::size_t n = target.size();
  std::vector<std::vector<BigInt>> h(m, std::vector<BigInt>(n));
  std::vector<std::vector<BigInt>> u(m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) h[i][j] = static_cast<long>(rows[i][j]);
    u[i][i] = 1;
  }
  auto row_sub = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t j = 0; j < n; ++j) h[dst][j] -= f * h[src][j];
    for (std::size_t j = 0; j < m; ++j) u[dst][j] -= f * u[src][j];
  };
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    // Euclid on column entries below r until at most one nonzero remains.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h[i][col] != 0 && (best == m || abs(h[i][col]) < abs(h[best][col]))) best = i;
      if (best == m) break;
      std::swap(h[best], h[r]);
      std::swap(u[best], u[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h[i][col] == 0) continue;
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), h[i][col].get_mpz_t(), h[r][col].get_mpz_t());
        row_sub(i, r, f);
        if (h[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (h[r][col] == 0) continue;
    pivot_cols.push_back(col);
    ++r;
  }
  // Solve y * H = target by forward substitution over the echelon rows.
  std::vector<BigInt> rem(n);
  for (std::size_t j = 0; j < n; ++j) rem[j] = static_cast<long>(target[j]);
  std::vector<BigInt> y(m, 0);
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
    const std::size_t col = pivot_cols[k];
    if (rem[col] == 0) continue;
    BigInt q, rmd;
    mpz_tdiv_qr(q.get_mpz_t(), rmd.get_mpz_t(), rem[col].get_mpz_t(), h[k][col].get_mpz_t());
    if (rmd != 0) return {};
    y[k] = q;
    for (std::size_t j = 0; j < n; ++j) rem[j] -= q * h[k][j];
  }
  for (const auto& v : rem)
    if (v != 0) return {};
  std::vector<BigInt> x(m, 0);
  for (std::size_t k = 0; k < m; ++k)
    if (y[k] != 0)
      for (std::size_t j = 0; j < m; ++j) x[j] += y[k] * u[k][j];
  return x;
}

}  // namespace qsym
