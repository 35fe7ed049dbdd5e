#pragma once

#include <optional>

#include "qsym/laurent.hpp"

namespace qsym {

/// Dense univariate polynomial over Q, coefficients from degree 0 upward.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {
    if (c != 0) c_.push_back(c);
  }
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

  /// Quotient and remainder.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw MathError("polynomial division by zero");
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<Rational> rem = c_;
    std::vector<Rational> quo(c_.size() - d.c_.size() + 1, Rational(0));
    const Rational inv = 1 / d.lead();
    for (long k = static_cast<long>(quo.size()) - 1; k >= 0; --k) {
      const Rational f = rem[k + d.degree()] * inv;
      if (f == 0) continue;
      quo[k] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Division that must leave no remainder.
  Polynomial exact_div(const Polynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw MathError("inexact polynomial division");
    return q;
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    Polynomial r = *this;
    const Rational inv = 1 / lead();
    for (auto& x : r.c_) x *= inv;
    return r;
  }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Lowest degree with a nonzero coefficient.
  long valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return static_cast<long>(i);
    return 0;
  }

  /// Reads x as q^{1/den}, shifted down by x^shift.
  LaurentScalar to_laurent(long den, long shift = 0) const {
    LaurentScalar s;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) s.add_term(c_[i], rat(static_cast<long>(i) - shift, den));
    return s;
  }

 private:
  std::vector<Rational> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

/// Writes a Laurent scalar as x^{-shift} * P(x) with x = q^{1/den}; den must be a
/// multiple of the scalar's own denominator.
inline Polynomial laurent_to_polynomial(const LaurentScalar& s, long den, long shift) {
  std::vector<Rational> v;
  for (const auto& [k, c] : s.raw_terms()) {
    const long e = k * (den / s.denominator()) + shift;
    if (e < 0) throw MathError("shift too small for polynomial conversion");
    if (static_cast<long>(v.size()) <= e) v.resize(e + 1, Rational(0));
    v[e] += c;
  }
  return Polynomial(std::move(v));
}

/// Solution of A c = b over Q(x): c_k = numerators[k] / denominator, free unknowns set to zero.
struct PolySolution {
  Polynomial denominator;
  std::vector<Polynomial> numerators;
};

/// Fraction-free Gauss-Jordan elimination on the augmented matrix [A | b] over Q[x].
/// Returns nullopt when the system is inconsistent.
inline std::optional<PolySolution> solve_fraction_free(std::vector<std::vector<Polynomial>> a,
                                                      std::vector<Polynomial> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  Polynomial prev(Rational(1));
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    // Prefer the pivot of lowest degree to keep intermediate degrees small.
    for (std::size_t i = r; i < rows; ++i)
      if (!a[i][c].is_zero() && (a[p][c].is_zero() || a[i][c].degree() < a[p][c].degree())) p = i;
    if (a[p][c].is_zero()) continue;
    std::swap(a[p], a[r]);
    const Polynomial piv = a[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Polynomial f = a[i][c];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (j == c) continue;
        a[i][j] = (piv * a[i][j] - f * a[r][j]).exact_div(prev);
      }
      a[i][c] = Polynomial();
    }
    pivot_col.push_back(c);
    prev = piv;
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!a[i][cols].is_zero()) return std::nullopt;
  PolySolution sol;
  sol.numerators.assign(cols, Polynomial());
  // c_k = a[k][cols] / pivot_k, brought to a common denominator.
  sol.denominator = Polynomial(Rational(1));
  for (std::size_t k = 0; k < r; ++k) {
    const Polynomial& p = a[k][pivot_col[k]];
    sol.denominator = (sol.denominator * p).exact_div(gcd(sol.denominator, p));
  }
  for (std::size_t k = 0; k < r; ++k)
    sol.numerators[pivot_col[k]] = a[k][cols] * sol.denominator.exact_div(a[k][pivot_col[k]]);
  Polynomial g = sol.denominator;
  for (const auto& n : sol.numerators)
    if (!n.is_zero()) g = gcd(g, n);
  if (!g.is_zero()) {
    sol.denominator = sol.denominator.exact_div(g);
    for (auto& n : sol.numerators)
      if (!n.is_zero()) n = n.exact_div(g);
  }
  return sol;
}

}  // namespace qsym
