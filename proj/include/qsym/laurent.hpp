#pragma once

#include <map>
#include <nlohmann/json.hpp>

#include "qsym/arith.hpp"

namespace qsym {

/// Laurent polynomial in q with rational exponents: sum c_k q^{k/L}.
/// Kept canonical (no zero coefficients, L minimal) so equality is structural.
class LaurentScalar {
 public:
  LaurentScalar() = default;
  LaurentScalar(const Rational& c) { add_term(c, Rational(0)); }
  LaurentScalar(long c) : LaurentScalar(Rational(c)) {}

  static LaurentScalar monomial(const Rational& coeff, const Rational& exponent) {
    LaurentScalar s;
    s.add_term(coeff, exponent);
    return s;
  }
  /// q^{exponent}
  static LaurentScalar q_power(const Rational& exponent) { return monomial(Rational(1), exponent); }

  long denominator() const { return den_; }
  /// Terms keyed by numerator k of the exponent k/L.
  const std::map<long, Rational>& raw_terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::vector<std::pair<Rational, Rational>> terms() const {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& [k, c] : terms_) out.emplace_back(rat(k, den_), c);
    return out;
  }

  Rational coefficient(const Rational& exponent) const {
    const Rational scaled = exponent * den_;
    if (!is_integer(scaled)) return 0;
    auto it = terms_.find(to_ll(scaled));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Rational& coeff, const Rational& exponent) {
    if (coeff == 0) return;
    const long d = to_ll(BigInt(exponent.get_den()));
    if (den_ % d != 0) rescale(std::lcm(den_, d));
    const long k = to_ll(Rational(exponent * den_));
    auto [it, inserted] = terms_.try_emplace(k, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
    normalize();
  }

  LaurentScalar& operator+=(const LaurentScalar& o) { return accumulate(o, 1); }
  LaurentScalar& operator-=(const LaurentScalar& o) { return accumulate(o, -1); }
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  LaurentScalar operator-() const {
    LaurentScalar r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }

  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
    LaurentScalar r;
    if (a.is_zero() || b.is_zero()) return r;
    r.den_ = std::lcm(a.den_, b.den_);
    const long fa = r.den_ / a.den_, fb = r.den_ / b.den_;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        auto [it, inserted] = r.terms_.try_emplace(ka * fa + kb * fb, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    r.drop_zeros();
    r.normalize();
    return r;
  }
  LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }

  /// Multiply by q^{exponent}.
  LaurentScalar shifted(const Rational& exponent) const { return *this * q_power(exponent); }

  bool operator==(const LaurentScalar& o) const { return den_ == o.den_ && terms_ == o.terms_; }
  bool operator!=(const LaurentScalar& o) const { return !(*this == o); }

  /// Sum of coefficients, i.e. the value at q = 1.
  Rational at_one() const {
    Rational s = 0;
    for (const auto& [k, c] : terms_) s += c;
    return s;
  }

  bool nonnegative_coefficients() const {
    for (const auto& [k, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  /// Exact value at a rational q0 != 0; throws if some q0^{k/L} is irrational.
  Rational specialize(const Rational& q0) const {
    if (q0 == 0) throw MathError("cannot specialize at q = 0");
    Rational s = 0;
    for (const auto& [k, c] : terms_) s += c * rational_power(q0, rat(k, den_));
    return s;
  }

  static Rational rational_power(const Rational& base, const Rational& e) {
    const long root = to_ll(BigInt(e.get_den()));
    BigInt num = base.get_num(), den = base.get_den();
    if (root > 1) {
      if (num < 0 && root % 2 == 0) throw MathError("even root of a negative specialization value");
      BigInt rn, rd;
      const bool neg = num < 0;
      BigInt an = abs(num);
      const int ok_n = mpz_root(rn.get_mpz_t(), an.get_mpz_t(), static_cast<unsigned long>(root));
      const int ok_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(root));
      if (!ok_n || !ok_d)
        throw MathError("q^" + e.get_str() + " is irrational at q = " + base.get_str());
      num = neg ? BigInt(-rn) : rn;
      den = rd;
    }
    long p = to_ll(BigInt(e.get_num()));
    if (p < 0) {
      std::swap(num, den);
      p = -p;
      if (den < 0) {
        num = -num;
        den = -den;
      }
    }
    BigInt pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(p));
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(p));
    Rational r{pn, pd};
    r.canonicalize();
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Rational e = rat(it->first, den_);
      Rational c = it->second;
      if (!s.empty()) {
        s += c < 0 ? " - " : " + ";
        c = abs(c);
      } else if (c < 0) {
        s += "-";
        c = abs(c);
      }
      const bool unit = c == 1;
      if (e == 0) {
        s += c.get_str();
        continue;
      }
      if (!unit) s += c.get_str() + "*";
      s += "q";
      if (e != 1) s += "^" + (is_integer(e) ? e.get_str() : "(" + e.get_str() + ")");
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : terms_) terms.push_back({rat(k, den_).get_str(), c.get_str()});
    return terms;
  }

  static LaurentScalar from_json(const nlohmann::json& j) {
    LaurentScalar s;
    for (const auto& t : j) s.add_term(parse_rational(t.at(1).get<std::string>()), parse_rational(t.at(0).get<std::string>()));
    return s;
  }

 private:
  long den_ = 1;
  std::map<long, Rational> terms_;

  LaurentScalar& accumulate(const LaurentScalar& o, int sign) {
    if (o.is_zero()) return *this;
    const long d = std::lcm(den_, o.den_);
    if (d != den_) rescale(d);
    const long f = den_ / o.den_;
    for (const auto& [k, c] : o.terms_) {
      auto [it, inserted] = terms_.try_emplace(k * f, sign > 0 ? c : Rational(-c));
      if (!inserted) {
        if (sign > 0) it->second += c;
        else it->second -= c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    normalize();
    return *this;
  }

  void rescale(long d) {
    const long f = d / den_;
    std::map<long, Rational> t;
    for (auto& [k, c] : terms_) t.emplace(k * f, std::move(c));
    terms_ = std::move(t);
    den_ = d;
  }

  void drop_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }

  void normalize() {
    long g = den_;
    for (const auto& [k, c] : terms_) g = std::gcd(g, k);
    if (terms_.empty()) g = den_;
    if (g > 1) {
      std::map<long, Rational> t;
      for (auto& [k, c] : terms_) t.emplace(k / g, std::move(c));
      terms_ = std::move(t);
      den_ /= g;
    }
  }
};

}  // namespace qsym
