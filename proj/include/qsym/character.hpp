#pragma once

#include <map>
#include <optional>

#include "qsym/laurent.hpp"
#include "qsym/satake.hpp"

namespace qsym {

/// Which lattice the exponents of a CharacterElement live in.
/// ambient: tau(lambda), lambda in P(pi), fundamental coordinates.
/// restricted: z^gamma, gamma in P(Sigma), eta-coordinates.
/// torus: tau(2 gamma) in C[A], keyed by gamma in eta-coordinates.
enum class Lattice { ambient, restricted, torus };

inline const char* to_string(Lattice l) {
  switch (l) {
    case Lattice::ambient: return "ambient";
    case Lattice::restricted: return "restricted";
    case Lattice::torus: return "torus";
  }
  return "?";
}

inline Lattice lattice_from_string(const std::string& s) {
  if (s == "ambient") return Lattice::ambient;
  if (s == "restricted") return Lattice::restricted;
  if (s == "torus") return Lattice::torus;
  throw std::invalid_argument("unknown lattice tag '" + s + "'");
}

class LatticeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInvariant : public std::runtime_error {
 public:
  NotInvariant(int reflection, const std::string& what) : std::runtime_error(what), reflection_(reflection) {}
  int reflection() const { return reflection_; }

 private:
  int reflection_;
};

inline nlohmann::json vec_json(const Vec& v) { return nlohmann::json(v); }

/// Finite sum of lattice exponentials with Laurent coefficients.
class CharacterElement {
 public:
  explicit CharacterElement(Lattice l = Lattice::torus) : lattice_(l) {}

  static CharacterElement monomial(Lattice l, const Vec& key, const LaurentScalar& c = LaurentScalar(1)) {
    CharacterElement e(l);
    e.add_term(key, c);
    return e;
  }
  /// The unit element tau(0) of a lattice of the given rank.
  static CharacterElement one(Lattice l, int rank) { return monomial(l, Vec(rank, 0)); }

  Lattice lattice() const { return lattice_; }
  const std::map<Vec, LaurentScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  LaurentScalar coefficient(const Vec& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? LaurentScalar() : it->second;
  }

  void add_term(const Vec& key, const LaurentScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  CharacterElement& operator+=(const CharacterElement& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  CharacterElement& operator-=(const CharacterElement& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend CharacterElement operator+(CharacterElement a, const CharacterElement& b) { return a += b; }
  friend CharacterElement operator-(CharacterElement a, const CharacterElement& b) { return a -= b; }

  friend CharacterElement operator*(const CharacterElement& a, const CharacterElement& b) {
    a.check(b);
    CharacterElement r(a.lattice_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  CharacterElement& operator*=(const CharacterElement& o) { return *this = *this * o; }

  friend CharacterElement operator*(const LaurentScalar& s, CharacterElement a) {
    if (s.is_zero()) return CharacterElement(a.lattice_);
    for (auto& [k, c] : a.terms_) c *= s;
    return a;
  }

  bool operator==(const CharacterElement& o) const { return lattice_ == o.lattice_ && terms_ == o.terms_; }
  bool operator!=(const CharacterElement& o) const { return !(*this == o); }

  /// Coefficients evaluated at q = q0.
  std::map<Vec, Rational> specialize(const Rational& q0) const {
    std::map<Vec, Rational> out;
    for (const auto& [k, c] : terms_) {
      Rational v = c.specialize(q0);
      if (v != 0) out.emplace(k, v);
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : terms_) terms.push_back({{"exponent", vec_json(k)}, {"coefficient", c.to_json()}});
    return {{"lattice", to_string(lattice_)}, {"terms", terms}};
  }

  static CharacterElement from_json(const nlohmann::json& j) {
    CharacterElement e(lattice_from_string(j.at("lattice").get<std::string>()));
    for (const auto& t : j.at("terms"))
      e.add_term(t.at("exponent").get<Vec>(), LaurentScalar::from_json(t.at("coefficient")));
    return e;
  }

 private:
  Lattice lattice_;
  std::map<Vec, LaurentScalar> terms_;

  void check(const CharacterElement& o) const {
    if (lattice_ != o.lattice_)
      throw LatticeMismatch(std::string("cannot combine ") + to_string(lattice_) + " and " + to_string(o.lattice_) +
                            " elements");
  }
};

/// Coefficients c_gamma of sum_gamma c_gamma * basis(gamma), gamma dominant.
struct OrbitExpansion {
  Lattice lattice = Lattice::torus;
  std::map<Vec, LaurentScalar> coeffs;

  LaurentScalar coefficient(const Vec& key) const {
    auto it = coeffs.find(key);
    return it == coeffs.end() ? LaurentScalar() : it->second;
  }

  std::map<Vec, Rational> specialize(const Rational& q0) const {
    std::map<Vec, Rational> out;
    for (const auto& [k, c] : coeffs) {
      Rational v = c.specialize(q0);
      if (v != 0) out.emplace(k, v);
    }
    return out;
  }

  bool operator==(const OrbitExpansion& o) const { return lattice == o.lattice && coeffs == o.coeffs; }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : coeffs) terms.push_back({{"exponent", vec_json(k)}, {"coefficient", c.to_json()}});
    return {{"lattice", to_string(lattice)}, {"terms", terms}};
  }

  static OrbitExpansion from_json(const nlohmann::json& j) {
    OrbitExpansion e;
    e.lattice = lattice_from_string(j.at("lattice").get<std::string>());
    for (const auto& t : j.at("terms")) {
      LaurentScalar c = LaurentScalar::from_json(t.at("coefficient"));
      if (!c.is_zero()) e.coeffs[t.at("exponent").get<Vec>()] = c;
    }
    return e;
  }
};

/// Orbit-sum basis of the dotted-invariant subalgebra: basis(mu) = sum over the
/// orbit of mu of stab * q^{weight(gamma)} e^gamma, with weight a linear functional.
class OrbitBasis {
 public:
  OrbitBasis(RootSystem weyl, Lattice lattice, RVec weight, bool stabilizer_weighted)
      : weyl_(std::move(weyl)), lattice_(lattice), weight_(std::move(weight)), stab_weighted_(stabilizer_weighted) {}

  /// m(lambda) = sum over W_Theta lambda of z^gamma.
  static OrbitBasis m(const SymmetricPair& pair) {
    return {pair.restricted(), Lattice::restricted, RVec(pair.restricted_rank(), Rational(0)), false};
  }
  static OrbitBasis m(const RootSystem& rs) { return {rs, Lattice::restricted, RVec(rs.rank(), Rational(0)), false}; }

  /// m^(2 mu) = sum over W_Theta mu of q^{(rho, 2 gamma)} tau(2 gamma), ambient rho.
  static OrbitBasis hat_m(const SymmetricPair& pair) {
    RVec w(pair.restricted_rank());
    for (int j = 0; j < pair.restricted_rank(); ++j) w[j] = 2 * pair.rho_pairing(unit_vec(pair.restricted_rank(), j));
    return {pair.restricted(), Lattice::torus, std::move(w), false};
  }
  /// Same shape over an abstract root system, using its own rho.
  static OrbitBasis hat_m(const RootSystem& rs) {
    RVec w(rs.rank(), Rational(0));
    for (int j = 0; j < rs.rank(); ++j)
      for (int i = 0; i < rs.rank(); ++i) w[j] += 2 * rs.fundamental_gram()[i][j];
    return {rs, Lattice::torus, std::move(w), false};
  }

  /// tau^(lambda) = sum over w in W of q^{(rho, w lambda)} tau(w lambda).
  static OrbitBasis hat_tau(const RootSystem& rs) {
    RVec w(rs.rank(), Rational(0));
    for (int j = 0; j < rs.rank(); ++j)
      for (int i = 0; i < rs.rank(); ++i) w[j] += rs.fundamental_gram()[i][j];
    return {rs, Lattice::ambient, std::move(w), true};
  }

  const RootSystem& weyl() const { return weyl_; }
  Lattice lattice() const { return lattice_; }
  int rank() const { return weyl_.rank(); }

  Rational weight(const Vec& v) const {
    Rational s = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) s += weight_[j] * Rational(v[j]);
    return s;
  }

  /// Coefficient of basis(mu) at its own key mu.
  LaurentScalar leading(const Vec& mu) const {
    const Rational stab = stab_weighted_ ? Rational(weyl_.stabilizer_order(mu)) : Rational(1);
    return LaurentScalar::monomial(stab, weight(mu));
  }

  CharacterElement element(const Vec& mu, std::size_t max_orbit = 2000000) const {
    if (!RootSystem::is_dominant(mu)) throw MathError("orbit basis element needs a dominant weight");
    CharacterElement e(lattice_);
    const Rational stab = stab_weighted_ ? Rational(weyl_.stabilizer_order(mu)) : Rational(1);
    for (const auto& g : weyl_.orbit(mu, max_orbit)) e.add_term(g, LaurentScalar::monomial(stab, weight(g)));
    return e;
  }

  CharacterElement dotted_act(const std::vector<int>& word, const CharacterElement& x) const {
    check(x);
    CharacterElement out(lattice_);
    for (const auto& [k, c] : x.terms()) {
      Vec img = weyl_.apply_word(k, word);
      out.add_term(img, c.shifted(weight(img) - weight(k)));
    }
    return out;
  }

  /// First simple reflection (by index) whose dotted action moves x, if any.
  std::optional<int> invariance_failure(const CharacterElement& x) const {
    for (int i = 0; i < rank(); ++i)
      if (dotted_act({i}, x) != x) return i;
    return std::nullopt;
  }
  bool is_invariant(const CharacterElement& x) const { return !invariance_failure(x); }

  /// Expansion in the orbit basis by repeated subtraction at the highest dominant key.
  OrbitExpansion expand(const CharacterElement& x) const {
    check(x);
    if (auto bad = invariance_failure(x))
      throw NotInvariant(*bad, "element is not invariant under the dotted action of reflection " +
                                   std::to_string(*bad + 1));
    OrbitExpansion out;
    out.lattice = lattice_;
    CharacterElement rest = x;
    while (!rest.is_zero()) {
      const Vec* pivot = nullptr;
      Rational best_h;
      for (const auto& [k, c] : rest.terms()) {
        if (!RootSystem::is_dominant(k)) continue;
        const Rational h = weyl_.height(k);
        if (!pivot || h > best_h || (h == best_h && k > *pivot)) {
          pivot = &k;
          best_h = h;
        }
      }
      if (!pivot) throw NotInvariant(-1, "remainder has no dominant exponent");
      const Vec mu = *pivot;
      const LaurentScalar lead = leading(mu);
      const Rational stab = lead.raw_terms().begin()->second;
      const LaurentScalar c = rest.coefficient(mu).shifted(-weight(mu)) * LaurentScalar(Rational(1) / stab);
      out.coeffs[mu] = c;
      rest -= c * element(mu);
    }
    return out;
  }

  CharacterElement rebuild(const OrbitExpansion& e) const {
    if (e.lattice != lattice_) throw LatticeMismatch("expansion lattice does not match the basis");
    CharacterElement out(lattice_);
    for (const auto& [k, c] : e.coeffs) out += c * element(k);
    return out;
  }

  /// Terms whose exponents are minimal for the dominance order over the support.
  CharacterElement tip(const CharacterElement& x) const {
    check(x);
    if (x.is_zero()) throw MathError("tip of the zero element");
    CharacterElement out(lattice_);
    for (const auto& [k, c] : x.terms()) {
      bool minimal = true;
      for (const auto& [o, oc] : x.terms())
        if (o != k && weyl_.dominance_leq(o, k)) {
          minimal = false;
          break;
        }
      if (minimal) out.add_term(k, c);
    }
    return out;
  }

 private:
  RootSystem weyl_;
  Lattice lattice_;
  RVec weight_;
  bool stab_weighted_;

  void check(const CharacterElement& x) const {
    if (x.lattice() != lattice_)
      throw LatticeMismatch(std::string("element lives in the ") + to_string(x.lattice()) + " lattice, basis in the " +
                            to_string(lattice_) + " lattice");
  }
};

/// The isomorphism C[A]^{W.} -> C[P(Sigma)]^W: c tau(2 gamma) -> c q^{-(rho, 2 gamma)} z^gamma.
inline CharacterElement hat_to_plain(const OrbitBasis& hat, const CharacterElement& x) {
  if (x.lattice() != Lattice::torus || hat.lattice() != Lattice::torus)
    throw LatticeMismatch("hat_to_plain expects torus elements");
  CharacterElement out(Lattice::restricted);
  for (const auto& [k, c] : x.terms()) out.add_term(k, c.shifted(-hat.weight(k)));
  return out;
}

}  // namespace qsym
