#pragma once

#include "qsym/character.hpp"
#include "qsym/polynomial.hpp"

namespace qsym {

struct NamedElement {
  std::string name;
  CharacterElement element;
};

enum class MembershipStatus { member, non_member_up_to_bound, inconclusive };

inline const char* to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::member: return "member";
    case MembershipStatus::non_member_up_to_bound: return "non_member_up_to_bound";
    case MembershipStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

/// denominator * target = sum_k numerator_k * product(monomial_k).
struct Certificate {
  std::string target;
  LaurentScalar denominator;
  std::vector<std::pair<std::vector<std::string>, LaurentScalar>> terms;
  bool residual_zero = false;

  nlohmann::json to_json() const {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& [mono, c] : terms) t.push_back({{"monomial", mono}, {"numerator", c.to_json()}});
    return {{"target", target}, {"denominator", denominator.to_json()}, {"terms", t}, {"residual_zero", residual_zero}};
  }
};

struct MembershipResult {
  MembershipStatus status = MembershipStatus::inconclusive;
  std::optional<Certificate> certificate;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::string note;
};

struct MembershipLimits {
  std::size_t max_columns = 400;
  std::size_t max_rows = 400;
};

namespace detail {

/// Unique dominance-maximal key of an expansion.
inline std::optional<Vec> expansion_top(const RootSystem& rs, const OrbitExpansion& e) {
  std::vector<Vec> tops;
  for (const auto& [k, c] : e.coeffs) {
    bool maximal = true;
    for (const auto& [o, oc] : e.coeffs)
      if (o != k && rs.dominance_leq(k, o)) {
        maximal = false;
        break;
      }
    if (maximal) tops.push_back(k);
  }
  if (tops.size() != 1) return std::nullopt;
  return tops.front();
}

inline long common_denominator(const std::vector<const LaurentScalar*>& xs) {
  long l = 1;
  for (const auto* x : xs) l = std::lcm(l, x->denominator());
  return l;
}

inline long min_exponent(const LaurentScalar& s, long den) {
  long m = 0;
  bool first = true;
  for (const auto& [k, c] : s.raw_terms()) {
    const long e = k * (den / s.denominator());
    if (first || e < m) m = e;
    first = false;
  }
  return m;
}

}  // namespace detail

/// Decides whether `target` is a Q(q)-combination of monomials (products of at most
/// `degree_bound` generators) whose leading exponents stay below `ceiling`.
inline MembershipResult membership_bounded(const OrbitBasis& basis, const NamedElement& target,
                                           const std::vector<NamedElement>& generators, int degree_bound,
                                           std::optional<Vec> ceiling = std::nullopt,
                                           const MembershipLimits& limits = {}) {
  const RootSystem& rs = basis.weyl();
  MembershipResult res;
  const OrbitExpansion texp = basis.expand(target.element);
  if (texp.coeffs.empty()) {
    res.status = MembershipStatus::member;
    res.certificate = Certificate{target.name, LaurentScalar(1), {}, true};
    return res;
  }
  if (!ceiling) {
    auto t = detail::expansion_top(rs, texp);
    if (!t) {
      res.note = "target has no unique leading exponent; pass a ceiling";
      return res;
    }
    ceiling = *t;
  }
  const Vec top = *ceiling;
  const Rational top_height = rs.height(top);

  std::vector<OrbitExpansion> gexp;
  std::vector<Vec> gtop;
  std::vector<std::size_t> usable;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    gexp.push_back(basis.expand(generators[g].element));
    auto t = detail::expansion_top(rs, gexp.back());
    gtop.push_back(t ? *t : Vec{});
    if (t && !is_zero(*t)) usable.push_back(g);
  }

  // Monomials as nondecreasing index lists; admitted when the summed leading exponent is <= ceiling.
  std::vector<std::vector<std::size_t>> monomials;
  std::vector<std::size_t> cur;
  Vec cur_top(rs.rank(), 0);
  bool overflow = false;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (overflow) return;
    if (rs.dominance_leq(cur_top, top)) {
      monomials.push_back(cur);
      if (monomials.size() > limits.max_columns) {
        overflow = true;
        return;
      }
    }
    if (static_cast<int>(cur.size()) == degree_bound) return;
    for (std::size_t u = from; u < usable.size(); ++u) {
      const Vec next = cur_top + gtop[usable[u]];
      if (rs.height(next) > top_height) continue;
      cur.push_back(usable[u]);
      const Vec saved = cur_top;
      cur_top = next;
      grow(u);
      cur_top = saved;
      cur.pop_back();
    }
  };
  grow(0);
  if (overflow) {
    res.note = "monomial count exceeds the column limit";
    return res;
  }

  // Column elements and their expansions.
  std::vector<CharacterElement> col_elem;
  std::vector<OrbitExpansion> col_exp;
  std::map<std::vector<std::size_t>, CharacterElement> cache;
  for (const auto& mono : monomials) {
    CharacterElement e = CharacterElement::one(basis.lattice(), rs.rank());
    std::vector<std::size_t> prefix;
    for (std::size_t g : mono) {
      prefix.push_back(g);
      auto it = cache.find(prefix);
      if (it != cache.end()) {
        e = it->second;
      } else {
        e *= generators[g].element;
        cache.emplace(prefix, e);
      }
    }
    col_exp.push_back(basis.expand(e));
    col_elem.push_back(std::move(e));
  }

  std::set<Vec> keyset;
  for (const auto& [k, c] : texp.coeffs) keyset.insert(k);
  for (const auto& e : col_exp)
    for (const auto& [k, c] : e.coeffs) keyset.insert(k);
  const std::vector<Vec> keys(keyset.begin(), keyset.end());
  res.columns = monomials.size();
  res.rows = keys.size();
  if (keys.size() > limits.max_rows) {
    res.note = "window exceeds the row limit";
    return res;
  }

  std::vector<const LaurentScalar*> all;
  std::vector<std::vector<LaurentScalar>> a(keys.size(), std::vector<LaurentScalar>(monomials.size()));
  std::vector<LaurentScalar> b(keys.size());
  for (std::size_t r = 0; r < keys.size(); ++r) {
    for (std::size_t c = 0; c < monomials.size(); ++c) a[r][c] = col_exp[c].coefficient(keys[r]);
    b[r] = texp.coefficient(keys[r]);
  }
  for (auto& row : a)
    for (auto& x : row) all.push_back(&x);
  for (auto& x : b) all.push_back(&x);
  const long den = detail::common_denominator(all);

  std::vector<std::vector<Polynomial>> pa(keys.size(), std::vector<Polynomial>(monomials.size()));
  std::vector<Polynomial> pb(keys.size());
  for (std::size_t r = 0; r < keys.size(); ++r) {
    long lo = 0;
    bool first = true;
    auto see = [&](const LaurentScalar& s) {
      if (s.is_zero()) return;
      const long m = detail::min_exponent(s, den);
      if (first || m < lo) lo = m;
      first = false;
    };
    for (const auto& x : a[r]) see(x);
    see(b[r]);
    for (std::size_t c = 0; c < monomials.size(); ++c) pa[r][c] = laurent_to_polynomial(a[r][c], den, -lo);
    pb[r] = laurent_to_polynomial(b[r], den, -lo);
  }

  auto sol = solve_fraction_free(std::move(pa), std::move(pb));
  if (!sol) {
    res.status = MembershipStatus::non_member_up_to_bound;
    res.note = "linear system inconsistent within degree " + std::to_string(degree_bound);
    return res;
  }

  Certificate cert;
  cert.target = target.name;
  cert.denominator = sol->denominator.to_laurent(den);
  CharacterElement residual = cert.denominator * target.element;
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    if (sol->numerators[c].is_zero()) continue;
    const LaurentScalar num = sol->numerators[c].to_laurent(den);
    std::vector<std::string> names;
    for (std::size_t g : monomials[c]) names.push_back(generators[g].name);
    cert.terms.emplace_back(names, num);
    residual -= num * col_elem[c];
  }
  cert.residual_zero = residual.is_zero();
  res.status = cert.residual_zero ? MembershipStatus::member : MembershipStatus::inconclusive;
  if (!cert.residual_zero) res.note = "solution failed re-evaluation";
  res.certificate = std::move(cert);
  return res;
}

/// Re-evaluates a certificate from the named generators; true when the residual vanishes.
inline bool verify_certificate(const Certificate& cert, const CharacterElement& target,
                               const std::vector<NamedElement>& generators) {
  CharacterElement residual = cert.denominator * target;
  const int rank = target.terms().empty() ? 0 : static_cast<int>(target.terms().begin()->first.size());
  for (const auto& [mono, num] : cert.terms) {
    CharacterElement e = CharacterElement::one(target.lattice(), rank);
    for (const auto& name : mono) {
      auto it = std::find_if(generators.begin(), generators.end(), [&](const auto& g) { return g.name == name; });
      if (it == generators.end()) return false;
      e *= it->element;
    }
    residual -= num * e;
  }
  return residual.is_zero() && !cert.denominator.is_zero();
}

}  // namespace qsym
