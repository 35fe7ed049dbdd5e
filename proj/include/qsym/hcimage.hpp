#pragma once

#include <set>

#include "qsym/membership.hpp"
#include "qsym/repthy.hpp"

namespace qsym {

struct ImageLimits {
  std::size_t max_orbit = 200000;
  std::size_t max_dim_terms = 400000;  // bound on orbit points summed over a character
};

/// a * P_B(z_{2 mu}) together with the ambient orbit-sum form it comes from.
struct CentralImage {
  Vec mu;
  CharacterElement ambient_sum{Lattice::ambient};
  LaurentScalar a_scalar;
  CharacterElement restricted_sum{Lattice::torus};
  OrbitExpansion expansion;
};

/// Sum of all coefficients, the value at the unit of the group algebra.
inline LaurentScalar coefficient_total(const CharacterElement& x) {
  LaurentScalar s;
  for (const auto& [k, c] : x.terms()) s += c;
  return s;
}

/// tau(2 gamma) -> tau(2 gamma~) on torus keys, coefficients unchanged.
inline CharacterElement push_to_restricted(const SymmetricPair& pair, const CharacterElement& ambient_even) {
  CharacterElement out(Lattice::torus);
  for (const auto& [k, c] : ambient_even.terms()) {
    Vec half(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] % 2 != 0) throw MathError("ambient exponent is not in 2P");
      half[i] = k[i] / 2;
    }
    out.add_term(pair.restrict_eta(half), c);
  }
  return out;
}

/// Restricted image of the orbit sum over W lambda of q^{(rho, 2 gamma)} tau(2 gamma).
inline CharacterElement orbit_image(const SymmetricPair& pair, const Vec& lambda, const ImageLimits& lim = {}) {
  const RootSystem& amb = pair.ambient();
  const Vec rho = amb.rho();
  CharacterElement out(Lattice::torus);
  for (const auto& g : amb.orbit(lambda, lim.max_orbit))
    out.add_term(pair.restrict_eta(g), LaurentScalar::q_power(2 * amb.inner(rho, g)));
  return out;
}

inline CentralImage central_image(const SymmetricPair& pair, const Vec& mu, const ImageLimits& lim = {}) {
  const RootSystem& amb = pair.ambient();
  if (static_cast<int>(mu.size()) != amb.rank() || !RootSystem::is_dominant(mu))
    throw MathError("central_image expects a dominant ambient weight");
  const Character ch = freudenthal(amb, mu);
  BigInt points = 0;
  for (const auto& [nu, mult] : ch.dominant) points += amb.orbit_size(nu);
  if (points > BigInt(static_cast<unsigned long>(lim.max_dim_terms)))
    throw OrbitTooLarge("central image needs " + points.get_str() + " orbit points, limit " +
                        std::to_string(lim.max_dim_terms));
  const OrbitBasis hat_tau = OrbitBasis::hat_tau(amb);
  CentralImage img;
  img.mu = mu;
  for (const auto& [nu, mult] : ch.dominant)
    img.ambient_sum += LaurentScalar(Rational(mult)) * hat_tau.element(scaled(nu, 2), lim.max_orbit);
  img.a_scalar = coefficient_total(img.ambient_sum);
  img.restricted_sum = push_to_restricted(pair, img.ambient_sum);
  img.expansion = OrbitBasis::hat_m(pair).expand(img.restricted_sum);
  return img;
}

/// Coefficients f_gamma of the orbit image of omega_i in the m^ basis, with values at q = 1.
struct FCoefficients {
  int index = 0;
  OrbitExpansion expansion;
  std::map<Vec, Rational> at_one;
  bool nonnegative = true;
};

inline FCoefficients f_coefficients(const SymmetricPair& pair, int i, const ImageLimits& lim = {}) {
  if (i < 1 || i > pair.rank()) throw std::out_of_range("fundamental index out of range");
  FCoefficients f;
  f.index = i;
  f.expansion = OrbitBasis::hat_m(pair).expand(orbit_image(pair, unit_vec(pair.rank(), i - 1), lim));
  f.at_one = f.expansion.specialize(1);
  for (const auto& [k, c] : f.expansion.coeffs) f.nonnegative = f.nonnegative && c.nonnegative_coefficients();
  return f;
}

/// #{beta in W omega_i : beta~ = target}.
inline long orbit_fiber_count(const SymmetricPair& pair, int i, const Vec& target, const ImageLimits& lim = {}) {
  if (i < 1 || i > pair.rank()) throw std::out_of_range("fundamental index out of range");
  long count = 0;
  for (const auto& b : pair.ambient().orbit(unit_vec(pair.rank(), i - 1), lim.max_orbit))
    if (pair.restrict_eta(b) == target) ++count;
  return count;
}

/// eta_a + eta_b in eta-coordinates, with eta_0 = eta_{t+1} = 0.
inline Vec eta_sum(int t, int a, int b) {
  Vec v(t, 0);
  if (a >= 1 && a <= t) v[a - 1] += 1;
  if (b >= 1 && b <= t) v[b - 1] += 1;
  return v;
}

inline int aii_restricted_rank(const SymmetricPair& pair) {
  if (pair.datum().ambient.label() != "A" + std::to_string(pair.rank()) || pair.rank() % 2 == 0 ||
      pair.restricted_rank() * 2 + 1 != pair.rank() || pair.datum().black.size() != static_cast<std::size_t>(pair.restricted_rank() + 1))
    throw std::invalid_argument(pair.label() + " is not of type AII");
  return pair.restricted_rank();
}

/// One fiber count against the two closed-form candidates.
struct FiberRow {
  int index = 0;
  int s = 0;
  Vec target;
  long computed = 0;
  long statement_value = 0;  // 2^s or 2^{s+1}
  long proof_value = 0;      // 2^{2s} or 2^{2s+1}
};

/// The fiber counts over W omega_i for every admissible s.
inline std::vector<FiberRow> fiber_table(const SymmetricPair& pair, int i, const ImageLimits& lim = {}) {
  const int t = aii_restricted_rank(pair);
  std::vector<FiberRow> rows;
  const int l = i / 2;
  const bool even = i % 2 == 0;
  if (even ? (l < 1 || 2 * l > t + 1) : (l < 0 || 2 * l > t))
    throw std::out_of_range("index " + std::to_string(i) + " outside the fiber-count range");
  for (int s = 0; s <= l; ++s) {
    FiberRow r;
    r.index = i;
    r.s = s;
    r.target = even ? eta_sum(t, l - s, l + s) : eta_sum(t, l - s, l + 1 + s);
    r.computed = orbit_fiber_count(pair, i, r.target, lim);
    r.statement_value = even ? (1L << s) : (1L << (s + 1));
    r.proof_value = even ? (1L << (2 * s)) : (1L << (2 * s + 1));
    rows.push_back(r);
  }
  return rows;
}

/// Closed-form q = 1 expansion: sum over s of 2^{2s} m^(2 eta_{l-s} + 2 eta_{l+s}) for k = 2l,
/// 2^{2s+1} m^(2 eta_{l-s} + 2 eta_{l+1+s}) for k = 2l+1, keyed in the torus lattice.
inline std::map<Vec, Rational> hat_M(int t, int k) {
  if (k < 1 || k > 2 * t + 1) throw std::out_of_range("index out of range");
  std::map<Vec, Rational> out;
  const int l = k / 2;
  if (k % 2 == 0) {
    for (int s = 0; s <= std::min(l, t + 1 - l); ++s) out[eta_sum(t, l - s, l + s)] += Rational(1L << (2 * s));
  } else {
    for (int s = 0; s <= std::min(l, t - l); ++s) out[eta_sum(t, l - s, l + 1 + s)] += Rational(1L << (2 * s + 1));
  }
  return out;
}

/// Dominant weights strictly below eta_r + eta_k in A_t, against {eta_{r-s} + eta_{k+s} : 1 <= s <= r}.
struct IntervalCheck {
  std::set<Vec> computed;
  std::set<Vec> expected;
  bool holds() const { return computed == expected; }
};

inline RootSystem type_a(int t) { return RootSystem(CartanDatum::standard('A', t)); }

inline IntervalCheck verify_dominance_interval(int t, int r, int k) {
  if (t < 1 || r < 1 || r > k || r + k > t + 1) throw std::out_of_range("need 1 <= r <= k, r + k <= t + 1");
  const RootSystem rs = type_a(t);
  const Vec top = eta_sum(t, r, k);
  IntervalCheck c;
  for (const auto& w : rs.weights_below(top))
    if (w != top) c.computed.insert(w);
  for (int s = 1; s <= r; ++s) c.expected.insert(eta_sum(t, r - s, k + s));
  return c;
}

/// m^(2 eta_r) m^(2 eta_k) in A_t, expanded directly and by the binomial closed form.
struct ProductCheck {
  OrbitExpansion direct;
  std::map<Vec, Rational> closed_form;
  bool holds() const {
    if (direct.coeffs.size() != closed_form.size()) return false;
    for (const auto& [k, c] : closed_form)
      if (direct.coefficient(k) != LaurentScalar(c)) return false;
    return true;
  }
  Rational unit_coefficient() const { return direct.coefficient(Vec(direct.coeffs.begin()->first.size(), 0)).at_one(); }
};

inline ProductCheck verify_m_product(int t, int r, int k) {
  if (t < 1 || r < 0 || r > k || k > t + 1 || r + k > t + 1) throw std::out_of_range("need 0 <= r <= k, r + k <= t + 1");
  const OrbitBasis hm = OrbitBasis::hat_m(type_a(t));
  ProductCheck c;
  c.direct = hm.expand(hm.element(eta_sum(t, r, 0)) * hm.element(eta_sum(t, k, 0)));
  for (int s = 0; s <= r; ++s) {
    const long n = k - r + 2 * s;
    c.closed_form[eta_sum(t, r - s, k + s)] += Rational(binomial(n, s));
  }
  return c;
}

/// 2^{2i} = binom(2i, i) + 2 sum_{r < i} binom(2i, r).
inline bool binomial_identity(int i) {
  BigInt rhs = binomial(2 * i, i);
  for (int r = 0; r < i; ++r) rhs += 2 * binomial(2 * i, r);
  BigInt lhs = 1;
  lhs <<= 2 * i;
  return lhs == rhs;
}

/// At q = 1: M_{2l} - m^(2eta_l)^2 - 2 sum_{j=1}^{l-1} m^(2eta_{l-j}) m^(2eta_{l+j}) = 2 m^(2eta_{2l}).
inline bool linear_step_check(int t, int l) {
  if (l < 1 || 2 * l > t + 1) throw std::out_of_range("need 1 <= 2l <= t + 1");
  const OrbitBasis hm = OrbitBasis::hat_m(type_a(t));
  auto elem = [&](int a, int b) { return hm.element(eta_sum(t, a, b)); };
  CharacterElement x(Lattice::torus);
  for (const auto& [key, c] : hat_M(t, 2 * l)) x += LaurentScalar(c) * hm.element(key);
  x -= elem(l, 0) * elem(l, 0);
  for (int j = 1; j < l; ++j) x -= LaurentScalar(2) * (elem(l - j, 0) * elem(l + j, 0));
  return hm.expand(x).specialize(1) == std::map<Vec, Rational>{{eta_sum(t, 2 * l, 0), Rational(2)}};
}

/// The dominance-minimal part of the restricted image of the generator for -w0 mu
/// is a single term at tau(-2 mu~).
struct TipCheck {
  Vec expected_key;
  CharacterElement tip{Lattice::torus};
  bool holds() const {
    return tip.size() == 1 && tip.terms().begin()->first == expected_key && !tip.terms().begin()->second.is_zero();
  }
};

inline TipCheck tip_check(const SymmetricPair& pair, const Vec& mu, const ImageLimits& lim = {}) {
  const RootSystem& amb = pair.ambient();
  Vec dual = amb.longest_element_action(mu);
  for (auto& x : dual) x = -x;
  const CentralImage img = central_image(pair, dual, lim);
  TipCheck c;
  c.expected_key = pair.restrict_eta(mu);
  for (auto& x : c.expected_key) x = -x;
  c.tip = OrbitBasis::hat_m(pair).tip(img.restricted_sum);
  return c;
}

/// Normalization and dotted invariance of a central image.
struct ImageChecks {
  bool unit_normalized = false;  // coefficient total of restricted_sum / a_scalar is 1
  bool invariant = false;
  bool rebuilds = false;         // expansion reassembles restricted_sum
};

inline ImageChecks check_image(const SymmetricPair& pair, const CentralImage& img) {
  const OrbitBasis hm = OrbitBasis::hat_m(pair);
  ImageChecks c;
  c.unit_normalized = !img.a_scalar.is_zero() && coefficient_total(img.restricted_sum) == img.a_scalar;
  c.invariant = hm.is_invariant(img.restricted_sum);
  c.rebuilds = hm.rebuild(img.expansion) == img.restricted_sum;
  return c;
}

/// One step of a generation procedure.
struct GenerationStep {
  int index = 0;  // j of eta_j
  Vec target;
  Vec ceiling;
  std::string how;  // "seed" or "membership"
  MembershipResult result;
  bool verified = false;
};

struct GenerationReport {
  std::vector<GenerationStep> steps;
  bool all_verified() const {
    return !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.verified; });
  }
};

namespace detail {

/// Lazily built orbit images Z_k of tau^(2 omega_k), named "Z<k>".
class ImageCache {
 public:
  ImageCache(const SymmetricPair& pair, ImageLimits lim) : pair_(pair), lim_(lim) {}
  const NamedElement& get(int k) {
    auto it = cache_.find(k);
    if (it == cache_.end())
      it = cache_.emplace(k, NamedElement{"Z" + std::to_string(k), orbit_image(pair_, unit_vec(pair_.rank(), k - 1), lim_)})
               .first;
    return it->second;
  }

 private:
  const SymmetricPair& pair_;
  ImageLimits lim_;
  std::map<int, NamedElement> cache_;
};

inline std::string m_name(int j) { return "m" + std::to_string(j); }

inline GenerationStep certify(const SymmetricPair& pair, ImageCache& images, std::vector<NamedElement>& certified,
                              int j, const Vec& ceiling, int degree_bound, const MembershipLimits& mlim,
                              int max_image = 1 << 20) {
  const RootSystem& sigma = pair.restricted();
  const OrbitBasis hm = OrbitBasis::hat_m(pair);
  GenerationStep step;
  step.index = j;
  step.target = unit_vec(pair.restricted_rank(), j - 1);
  step.ceiling = ceiling;
  step.how = "membership";
  std::vector<NamedElement> gens;
  for (int k = 1; k <= std::min(pair.rank(), max_image); ++k)
    if (sigma.dominance_leq(pair.omega_tilde(k - 1), ceiling)) gens.push_back(images.get(k));
  for (const auto& c : certified) gens.push_back(c);
  const NamedElement target{m_name(j), hm.element(step.target)};
  step.result = membership_bounded(hm, target, gens, degree_bound, ceiling, mlim);
  step.verified = step.result.status == MembershipStatus::member && step.result.certificate &&
                  verify_certificate(*step.result.certificate, target.element, gens);
  if (step.verified) certified.push_back(target);
  return step;
}

}  // namespace detail

/// Certificates for every m^(2 eta_j) on an AII pair, in order of j, from Z_1..Z_j and the
/// earlier certificates under the ceiling omega~_j.
inline GenerationReport generate_aii(const SymmetricPair& pair, int degree_bound = 2, const ImageLimits& lim = {},
                                     const MembershipLimits& mlim = {}) {
  const int t = aii_restricted_rank(pair);
  detail::ImageCache images(pair, lim);
  std::vector<NamedElement> certified;
  GenerationReport rep;
  for (int j = 1; j <= t; ++j) {
    rep.steps.push_back(detail::certify(pair, images, certified, j, pair.omega_tilde(j - 1), degree_bound, mlim, j));
    if (!rep.steps.back().verified) break;
  }
  return rep;
}

/// Weights below eta_j other than itself are at most {0}.
inline bool minuscule_or_pseudominuscule(const RootSystem& sigma, const Vec& eta) {
  for (const auto& w : sigma.weights_below(eta))
    if (w != eta && !is_zero(w)) return false;
  return true;
}

/// The type letter of an irreducible restricted system: 'B' when the last simple root is
/// shorter than the one before it, 'C' when longer, otherwise the label letter.
inline char restricted_series(const SymmetricPair& pair) {
  const auto& c = pair.restricted().cartan();
  const int t = c.rank();
  if (t >= 2) {
    const Rational last = c.root_sq(t - 1), prev = c.root_sq(t - 2);
    if (last < prev) return 'B';
    if (last > prev) return 'C';
  }
  return 'A';
}

/// Seeds from minuscule or pseudominuscule restricted fundamental weights equal to omega~_i.
inline std::vector<int> seed_indices(const SymmetricPair& pair) {
  std::vector<int> seeds;
  const int t = pair.restricted_rank();
  std::vector<int> candidates{1};
  if (restricted_series(pair) == 'B') candidates.push_back(t);
  for (int j : candidates) {
    const Vec eta = unit_vec(t, j - 1);
    if (!minuscule_or_pseudominuscule(pair.restricted(), eta)) continue;
    for (int k = 1; k <= pair.rank(); ++k)
      if (pair.omega_tilde(k - 1) == eta) {
        seeds.push_back(j);
        break;
      }
  }
  return seeds;
}

/// Certificates on a pair whose restricted system is of type B or C: seeds first, then the
/// remaining eta_j in increasing order with the lowest omega~_k above eta_j as ceiling.
/// Stops after `max_steps` non-seed steps.
inline GenerationReport generate_bc(const SymmetricPair& pair, int degree_bound = 3, int max_steps = 1 << 20,
                                    const ImageLimits& lim = {}, const MembershipLimits& mlim = {}) {
  const int t = pair.restricted_rank();
  const RootSystem& sigma = pair.restricted();
  detail::ImageCache images(pair, lim);
  std::vector<NamedElement> certified;
  GenerationReport rep;
  const auto seeds = seed_indices(pair);
  for (int j : seeds) {
    auto step = detail::certify(pair, images, certified, j, unit_vec(t, j - 1), 1, mlim);
    step.how = "seed";
    rep.steps.push_back(std::move(step));
  }
  int done = 0;
  for (int j = 1; j <= t && done < max_steps; ++j) {
    if (std::find(seeds.begin(), seeds.end(), j) != seeds.end()) continue;
    const Vec eta = unit_vec(t, j - 1);
    std::optional<Vec> ceiling;
    for (int k = 1; k <= pair.rank(); ++k) {
      const Vec w = pair.omega_tilde(k - 1);
      if (sigma.dominance_leq(eta, w) && (!ceiling || sigma.height(w) < sigma.height(*ceiling))) ceiling = w;
    }
    if (!ceiling) break;
    rep.steps.push_back(detail::certify(pair, images, certified, j, *ceiling, degree_bound, mlim));
    ++done;
    if (!rep.steps.back().verified) break;
  }
  return rep;
}

/// eta_r - eta'_r = c eta_t, with eta'_r the fundamental weight of the subsystem on the first
/// t-1 simple roots; expected c = r/t (C_t) or 2r/t (B_t, r < t).
struct ProjectionCheck {
  int r = 0;
  Rational coefficient;
  Rational expected;
  bool in_subspace = false;  // eta_r - c eta_t is orthogonal to eta_t
  bool holds() const { return in_subspace && coefficient == expected; }
};

inline ProjectionCheck projection_check(const RootSystem& sigma, char series, int r) {
  const int t = sigma.rank();
  if (r < 1 || r > t) throw std::out_of_range("r out of range");
  if (series != 'B' && series != 'C') throw std::invalid_argument("series must be B or C");
  const Vec er = unit_vec(t, r - 1), et = unit_vec(t, t - 1);
  ProjectionCheck c;
  c.r = r;
  c.coefficient = sigma.inner(er, et) / sigma.inner(et, et);
  c.expected = series == 'C' ? rat(r, t) : (r < t ? rat(2 * r, t) : Rational(1));
  RVec prime = to_rvec(er);
  for (int i = 0; i < t; ++i) prime[i] -= i == t - 1 ? c.coefficient : Rational(0);
  c.in_subspace = sigma.inner(prime, to_rvec(et)) == 0;
  return c;
}

/// eta_r + eta_k - eta'_r - eta'_k as a multiple of eta_t, for every admissible pair.
inline bool sum_depends_on_r_plus_k(const RootSystem& sigma, char series) {
  const int t = sigma.rank();
  std::map<int, Rational> seen;
  const int top = series == 'C' ? t : t - 1;
  for (int r = 1; r <= top; ++r)
    for (int k = r; k <= top; ++k) {
      const Rational c = projection_check(sigma, series, r).coefficient + projection_check(sigma, series, k).coefficient;
      auto [it, fresh] = seen.emplace(r + k, c);
      if (!fresh && it->second != c) return false;
    }
  return true;
}

/// Orbit points outside the parabolic suborbit, and expansion keys off the AII pattern,
/// both lie in omega~_i - mu_t - Q+(Sigma); the pattern coefficients are nonnegative with
/// value 2^j at q = 1.
struct SplitCheck {
  int index = 0;
  std::size_t outside_points = 0;
  bool outside_ok = true;
  bool pattern_ok = true;
  bool rest_ok = true;
  bool holds() const { return outside_ok && pattern_ok && rest_ok; }
};

inline SplitCheck split_check(const SymmetricPair& pair, int i, const ImageLimits& lim = {}) {
  const int t = pair.restricted_rank();
  const int n = pair.rank();
  const RootSystem& amb = pair.ambient();
  const RootSystem& sigma = pair.restricted();
  std::vector<int> sub(n - 1);
  for (int j = 0; j < n - 1; ++j) sub[j] = j;
  const Vec lambda = unit_vec(n, i - 1);
  const Vec shifted = pair.omega_tilde(i - 1) - pair.restricted_simple_root_eta(t - 1);
  const Vec zero(t, 0);
  SplitCheck c;
  c.index = i;
  VecSet inner;
  for (const auto& b : amb.orbit_under(lambda, sub, lim.max_orbit)) inner.insert(b);
  for (const auto& b : amb.orbit(lambda, lim.max_orbit)) {
    if (inner.count(b)) continue;
    ++c.outside_points;
    if (!sigma.dominance_leq(pair.restrict_eta(b), shifted)) c.outside_ok = false;
  }
  const int l = i / 2;
  const bool even = i % 2 == 0;
  std::map<Vec, int> pattern;
  for (int s = 0; s <= l; ++s) {
    const int a = l - s, b = even ? l + s : l + 1 + s;
    if (b > t) continue;
    pattern[eta_sum(t, a, b)] = even ? 2 * s : 2 * s + 1;
  }
  const OrbitExpansion e = OrbitBasis::hat_m(pair).expand(orbit_image(pair, lambda, lim));
  for (const auto& [key, j] : pattern) {
    const LaurentScalar g = e.coefficient(key);
    if (!g.nonnegative_coefficients() || g.at_one() != Rational(1L << j)) c.pattern_ok = false;
  }
  for (const auto& [key, g] : e.coeffs)
    if (!pattern.count(key) && !sigma.dominance_leq(key, shifted)) c.rest_ok = false;
  return c;
}

/// Evidence that m^(2 eta_j) is not generated: bounded membership fails and eta_j is not an
/// N-combination of the restricted fundamental weights.
struct NonMembershipEvidence {
  int index = 0;
  MembershipResult result;
  bool lattice_obstruction = false;
  std::vector<Vec> omega_tilde;
};

inline NonMembershipEvidence non_membership_evidence(const SymmetricPair& pair, int j, const Vec& ceiling,
                                                     int degree_bound = 2, const ImageLimits& lim = {},
                                                     const MembershipLimits& mlim = {}) {
  const int t = pair.restricted_rank();
  if (j < 1 || j > t) throw std::out_of_range("restricted index out of range");
  const RootSystem& sigma = pair.restricted();
  const OrbitBasis hm = OrbitBasis::hat_m(pair);
  NonMembershipEvidence ev;
  ev.index = j;
  std::vector<NamedElement> gens;
  for (int k = 1; k <= pair.rank(); ++k) {
    ev.omega_tilde.push_back(pair.omega_tilde(k - 1));
    if (sigma.dominance_leq(ev.omega_tilde.back(), ceiling))
      gens.push_back({"Z" + std::to_string(k), orbit_image(pair, unit_vec(pair.rank(), k - 1), lim)});
  }
  const Vec eta = unit_vec(t, j - 1);
  ev.result = membership_bounded(hm, {detail::m_name(j), hm.element(eta)}, gens, degree_bound, ceiling, mlim);
  ev.lattice_obstruction = !pair.lattice_compare().plus_certificates[j - 1].has_value();
  return ev;
}

}  // namespace qsym
