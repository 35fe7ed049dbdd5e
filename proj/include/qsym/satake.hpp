#pragma once

#include <functional>
#include <map>
#include <optional>

#include "qsym/root_system.hpp"

namespace qsym {

class InvalidSatake : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Satake diagram data: black nodes and the diagram involution (0-based).
struct SatakeDatum {
  std::string label;
  CartanDatum ambient;
  std::vector<int> black;
  std::vector<int> perm;

  /// Builds the involution from the arrows between white nodes; on black
  /// nodes it is the opposition involution of the black subdiagram.
  static SatakeDatum from_arrows(std::string label, CartanDatum ambient, std::vector<int> black,
                                 const std::vector<std::pair<int, int>>& arrows) {
    const int n = ambient.rank();
    std::sort(black.begin(), black.end());
    black.erase(std::unique(black.begin(), black.end()), black.end());
    for (int b : black)
      if (b < 0 || b >= n) throw InvalidSatake("black node out of range");
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (auto [i, j] : arrows) {
      if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidSatake("arrow endpoint out of range");
      perm[i] = j;
      perm[j] = i;
    }
    if (!black.empty()) {
      const RootSystem rs(ambient);
      const auto word = rs.longest_word(black);
      for (int j : black) {
        Vec img = rs.apply_word(rs.simple_root(j), word);
        for (auto& x : img) x = -x;
        int hit = -1;
        for (int k : black)
          if (img == rs.simple_root(k)) hit = k;
        if (hit < 0) throw InvalidSatake("black subdiagram opposition is not a node permutation");
        perm[j] = hit;
      }
    }
    return {std::move(label), std::move(ambient), std::move(black), std::move(perm)};
  }
};

/// Type of a rank-one subpair, by diagram shape and the position of the white node.
enum class RankOneKind { split_a1, swapped_a1xa1, a3_middle, a_end, b_series, d_series, c_second, f4_end };

inline const char* to_string(RankOneKind k) {
  switch (k) {
    case RankOneKind::split_a1: return "A1, theta = -1";
    case RankOneKind::swapped_a1xa1: return "A1xA1, swapped";
    case RankOneKind::a3_middle: return "A3, middle node";
    case RankOneKind::a_end: return "A_r, end node";
    case RankOneKind::b_series: return "B_r, first node";
    case RankOneKind::d_series: return "D_r, first node";
    case RankOneKind::c_second: return "C_r, second node";
    case RankOneKind::f4_end: return "F4, fourth node";
  }
  return "?";
}

struct RankOneSubpair {
  int node = 0;                 // ambient index of the white simple root
  std::vector<int> support;     // ambient nodes with nonzero coefficient in its restriction
  RankOneKind kind{};
  std::string cartan_label;
  std::vector<int> bourbaki;    // bourbaki[k] = ambient node of local simple root k+1
  int listed_node = 0;          // ambient node of the tabulated fundamental weight
  Rational listed_beta;         // (omega_listed, beta_i)
  Vec lambda;                   // a weight with (lambda, beta_i) = (beta_i, beta_i)/2, if found
  Rational half_beta_sq;        // (beta_i, beta_i) / 2
  bool listed_holds() const { return listed_beta == half_beta_sq; }
  bool holds() const { return !lambda.empty(); }
};

struct SpecialSets {
  std::vector<int> s_set;  // ambient indices
  std::vector<int> d_set;
};

/// Outcome of comparing the restricted fundamental weights with P(Sigma).
struct LatticeComparison {
  std::vector<Vec> omega_tilde;  // eta-coordinates of each restricted ambient fundamental weight
  bool plus_equal = true;
  bool full_equal = true;
  /// For each eta_j: N-combination of the omega_tilde, when one exists.
  std::vector<std::optional<std::vector<long>>> plus_certificates;
  /// For each eta_j: Z-combination of the omega_tilde, when one exists.
  std::vector<std::optional<std::vector<BigInt>>> full_certificates;
};

class SymmetricPair {
 public:
  explicit SymmetricPair(SatakeDatum d) : datum_(std::move(d)), ambient_(datum_.ambient) {
    build_theta();
    build_restricted();
  }

  const SatakeDatum& datum() const { return datum_; }
  const std::string& label() const { return datum_.label; }
  const RootSystem& ambient() const { return ambient_; }
  const RootSystem& restricted() const { return restricted_; }
  int rank() const { return ambient_.rank(); }
  int restricted_rank() const { return static_cast<int>(pi_star_.size()); }
  bool is_black(int i) const { return std::binary_search(datum_.black.begin(), datum_.black.end(), i); }

  /// Theta on fundamental-weight coordinates.
  Vec theta(const Vec& v) const {
    Vec out(rank(), 0);
    for (int i = 0; i < rank(); ++i)
      if (v[i] != 0)
        for (int j = 0; j < rank(); ++j) out[j] += v[i] * theta_cols_[i][j];
    return out;
  }
  Vec theta_simple_root(int i) const { return theta(ambient_.simple_root(i)); }
  /// Theta(alpha_i) in simple-root coordinates.
  Vec theta_root_coords(int i) const { return to_vec(ambient_.root_coords(theta_simple_root(i))); }

  /// (v - Theta v) / 2 in ambient fundamental coordinates.
  RVec restrict_ambient(const Vec& v) const {
    const Vec t = theta(v);
    RVec out(rank());
    for (int i = 0; i < rank(); ++i) out[i] = rat(v[i] - t[i], 2);
    return out;
  }

  /// Restriction of an ambient weight, in eta-coordinates.
  Vec restrict_eta(const Vec& v) const {
    Vec out(restricted_rank(), 0);
    for (int j = 0; j < restricted_rank(); ++j) {
      Rational c = 0;
      for (int i = 0; i < rank(); ++i)
        if (v[i] != 0) c += eta_functional_[j][i] * Rational(v[i]);
      out[j] = to_ll(c);
    }
    return out;
  }
  Vec omega_tilde(int i) const { return restrict_eta(unit_vec(rank(), i)); }

  /// Ambient fundamental coordinates of a restricted weight given in eta-coordinates.
  RVec embed(const Vec& eta) const {
    RVec out(rank(), Rational(0));
    for (int j = 0; j < restricted_rank(); ++j)
      if (eta[j] != 0)
        for (int i = 0; i < rank(); ++i) out[i] += Rational(eta[j]) * eta_embed_[j][i];
    return out;
  }
  /// (rho, gamma) for a restricted weight gamma (ambient rho).
  Rational rho_pairing(const Vec& eta) const {
    Rational s = 0;
    for (int j = 0; j < restricted_rank(); ++j) s += Rational(eta[j]) * rho_eta_[j];
    return s;
  }
  Rational restricted_inner(const Vec& a, const Vec& b) const { return ambient_.inner(embed(a), embed(b)); }

  const std::vector<int>& pi_star() const { return pi_star_; }
  /// 1: Theta alpha = -alpha; 2: (alpha, Theta alpha) = 0; 3: otherwise (2 alpha~ is a root).
  int case_tag(int k) const { return case_tags_[k]; }
  bool is_bc() const { return bc_; }
  const std::string& sigma_label() const { return sigma_label_; }
  /// alpha~_i for i in pi_star, ambient fundamental coordinates.
  const std::vector<RVec>& restricted_simple_roots() const { return alpha_tilde_; }
  /// beta_i = alpha~_i or 2 alpha~_i (the coroot-defining root).
  const std::vector<RVec>& coroot_roots() const { return beta_; }
  /// Restricted simple root alpha~_k in eta-coordinates.
  Vec restricted_simple_root_eta(int k) const {
    RVec row(restricted_rank());
    for (int j = 0; j < restricted_rank(); ++j)
      row[j] = Rational(restricted_.cartan().a(k, j)) * restricted_.dominance_scale()[k];
    return to_vec(row);
  }
  int restricted_index(int ambient_node) const {
    auto it = std::find(pi_star_.begin(), pi_star_.end(), ambient_node);
    return it == pi_star_.end() ? -1 : static_cast<int>(it - pi_star_.begin());
  }

  SpecialSets special_sets() const {
    SpecialSets out;
    std::vector<int> minus_one;
    for (int j = 0; j < rank(); ++j) {
      Vec neg = ambient_.simple_root(j);
      for (auto& x : neg) x = -x;
      if (theta_simple_root(j) == neg) minus_one.push_back(j);
    }
    const auto& c = ambient_.cartan();
    for (int i : pi_star_) {
      if (std::find(minus_one.begin(), minus_one.end(), i) != minus_one.end()) {
        bool ok = true;
        for (int j : minus_one) {
          const Rational r = c.root_inner(i, j) / c.root_sq(j);
          if (!is_integer(r)) ok = false;
        }
        if (ok) out.s_set.push_back(i);
      }
      if (datum_.perm[i] != i && ambient_.inner(ambient_.simple_root(i), theta_simple_root(i)) != 0)
        out.d_set.push_back(i);
    }
    return out;
  }

  /// Expected restriction of omega_i for i in pi_star: 2 eta if p(i) = i and
  /// Theta(alpha_i) != -alpha_i, else eta.
  Vec omega_tilde_expected(int i) const {
    const int k = restricted_index(i);
    Vec e = unit_vec(restricted_rank(), k);
    if (datum_.perm[i] == i && case_tags_[k] != 1) e[k] = 2;
    return e;
  }

  RankOneSubpair rank_one_subpair(int node) const;
  LatticeComparison lattice_compare(std::size_t search_bound = 64) const;
  /// Largest rank of a Theta-stable chain whose Satake diagram is of type AII (0 if none).
  int max_aii_chain_rank() const;

 private:
  SatakeDatum datum_;
  RootSystem ambient_;
  IMatrix theta_cols_;  // theta_cols_[i] = Theta(omega_i)
  std::vector<int> pi_star_;
  std::vector<int> case_tags_;
  bool bc_ = false;
  std::vector<RVec> alpha_tilde_;
  std::vector<RVec> beta_;
  RootSystem restricted_;
  std::string sigma_label_;
  RMatrix eta_functional_;  // t x n
  RMatrix eta_embed_;       // t x n
  RVec rho_eta_;

  void build_theta() {
    const int n = rank();
    const auto& perm = datum_.perm;
    const auto& c = ambient_.cartan();
    if (static_cast<int>(perm.size()) != n) throw InvalidSatake("permutation has wrong length");
    for (int i = 0; i < n; ++i) {
      if (perm[i] < 0 || perm[i] >= n || perm[perm[i]] != i) throw InvalidSatake("p is not an involution");
      for (int j = 0; j < n; ++j)
        if (c.a(perm[i], perm[j]) != c.a(i, j)) throw InvalidSatake("p is not a diagram automorphism");
    }
    for (int b : datum_.black)
      if (!is_black(perm[b])) throw InvalidSatake("p does not preserve the black nodes");
    const auto word = ambient_.longest_word(datum_.black);
    theta_cols_.assign(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) {
      Vec v = ambient_.apply_word(unit_vec(n, perm[i]), word);
      for (auto& x : v) x = -x;
      theta_cols_[i] = v;
    }
    for (int i = 0; i < n; ++i)
      if (theta(theta(unit_vec(n, i))) != unit_vec(n, i)) throw InvalidSatake("Theta is not an involution");
    for (int b : datum_.black)
      if (theta_simple_root(b) != ambient_.simple_root(b)) throw InvalidSatake("Theta does not fix a black node");
    for (int i = 0; i < n; ++i) {
      if (is_black(i)) continue;
      // Theta(-alpha_i) - alpha_{p(i)} must lie in the N-span of black roots.
      Vec v = theta_root_coords(i);
      for (auto& x : v) x = -x;
      v[perm[i]] -= 1;
      for (int j = 0; j < n; ++j)
        if (v[j] < 0 || (v[j] != 0 && !is_black(j)))
          throw InvalidSatake("Theta(-alpha_i) - alpha_p(i) is not a nonnegative black combination");
    }
  }

  void build_restricted() {
    const int n = rank();
    for (int i = 0; i < n; ++i)
      if (!is_black(i) && i <= datum_.perm[i]) pi_star_.push_back(i);
    const int t = restricted_rank();
    for (int i : pi_star_) {
      const Vec a = ambient_.simple_root(i);
      const Vec ta = theta(a);
      RVec tilde = restrict_ambient(a);
      Vec neg = a;
      for (auto& x : neg) x = -x;
      int tag;
      const Rational sq = ambient_.inner(a, a);
      const Rational cross = ambient_.inner(a, ta);
      const Rational tilde_sq = ambient_.inner(tilde, tilde);
      if (ta == neg) tag = 1;
      else if (cross == 0) tag = 2;
      else tag = 3;
      const Rational expect = tag == 1 ? sq : tag == 2 ? Rational(sq / 2) : Rational(sq / 4);
      if (tilde_sq != expect) throw InvalidSatake("restricted root length does not match its case");
      case_tags_.push_back(tag);
      if (tag == 3) bc_ = true;
      RVec beta = tilde;
      if (tag == 3)
        for (auto& x : beta) x *= 2;
      alpha_tilde_.push_back(tilde);
      beta_.push_back(beta);
    }
    IMatrix ap(t, Vec(t));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        const Rational v = 2 * ambient_.inner(beta_[i], beta_[j]) / ambient_.inner(beta_[j], beta_[j]);
        if (!is_integer(v)) throw InvalidSatake("restricted Cartan matrix is not integral");
        ap[i][j] = to_ll(v);
      }
    std::vector<Rational> scale;
    for (int tag : case_tags_) scale.push_back(tag == 3 ? rat(1, 2) : Rational(1));
    restricted_ = RootSystem(CartanDatum(ap), scale);
    sigma_label_ = bc_ ? "BC" + std::to_string(t) : bourbaki_label(restricted_.cartan());

    eta_functional_.assign(t, RVec(n));
    for (int j = 0; j < t; ++j) {
      const RVec g = mat_vec(ambient_.fundamental_gram(), beta_[j]);
      const Rational bb = ambient_.inner(beta_[j], beta_[j]);
      for (int i = 0; i < n; ++i) eta_functional_[j][i] = 2 * g[i] / bb;
    }
    RMatrix apr(t, RVec(t));
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) apr[i][j] = Rational(ap[i][j]);
    const RMatrix inv = t ? inverse(apr) : RMatrix{};
    eta_embed_.assign(t, RVec(n, Rational(0)));
    for (int j = 0; j < t; ++j)
      for (int k = 0; k < t; ++k)
        for (int i = 0; i < n; ++i) eta_embed_[j][i] += inv[j][k] * beta_[k][i];
    rho_eta_.assign(t, Rational(0));
    const RVec rho = to_rvec(ambient_.rho());
    for (int j = 0; j < t; ++j) rho_eta_[j] = ambient_.inner(rho, eta_embed_[j]);
  }

  static std::string bourbaki_label(const CartanDatum& c) {
    const int r = c.rank();
    if (c.irreducible()) {
      for (char letter : std::string("ABCDEFG")) {
        try {
          if (detail::standard_cartan(letter, r) == c.matrix()) return std::string(1, letter) + std::to_string(r);
        } catch (const InvalidCartan&) {
        }
      }
    }
    return c.label();
  }
};

inline RankOneSubpair SymmetricPair::rank_one_subpair(int node) const {
  const int k = restricted_index(node);
  if (k < 0) throw InvalidSatake("node is not a restricted simple root");
  RankOneSubpair out;
  out.node = node;
  const RVec tilde_roots = ambient_.to_simple_root(Weight{Basis::fundamental, alpha_tilde_[k]}).coords;
  for (int j = 0; j < rank(); ++j)
    if (tilde_roots[j] != 0) out.support.push_back(j);
  const CartanDatum local = ambient_.cartan().sub(out.support);
  out.cartan_label = local.label();
  const Vec theta_a = theta_root_coords(node);
  out.half_beta_sq = ambient_.inner(beta_[k], beta_[k]) / 2;
  const int r = static_cast<int>(out.support.size());

  // theta(alpha_node) must equal -(sum coeff[m] * alpha_{ord[m]}) over the local Bourbaki order.
  auto theta_is = [&](const std::vector<int>& ord, const std::vector<long>& coeff) {
    Vec expect(rank(), 0);
    for (std::size_t m = 0; m < ord.size(); ++m) expect[ord[m]] -= coeff[m];
    return expect == theta_a;
  };
  auto finish = [&](RankOneKind kind, const std::vector<int>& ord, int lambda_local) {
    out.kind = kind;
    out.bourbaki = ord;
    out.listed_node = ord[lambda_local];
    auto pairing = [&](const Vec& v) { return ambient_.inner(to_rvec(v), beta_[k]); };
    out.listed_beta = pairing(unit_vec(rank(), out.listed_node));
    // Tabulated choice first, then single fundamental weights, then differences and sums.
    std::vector<Vec> candidates{unit_vec(rank(), out.listed_node)};
    for (int a : out.support) candidates.push_back(unit_vec(rank(), a));
    for (int a : out.support)
      for (int b : out.support)
        if (a != b) {
          candidates.push_back(unit_vec(rank(), a) - unit_vec(rank(), b));
          if (a < b) candidates.push_back(unit_vec(rank(), a) + unit_vec(rank(), b));
        }
    for (const auto& v : candidates)
      if (pairing(v) == out.half_beta_sq) {
        out.lambda = v;
        break;
      }
    return out;
  };
  auto orderings = [&](char letter) {
    std::vector<std::vector<int>> res;
    for (auto& sigma : bourbaki_orderings(local, letter, r)) {
      std::vector<int> ord;
      for (int s : sigma) ord.push_back(out.support[s]);
      res.push_back(ord);
    }
    return res;
  };

  if (r == 1 && theta_is({node}, {1})) return finish(RankOneKind::split_a1, {node}, 0);
  if (r == 2 && local.components().size() == 2 && datum_.perm[node] != node &&
      theta_is({datum_.perm[node]}, {1}))
    return finish(RankOneKind::swapped_a1xa1, {node, datum_.perm[node]}, 0);
  for (const auto& ord : orderings('A')) {
    if (r == 3 && ord[1] == node && theta_is(ord, {1, 1, 1})) return finish(RankOneKind::a3_middle, ord, 0);
    if (r >= 2 && ord[0] == node) {
      std::vector<long> coeff(r, 1);
      coeff[0] = 0;
      if (theta_is(ord, coeff)) return finish(RankOneKind::a_end, ord, 0);
    }
  }
  for (const auto& ord : orderings('B')) {
    std::vector<long> coeff(r, 2);
    coeff[0] = 1;
    if (ord[0] == node && theta_is(ord, coeff)) return finish(RankOneKind::b_series, ord, r - 1);
  }
  for (const auto& ord : orderings('D')) {
    std::vector<long> coeff(r, 2);
    coeff[0] = 1;
    coeff[r - 2] = 1;
    coeff[r - 1] = 1;
    if (ord[0] == node && theta_is(ord, coeff)) return finish(RankOneKind::d_series, ord, r - 1);
  }
  for (const auto& ord : orderings('C')) {
    std::vector<long> coeff(r, 2);
    coeff[0] = 1;
    coeff[1] = 1;
    coeff[r - 1] = 1;
    if (r >= 3 && ord[1] == node && theta_is(ord, coeff)) return finish(RankOneKind::c_second, ord, r - 1);
  }
  for (const auto& ord : orderings('F')) {
    if (ord[3] == node && theta_is(ord, {1, 2, 3, 1})) return finish(RankOneKind::f4_end, ord, 3);
  }
  throw InvalidSatake("rank-one subpair at node " + std::to_string(node + 1) + " matches no catalogue row");
}

namespace detail {

/// Nonnegative integer combination of `gens` equal to `target` (all coordinates >= 0).
inline std::optional<std::vector<long>> monoid_combination(const std::vector<Vec>& gens, const Vec& target,
                                                           std::size_t bound) {
  std::vector<long> coef(gens.size(), 0);
  std::function<bool(std::size_t, Vec)> go = [&](std::size_t g, Vec rem) -> bool {
    if (is_zero(rem)) return true;
    if (g == gens.size()) return false;
    const Vec& v = gens[g];
    long cap = static_cast<long>(bound);
    bool nonzero = false;
    bool negative = false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < 0) negative = true;
      if (v[j] > 0) {
        nonzero = true;
        cap = std::min(cap, rem[j] / v[j]);
      }
    }
    if (!nonzero || negative) cap = 0;
    for (long c = cap; c >= 0; --c) {
      coef[g] = c;
      if (go(g + 1, rem - scaled(v, c))) return true;
    }
    coef[g] = 0;
    return false;
  };
  for (long x : target)
    if (x < 0) return std::nullopt;
  if (go(0, target)) return coef;
  return std::nullopt;
}

/// Small integer combination: single generators first, then pairs, coefficients in [-2, 2].
inline std::optional<std::vector<BigInt>> short_combination(const std::vector<Vec>& gens, const Vec& target) {
  const std::size_t m = gens.size();
  const long cs[] = {1, -1, 2, -2};
  for (std::size_t a = 0; a < m; ++a)
    for (long ca : cs)
      if (scaled(gens[a], ca) == target) {
        std::vector<BigInt> x(m, 0);
        x[a] = ca;
        return x;
      }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (long ca : cs)
        for (long cb : cs)
          if (scaled(gens[a], ca) + scaled(gens[b], cb) == target) {
            std::vector<BigInt> x(m, 0);
            x[a] = ca;
            x[b] = cb;
            return x;
          }
  return std::nullopt;
}

}  // namespace detail

inline LatticeComparison SymmetricPair::lattice_compare(std::size_t search_bound) const {
  LatticeComparison out;
  for (int i = 0; i < rank(); ++i) out.omega_tilde.push_back(omega_tilde(i));
  for (int j = 0; j < restricted_rank(); ++j) {
    const Vec eta = unit_vec(restricted_rank(), j);
    auto plus = detail::monoid_combination(out.omega_tilde, eta, search_bound);
    if (!plus) out.plus_equal = false;
    out.plus_certificates.push_back(plus);
    auto full = detail::short_combination(out.omega_tilde, eta);
    if (!full) {
      auto z = integer_combination(out.omega_tilde, eta);
      if (!z.empty()) full = z;
    }
    if (!full) out.full_equal = false;
    out.full_certificates.push_back(full);
  }
  return out;
}

inline int SymmetricPair::max_aii_chain_rank() const {
  const auto& c = ambient_.cartan();
  const int n = rank();
  int best = 0;
  // Depth-first over simple paths in the Dynkin diagram.
  std::vector<int> path;
  std::vector<char> on(n, 0);
  std::function<void()> extend = [&] {
    const int len = static_cast<int>(path.size());
    if (len >= 3 && len % 2 == 1 && len > best) {
      bool ok = true;
      for (int m = 0; m < len && ok; ++m) ok = is_black(path[m]) == (m % 2 == 0);
      // simply laced induced chain
      for (int a = 0; a < len && ok; ++a)
        for (int b = a + 1; b < len && ok; ++b) {
          const long v = c.a(path[a], path[b]);
          ok = (b == a + 1) ? (v == -1 && c.a(path[b], path[a]) == -1) : v == 0;
        }
      for (int m = 0; m < len && ok; ++m) {
        const Vec t = theta_root_coords(path[m]);
        for (int j = 0; j < n && ok; ++j)
          if (t[j] != 0) ok = on[j];
      }
      if (ok) best = len;
    }
    const int last = path.back();
    for (int j = 0; j < n; ++j)
      if (!on[j] && c.a(last, j) != 0) {
        on[j] = 1;
        path.push_back(j);
        extend();
        path.pop_back();
        on[j] = 0;
      }
  };
  for (int s = 0; s < n; ++s) {
    on[s] = 1;
    path.push_back(s);
    extend();
    path.pop_back();
    on[s] = 0;
  }
  return best;
}

}  // namespace qsym
