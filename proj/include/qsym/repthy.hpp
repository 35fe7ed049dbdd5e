#pragma once

#include <map>

#include "qsym/root_system.hpp"

namespace qsym {

/// Weight multiplicities of an irreducible module, keyed by dominant weight.
struct Character {
  Vec highest;
  std::map<Vec, BigInt> dominant;

  BigInt multiplicity(const RootSystem& rs, const Vec& weight) const {
    auto it = dominant.find(rs.dominant(weight));
    return it == dominant.end() ? BigInt(0) : it->second;
  }

  BigInt dimension(const RootSystem& rs) const {
    BigInt d = 0;
    for (const auto& [w, m] : dominant) d += m * rs.orbit_size(w);
    return d;
  }
};

/// Weyl dimension formula: prod over positive roots of (lambda+rho, a) / (rho, a).
inline BigInt weyl_dimension(const RootSystem& rs, const Vec& lambda) {
  const Vec shifted = lambda + rs.rho();
  Rational num = 1, den = 1;
  for (const auto& a : rs.positive_roots_fund()) {
    num *= rs.inner(shifted, a);
    den *= rs.inner(rs.rho(), a);
  }
  const Rational q = num / den;
  if (!is_integer(q)) throw MathError("non-integral Weyl dimension");
  return q.get_num();
}

/// Freudenthal recursion over the dominant weights below lambda.
inline Character freudenthal(const RootSystem& rs, const Vec& lambda) {
  if (!RootSystem::is_dominant(lambda)) throw MathError("freudenthal expects a dominant highest weight");
  const int n = rs.rank();
  // Integer-scaled Gram matrix: inner(x, y) = x^T g y / g_den.
  BigInt g_den = 1;
  for (const auto& row : rs.fundamental_gram())
    for (const auto& x : row) mpz_lcm(g_den.get_mpz_t(), g_den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<std::vector<long>> g(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = to_ll(Rational(rs.fundamental_gram()[i][j] * g_den));
  auto ip = [&](const Vec& x, const Vec& y) {
    long s = 0;
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n; ++j) s += x[i] * g[i][j] * y[j];
    }
    return s;
  };
  const auto& roots = rs.positive_roots_fund();
  std::vector<Vec> g_roots;
  for (const auto& a : roots) {
    Vec ga(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ga[i] += g[i][j] * a[j];
    g_roots.push_back(ga);
  }
  auto ip_root = [&](const Vec& x, std::size_t k) {
    long s = 0;
    for (int i = 0; i < n; ++i) s += x[i] * g_roots[k][i];
    return s;
  };

  Character ch;
  ch.highest = lambda;
  const std::vector<Vec> below = rs.weights_below(lambda);
  VecMap<BigInt> mult;
  const Vec rho = rs.rho();
  const long top = ip(lambda + rho, lambda + rho);
  for (const auto& nu : below) {
    if (nu == lambda) {
      mult[nu] = 1;
      continue;
    }
    BigInt num = 0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      Vec w = nu;
      for (;;) {
        w = w + roots[k];
        auto it = mult.find(rs.dominant(w));
        if (it == mult.end()) break;
        num += it->second * ip_root(w, k);
      }
    }
    num *= 2;
    const long den = top - ip(nu + rho, nu + rho);
    if (den <= 0) throw MathError("Freudenthal denominator vanished");
    BigInt q, r;
    const BigInt bden = den;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), bden.get_mpz_t());
    if (r != 0) throw MathError("non-integral Freudenthal multiplicity");
    mult[nu] = q;
  }
  for (const auto& nu : below) ch.dominant[nu] = mult[nu];
  return ch;
}

/// Kostant multiplicity formula: sum over W of sign(w) * P(w(lambda+rho) - (mu+rho)),
/// where P counts decompositions into positive roots.
class KostantOracle {
 public:
  explicit KostantOracle(const RootSystem& rs) : rs_(rs) {}
  explicit KostantOracle(RootSystem&&) = delete;

  /// Number of ways to write `gamma` (simple-root coordinates) as an
  /// N-combination of positive roots.
  BigInt partitions(const Vec& gamma) { return count(gamma, 0); }

  Character character(const Vec& lambda) {
    const int n = rs_.rank();
    const Vec shifted = lambda + rs_.rho();
    // The orbit of a regular weight is in bijection with W; BFS depth parity is the sign.
    std::vector<std::pair<Vec, int>> elems{{shifted, 0}};
    VecSet seen{shifted};
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (int i = 0; i < n; ++i) {
        Vec w = rs_.reflect(elems[k].first, i);
        if (seen.insert(w).second) elems.emplace_back(w, 1 - elems[k].second);
      }
    Character ch;
    ch.highest = lambda;
    for (const auto& mu : rs_.weights_below(lambda)) {
      BigInt m = 0;
      const Vec target = mu + rs_.rho();
      for (const auto& [w, parity] : elems) {
        const RVec c = rs_.root_coords(w - target);
        if (!all_integer(c)) continue;
        const Vec gamma = to_vec(c);
        if (std::any_of(gamma.begin(), gamma.end(), [](long x) { return x < 0; })) continue;
        const BigInt p = partitions(gamma);
        if (parity) m -= p;
        else m += p;
      }
      ch.dominant[mu] = m;
    }
    return ch;
  }

 private:
  const RootSystem& rs_;
  std::map<std::pair<Vec, std::size_t>, BigInt> memo_;

  BigInt count(const Vec& gamma, std::size_t k) {
    if (is_zero(gamma)) return 1;
    const auto& roots = rs_.positive_roots();
    if (k == roots.size()) return 0;
    auto key = std::make_pair(gamma, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    Vec rest = gamma;
    for (;;) {
      total += count(rest, k + 1);
      rest = rest - roots[k];
      if (std::any_of(rest.begin(), rest.end(), [](long x) { return x < 0; })) break;
    }
    memo_.emplace(std::move(key), total);
    return total;
  }
};

inline Character character_oracle(const RootSystem& rs, const Vec& lambda) {
  return KostantOracle(rs).character(lambda);
}

}  // namespace qsym
