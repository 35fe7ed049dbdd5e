#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library's Weyl group, orbit or restriction code.

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;

inline long dot(const Vec& a, const Vec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Classical root systems in the epsilon basis. Vectors carry doubled
/// coordinates so that spin weights stay integral.
struct EpsModel {
  char letter = 'A';
  int rank = 0;
  int dim = 0;                // number of epsilon coordinates
  std::vector<Vec> roots;     // doubled simple roots
  std::vector<Vec> weights;   // doubled fundamental weights

  static EpsModel make(char letter, int n) {
    EpsModel m;
    m.letter = letter;
    m.rank = n;
    m.dim = letter == 'A' ? n + 1 : n;
    auto e = [&](int i) {
      Vec v(m.dim, 0);
      v[i] = 2;
      return v;
    };
    auto add = [](Vec a, const Vec& b, long f = 1) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += f * b[i];
      return a;
    };
    for (int i = 0; i + 1 < m.dim && i < n - (letter == 'A' ? 0 : 1); ++i) m.roots.push_back(add(e(i), e(i + 1), -1));
    if (letter == 'B') m.roots.push_back(e(n - 1));
    if (letter == 'C') m.roots.push_back(add(e(n - 1), e(n - 1)));
    if (letter == 'D') m.roots.push_back(add(e(n - 2), e(n - 1)));
    Vec prefix(m.dim, 0);
    for (int i = 0; i < n; ++i) {
      prefix = add(prefix, e(i));
      m.weights.push_back(prefix);
    }
    Vec all(m.dim, 1);
    if (letter == 'B') m.weights[n - 1] = all;
    if (letter == 'D') {
      Vec minus = all;
      minus[n - 1] = -1;
      m.weights[n - 2] = minus;
      m.weights[n - 1] = all;
    }
    return m;
  }

  Vec to_eps(const Vec& lambda) const {
    Vec x(dim, 0);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < dim; ++j) x[j] += lambda[i] * weights[i][j];
    return x;
  }

  Vec from_eps(const Vec& x) const {
    Vec lambda(rank);
    for (int i = 0; i < rank; ++i) {
      const long num = 2 * dot(x, roots[i]), den = dot(roots[i], roots[i]);
      if (num % den != 0) throw std::logic_error("not a weight");
      lambda[i] = num / den;
    }
    return lambda;
  }

  /// W-orbit as permutations (type A) or signed permutations; for type D the
  /// number of sign changes is even.
  std::set<Vec> orbit(const Vec& lambda) const {
    Vec x = to_eps(lambda);
    std::set<Vec> out;
    if (letter == 'A') {
      std::sort(x.begin(), x.end());
      do out.insert(from_eps(x));
      while (std::next_permutation(x.begin(), x.end()));
      return out;
    }
    const long negatives = std::count_if(x.begin(), x.end(), [](long v) { return v < 0; });
    for (auto& v : x) v = std::abs(v);
    std::sort(x.begin(), x.end());
    const bool has_zero = x.front() == 0;
    do {
      for (unsigned mask = 0; mask < (1u << dim); ++mask) {
        if (letter == 'D' && !has_zero && (std::popcount(mask) - negatives) % 2 != 0) continue;
        Vec y = x;
        for (int j = 0; j < dim; ++j)
          if (mask >> j & 1) y[j] = -y[j];
        out.insert(from_eps(y));
      }
    } while (std::next_permutation(x.begin(), x.end()));
    return out;
  }

  /// Type A only: simple-root coordinates of a weight, false when it is not in the root lattice.
  bool root_coords(const Vec& fund, Vec& coords) const {
    if (letter != 'A') throw std::logic_error("root_coords is implemented for type A");
    const Vec x = to_eps(fund);
    const long total = std::accumulate(x.begin(), x.end(), 0L);
    coords.assign(rank, 0);
    long prefix = 0;
    for (int i = 0; i < rank; ++i) {
      prefix += x[i];
      const long num = dim * prefix - (i + 1) * total;
      if (num % (2 * dim) != 0) return false;
      coords[i] = num / (2 * dim);
    }
    return true;
  }
};

/// s_i(lambda) = lambda - lambda_i alpha_i, with alpha_i the i-th row of the Cartan matrix.
inline Vec reflect(const std::vector<Vec>& cartan, Vec v, int i) {
  const long c = v[i];
  for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * cartan[i][j];
  return v;
}

/// Orbit closure under all simple reflections, by breadth-first search.
inline std::set<Vec> closure(const std::vector<Vec>& cartan, const Vec& start) {
  std::set<Vec> seen{start};
  std::vector<Vec> todo{start};
  while (!todo.empty()) {
    Vec v = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < cartan.size(); ++i) {
      Vec w = reflect(cartan, v, static_cast<int>(i));
      if (seen.insert(w).second) todo.push_back(std::move(w));
    }
  }
  return seen;
}

/// All roots in fundamental coordinates: the union of the orbits of the simple roots.
inline std::set<Vec> all_roots(const std::vector<Vec>& cartan) {
  std::set<Vec> roots;
  for (const auto& a : cartan) {
    auto o = closure(cartan, a);
    roots.insert(o.begin(), o.end());
  }
  return roots;
}

inline bool dominant(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x >= 0; });
}

/// m(lambda) m(mu) = sum_nu c_nu m(nu), c_nu = #{(a, b) in W lambda x W mu : a + b = nu}, nu dominant.
inline std::map<Vec, long> orbit_product(const std::vector<Vec>& cartan, const Vec& lambda, const Vec& mu) {
  std::map<Vec, long> out;
  const auto a = closure(cartan, lambda), b = closure(cartan, mu);
  for (const auto& x : a)
    for (const auto& y : b) {
      Vec s(x.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = x[i] + y[i];
      if (dominant(s)) ++out[s];
    }
  return out;
}

/// eta-coordinates of a weight restricted along the pairing e_{2j-1}, e_{2j} -> f_j.
/// `series` is 'A' (AII) or 'C' (CII(ii), DIII(i)); the last coordinate is y_t for 'C'.
inline Vec paired_restriction(const EpsModel& m, const Vec& lambda, char series) {
  const Vec x = m.to_eps(lambda);
  const int t = series == 'A' ? (m.dim - 2) / 2 : m.dim / 2;
  Vec y(t + 1, 0);
  for (int j = 0; j < t + (series == 'A' ? 1 : 0); ++j) y[j] = x[2 * j] + x[2 * j + 1];
  Vec eta(t);
  for (int j = 0; j < t; ++j) eta[j] = (y[j] - y[j + 1]) / 2;
  return eta;
}

/// Number of i-subsets of {1..2t+2} whose pair counts (c_1..c_{t+1}) restrict to `target`
/// in AII, where the restriction of e_S is sum_j c_j f_j.
inline long aii_subset_fiber(int t, int i, const Vec& target) {
  const int n = 2 * t + 2;
  long count = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != i) continue;
    Vec c(t + 1);
    for (int j = 0; j <= t; ++j) c[j] = (mask >> (2 * j) & 1) + (mask >> (2 * j + 1) & 1);
    Vec eta(t);
    for (int j = 0; j < t; ++j) eta[j] = c[j] - c[j + 1];
    if (eta == target) ++count;
  }
  return count;
}

}  // namespace oracle
