#pragma once

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "qsym/cartan.hpp"

namespace qsym {

struct VecHash {
  std::size_t operator()(const Vec& v) const { return boost::hash_range(v.begin(), v.end()); }
};

template <class T>
using VecMap = std::unordered_map<Vec, T, VecHash>;
using VecSet = std::unordered_set<Vec, VecHash>;

enum class Basis { fundamental, simple_root };

/// A weight with exact rational coordinates in a tagged basis.
struct Weight {
  Basis basis = Basis::fundamental;
  RVec coords;

  static Weight fundamental(const Vec& v) { return {Basis::fundamental, to_rvec(v)}; }
  bool operator==(const Weight& o) const { return basis == o.basis && coords == o.coords; }
};

class OrbitTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DominantResult {
  Vec dominant;
  /// Reflections applied left to right: dominant = s_{word.back()} ... s_{word.front()} v.
  std::vector<int> word;
};

/// Root system attached to a Cartan datum. Lattice points are integral
/// vectors of fundamental-weight coordinates.
class RootSystem {
 public:
  RootSystem() = default;

  /// `dominance_scale[i]` rescales the i-th simple root used for the dominance
  /// order (1/2 when the order is generated by half of a simple root).
  explicit RootSystem(CartanDatum c, std::vector<Rational> dominance_scale = {})
      : cartan_(std::move(c)), scale_(std::move(dominance_scale)) {
    const int n = rank();
    if (scale_.empty()) scale_.assign(n, Rational(1));
    RMatrix at(n, RVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) at[i][j] = Rational(cartan_.a(j, i));
    to_root_ = n ? inverse(at) : RMatrix{};
    gram_.assign(n, RVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram_[i][j] = to_root_[i][j] * cartan_.root_sq(i) / 2;
    build_positive_roots();
    w0_word_ = longest_word(all_nodes());
    weyl_order_ = cartan_.weyl_order();
  }

  const CartanDatum& cartan() const { return cartan_; }
  int rank() const { return cartan_.rank(); }
  const BigInt& weyl_order() const { return weyl_order_; }
  /// Positive roots in simple-root coordinates, sorted by height.
  const std::vector<Vec>& positive_roots() const { return pos_root_; }
  /// Positive roots in fundamental-weight coordinates (same order).
  const std::vector<Vec>& positive_roots_fund() const { return pos_fund_; }
  const std::vector<Rational>& dominance_scale() const { return scale_; }
  /// (omega_i, omega_j).
  const RMatrix& fundamental_gram() const { return gram_; }
  Vec rho() const { return Vec(rank(), 1); }
  Vec simple_root(int i) const { return Vec(cartan_.matrix()[i]); }

  Rational inner(const Vec& a, const Vec& b) const {
    Rational s = 0;
    for (int i = 0; i < rank(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < rank(); ++j)
        if (b[j] != 0) s += gram_[i][j] * Rational(a[i] * b[j]);
    }
    return s;
  }
  Rational inner(const RVec& a, const RVec& b) const { return dot(a, mat_vec(gram_, b)); }
  Rational inner(const Weight& a, const Weight& b) const {
    return inner(to_fundamental(a).coords, to_fundamental(b).coords);
  }

  Weight to_fundamental(const Weight& w) const {
    if (w.basis == Basis::fundamental) return w;
    RVec f(rank(), Rational(0));
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) f[j] += w.coords[i] * Rational(cartan_.a(i, j));
    return {Basis::fundamental, f};
  }
  Weight to_simple_root(const Weight& w) const {
    if (w.basis == Basis::simple_root) return w;
    return {Basis::simple_root, mat_vec(to_root_, w.coords)};
  }
  RVec root_coords(const Vec& v) const { return mat_vec(to_root_, to_rvec(v)); }

  /// Sum of simple-root coordinates.
  Rational height(const Vec& v) const {
    Rational h = 0;
    for (const auto& c : root_coords(v)) h += c;
    return h;
  }

  template <class T>
  void reflect_inplace(std::vector<T>& v, int i) const {
    const T c = v[i];
    if (c == 0) return;
    for (int j = 0; j < rank(); ++j) v[j] -= c * static_cast<T>(cartan_.a(i, j));
  }
  Vec reflect(Vec v, int i) const {
    reflect_inplace(v, i);
    return v;
  }
  template <class T>
  std::vector<T> apply_word(std::vector<T> v, const std::vector<int>& word) const {
    for (int i : word) reflect_inplace(v, i);
    return v;
  }
  Weight reflect(const Weight& w, int i) const {
    Weight f = to_fundamental(w);
    reflect_inplace(f.coords, i);
    return w.basis == Basis::fundamental ? f : to_simple_root(f);
  }

  template <class T>
  static bool is_dominant(const std::vector<T>& v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x >= 0; });
  }

  DominantResult dominant_representative(Vec v) const {
    DominantResult r;
    for (;;) {
      int i = 0;
      while (i < rank() && v[i] >= 0) ++i;
      if (i == rank()) break;
      reflect_inplace(v, i);
      r.word.push_back(i);
    }
    r.dominant = std::move(v);
    return r;
  }
  Vec dominant(const Vec& v) const { return dominant_representative(v).dominant; }

  /// Reduced word for the longest element of the parabolic subgroup on `nodes`.
  std::vector<int> longest_word(const std::vector<int>& nodes) const {
    std::vector<char> in(rank(), 0);
    for (int j : nodes) in[j] = 1;
    Vec v(rank(), 0);
    for (int j : nodes) v[j] = 1;
    std::vector<int> word;
    for (;;) {
      int pick = -1;
      for (int j : nodes)
        if (v[j] > 0) {
          pick = j;
          break;
        }
      if (pick < 0) break;
      reflect_inplace(v, pick);
      word.push_back(pick);
    }
    return word;
  }
  const std::vector<int>& longest_word() const { return w0_word_; }
  Vec longest_element_action(const Vec& v) const { return apply_word(v, w0_word_); }

  BigInt stabilizer_order(const Vec& v) const {
    const Vec d = dominant(v);
    std::vector<int> zero;
    for (int i = 0; i < rank(); ++i)
      if (d[i] == 0) zero.push_back(i);
    if (zero.empty()) return 1;
    return cartan_.sub(zero).weyl_order();
  }
  BigInt orbit_size(const Vec& v) const { return weyl_order_ / stabilizer_order(v); }

  /// Orbit W.v in breadth-first order from the dominant representative.
  std::vector<Vec> orbit(const Vec& v, std::size_t max_size = 2000000) const {
    return orbit_under(v, all_nodes(), max_size);
  }

  /// Orbit under the parabolic subgroup generated by `nodes`.
  std::vector<Vec> orbit_under(const Vec& v, const std::vector<int>& nodes,
                               std::size_t max_size = 2000000) const {
    if (nodes.size() == static_cast<std::size_t>(rank())) {
      const BigInt sz = orbit_size(v);
      if (sz > BigInt(static_cast<unsigned long>(max_size)))
        throw OrbitTooLarge("orbit of size " + sz.get_str() + " exceeds limit " + std::to_string(max_size));
    }
    Vec start = v;
    // Move to the parabolic-dominant representative so only descending moves are needed.
    for (bool moved = true; moved;) {
      moved = false;
      for (int j : nodes)
        if (start[j] < 0) {
          reflect_inplace(start, j);
          moved = true;
        }
    }
    std::vector<Vec> out{start};
    VecSet seen{start};
    for (std::size_t k = 0; k < out.size(); ++k) {
      for (int j : nodes) {
        if (out[k][j] <= 0) continue;
        Vec w = reflect(out[k], j);
        if (seen.insert(w).second) {
          out.push_back(std::move(w));
          if (out.size() > max_size) throw OrbitTooLarge("orbit exceeds limit " + std::to_string(max_size));
        }
      }
    }
    return out;
  }

  /// mu - lambda lies in the nonnegative integer span of the (scaled) simple roots.
  bool dominance_leq(const Vec& lambda, const Vec& mu) const {
    const RVec c = root_coords(mu - lambda);
    for (int i = 0; i < rank(); ++i) {
      const Rational x = c[i] / scale_[i];
      if (x < 0 || !is_integer(x)) return false;
    }
    return true;
  }
  bool dominance_leq(const Weight& lambda, const Weight& mu) const {
    RVec a = to_simple_root(lambda).coords, b = to_simple_root(mu).coords;
    for (int i = 0; i < rank(); ++i) {
      const Rational x = (b[i] - a[i]) / scale_[i];
      if (x < 0 || !is_integer(x)) return false;
    }
    return true;
  }

  /// Dominant weights mu <= lambda (lambda dominant), by decreasing height then
  /// lexicographically. Enumerates mu = lambda - sum c_j (scaled alpha_j) over the
  /// box 0 <= c_j <= (lambda, omega_j) / (scaled alpha_j, omega_j).
  std::vector<Vec> weights_below(const Vec& lambda) const {
    if (!is_dominant(lambda)) throw MathError("weights_below expects a dominant weight");
    const int n = rank();
    std::vector<long> bound(n);
    std::vector<RVec> step(n);
    for (int j = 0; j < n; ++j) {
      Rational lam_om = 0;
      for (int i = 0; i < n; ++i) lam_om += Rational(lambda[i]) * gram_[i][j];
      const Rational per = scale_[j] * cartan_.root_sq(j) / 2;
      BigInt fl;
      const Rational q = lam_om / per;
      mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
      bound[j] = to_ll(fl);
      step[j].resize(n);
      for (int k = 0; k < n; ++k) step[j][k] = scale_[j] * Rational(cartan_.a(j, k));
    }
    std::vector<Vec> out;
    RVec cur = to_rvec(lambda);
    std::function<void(int)> rec = [&](int j) {
      if (j == n) {
        if (all_integer(cur) && is_dominant(cur)) out.push_back(to_vec(cur));
        return;
      }
      RVec saved = cur;
      for (long c = 0; c <= bound[j]; ++c) {
        rec(j + 1);
        for (int k = 0; k < n; ++k) cur[k] -= step[j][k];
      }
      cur = std::move(saved);
    };
    rec(0);
    std::vector<std::pair<Rational, Vec>> keyed;
    keyed.reserve(out.size());
    for (auto& v : out) keyed.emplace_back(height(v), std::move(v));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    out.clear();
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
    return out;
  }

  std::vector<int> all_nodes() const {
    std::vector<int> v(rank());
    for (int i = 0; i < rank(); ++i) v[i] = i;
    return v;
  }

 private:
  CartanDatum cartan_;
  std::vector<Rational> scale_;
  RMatrix to_root_;
  RMatrix gram_;
  std::vector<Vec> pos_root_;
  std::vector<Vec> pos_fund_;
  std::vector<int> w0_word_;
  BigInt weyl_order_;

  void build_positive_roots() {
    const int n = rank();
    std::set<Vec> known;
    std::vector<Vec> layer;
    for (int i = 0; i < n; ++i) {
      layer.push_back(unit_vec(n, i));
      known.insert(layer.back());
    }
    std::vector<Vec> all;
    while (!layer.empty()) {
      std::vector<Vec> next;
      for (const auto& beta : layer) {
        all.push_back(beta);
        for (int i = 0; i < n; ++i) {
          long p = 0;
          Vec down = beta;
          for (;;) {
            down[i] -= 1;
            if (!known.count(down)) break;
            ++p;
          }
          long pairing = 0;  // <beta, alpha_i^vee>
          for (int j = 0; j < n; ++j) pairing += beta[j] * cartan_.a(j, i);
          if (p - pairing > 0) {
            Vec up = beta;
            up[i] += 1;
            if (known.insert(up).second) next.push_back(up);
          }
        }
      }
      std::sort(next.begin(), next.end());
      layer = std::move(next);
    }
    pos_root_ = std::move(all);
    for (const auto& r : pos_root_) {
      Vec f(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f[j] += r[i] * cartan_.a(i, j);
      pos_fund_.push_back(f);
    }
  }
};

}  // namespace qsym
