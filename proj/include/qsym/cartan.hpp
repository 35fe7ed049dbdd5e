#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsym/arith.hpp"

namespace qsym {

class InvalidCartan : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One irreducible component of a Cartan matrix together with a Bourbaki
/// ordering: `nodes[k]` is the local index playing the role of simple root k+1.
struct CartanComponent {
  char letter = 'A';
  int rank = 0;
  std::vector<int> nodes;
  std::string label() const { return std::string(1, letter) + std::to_string(rank); }
};

namespace detail {

inline IMatrix standard_cartan(char letter, int n) {
  auto valid = [&] {
    switch (letter) {
      case 'A': return n >= 1;
      case 'B': return n >= 2;
      case 'C': return n >= 2;
      case 'D': return n >= 4;
      case 'E': return n >= 6 && n <= 8;
      case 'F': return n == 4;
      case 'G': return n == 2;
      default: return false;
    }
  };
  if (!valid()) throw InvalidCartan(std::string("unknown Cartan type ") + letter + std::to_string(n));
  IMatrix a(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j, int aij = -1, int aji = -1) {
    a[i - 1][j - 1] = aij;
    a[j - 1][i - 1] = aji;
  };
  switch (letter) {
    case 'A':
      for (int i = 1; i < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 1, n, -2, -1);
      break;
    case 'C':
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 1, n, -1, -2);
      break;
    case 'D':
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 2, n);
      break;
    case 'E':
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(1, 2);
      link(2, 3, -2, -1);
      link(3, 4);
      break;
    case 'G':
      link(1, 2, -1, -3);
      break;
  }
  return a;
}

inline BigInt weyl_order_of(char letter, int n) {
  BigInt fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  switch (letter) {
    case 'A': return fact * (n + 1);
    case 'B':
    case 'C': return fact * (BigInt(1) << n);
    case 'D': return fact * (BigInt(1) << (n - 1));
    case 'E':
      if (n == 6) return 51840;
      if (n == 7) return 2903040;
      return 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw InvalidCartan("unknown type");
}

/// All bijections sigma with local[sigma[a]][sigma[b]] == std[a][b], up to `cap`.
inline std::vector<std::vector<int>> isomorphisms(const IMatrix& std_m, const IMatrix& local,
                                                  std::size_t cap = 64) {
  const int n = static_cast<int>(std_m.size());
  std::vector<std::vector<int>> found;
  if (static_cast<int>(local.size()) != n) return found;
  std::vector<int> sigma(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> go = [&](int a) {
    if (found.size() >= cap) return;
    if (a == n) {
      found.push_back(sigma);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (int b = 0; b < a && ok; ++b)
        ok = local[v][sigma[b]] == std_m[a][b] && local[sigma[b]][v] == std_m[b][a];
      if (!ok) continue;
      sigma[a] = v;
      used[v] = 1;
      go(a + 1);
      used[v] = 0;
    }
  };
  go(0);
  return found;
}

}  // namespace detail

/// A Cartan matrix with entries a(i,j) = <alpha_i, alpha_j^vee> and the
/// invariant form normalised so that short roots of each component have
/// squared length 2.
class CartanDatum {
 public:
  CartanDatum() = default;

  static CartanDatum standard(char letter, int rank) {
    CartanDatum c(detail::standard_cartan(letter, rank));
    c.label_ = std::string(1, letter) + std::to_string(rank);
    return c;
  }

  /// Parses labels such as "A5", "E6" or products "A1xA1".
  static CartanDatum parse(const std::string& label) {
    std::vector<CartanDatum> parts;
    std::stringstream ss(label);
    std::string piece;
    while (std::getline(ss, piece, 'x')) {
      if (piece.size() < 2) throw InvalidCartan("bad Cartan label '" + label + "'");
      int r = 0;
      try {
        r = std::stoi(piece.substr(1));
      } catch (const std::exception&) {
        throw InvalidCartan("bad Cartan label '" + label + "'");
      }
      parts.push_back(standard(piece[0], r));
    }
    if (parts.size() == 1) return parts.front();
    std::size_t n = 0;
    for (auto& p : parts) n += p.rank();
    IMatrix a(n, Vec(n, 0));
    std::size_t off = 0;
    for (auto& p : parts) {
      for (int i = 0; i < p.rank(); ++i)
        for (int j = 0; j < p.rank(); ++j) a[off + i][off + j] = p.a(i, j);
      off += p.rank();
    }
    return CartanDatum(std::move(a));
  }

  explicit CartanDatum(IMatrix a) : a_(std::move(a)) { validate_and_classify(); }

  int rank() const { return static_cast<int>(a_.size()); }
  long a(int i, int j) const { return a_[i][j]; }
  const IMatrix& matrix() const { return a_; }
  /// Squared length (alpha_i, alpha_i).
  const Rational& root_sq(int i) const { return sq_[i]; }
  /// (alpha_i, alpha_j).
  Rational root_inner(int i, int j) const { return Rational(a_[i][j]) * sq_[j] / 2; }
  const std::vector<CartanComponent>& components() const { return components_; }
  const std::string& label() const { return label_; }
  bool irreducible() const { return components_.size() == 1; }

  BigInt weyl_order() const {
    BigInt w = 1;
    for (const auto& c : components_) w *= detail::weyl_order_of(c.letter, c.rank);
    return w;
  }

  /// Cartan datum of the subdiagram on `nodes` (local order follows `nodes`).
  CartanDatum sub(const std::vector<int>& nodes) const {
    IMatrix s(nodes.size(), Vec(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = 0; j < nodes.size(); ++j) s[i][j] = a_[nodes[i]][nodes[j]];
    return CartanDatum(std::move(s));
  }

  bool operator==(const CartanDatum& o) const { return a_ == o.a_; }

 private:
  IMatrix a_;
  std::vector<Rational> sq_;
  std::vector<CartanComponent> components_;
  std::string label_;

  void validate_and_classify() {
    const int n = rank();
    if (n == 0) {
      label_ = "trivial";
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(a_[i].size()) != n) throw InvalidCartan("Cartan matrix is not square");
      if (a_[i][i] != 2) throw InvalidCartan("Cartan diagonal must be 2");
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (a_[i][j] > 0) throw InvalidCartan("positive off-diagonal Cartan entry");
        if ((a_[i][j] == 0) != (a_[j][i] == 0)) throw InvalidCartan("Cartan matrix zero pattern is not symmetric");
      }
    }
    // Connected components and symmetrizer.
    sq_.assign(n, Rational(0));
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> members{s};
      comp[s] = static_cast<int>(comps.size());
      sq_[s] = 1;
      for (std::size_t k = 0; k < members.size(); ++k) {
        const int i = members[k];
        for (int j = 0; j < n; ++j) {
          if (j == i || a_[i][j] == 0) continue;
          // a_ij d_j = a_ji d_i
          Rational dj = sq_[i] * Rational(a_[j][i]) / Rational(a_[i][j]);
          if (comp[j] < 0) {
            comp[j] = comp[s];
            sq_[j] = dj;
            members.push_back(j);
          } else if (sq_[j] != dj) {
            throw InvalidCartan("Cartan matrix is not symmetrizable");
          }
        }
      }
      Rational mn = sq_[members[0]];
      for (int i : members) mn = std::min(mn, sq_[i]);
      for (int i : members) sq_[i] = sq_[i] * 2 / mn;
      std::sort(members.begin(), members.end());
      comps.push_back(members);
    }
    std::string lab;
    for (const auto& members : comps) {
      const int r = static_cast<int>(members.size());
      IMatrix local(r, Vec(r));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) local[i][j] = a_[members[i]][members[j]];
      bool matched = false;
      for (char letter : std::string("ABCDEFG")) {
        IMatrix std_m;
        try {
          std_m = detail::standard_cartan(letter, r);
        } catch (const InvalidCartan&) {
          continue;
        }
        auto isos = detail::isomorphisms(std_m, local, 1);
        if (isos.empty()) continue;
        CartanComponent c;
        c.letter = letter;
        c.rank = r;
        for (int k : isos.front()) c.nodes.push_back(members[k]);
        components_.push_back(c);
        if (!lab.empty()) lab += "x";
        lab += c.label();
        matched = true;
        break;
      }
      if (!matched) throw InvalidCartan("Cartan matrix is not of finite type");
    }
    label_ = lab;
  }
};

/// All Bourbaki orderings of `local` as type letter+rank (empty if not of that type).
inline std::vector<std::vector<int>> bourbaki_orderings(const CartanDatum& local, char letter, int rank) {
  IMatrix std_m;
  try {
    std_m = detail::standard_cartan(letter, rank);
  } catch (const InvalidCartan&) {
    return {};
  }
  return detail::isomorphisms(std_m, local.matrix());
}

}  // namespace qsym
