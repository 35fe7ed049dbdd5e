#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "oracles.hpp"
#include "qsym/verify.hpp"

using namespace qsym;

namespace {

const Catalog& catalog() {
  static const Catalog cat = Catalog::load();
  return cat;
}

RootSystem rs(char letter, int n) { return RootSystem(CartanDatum::standard(letter, n)); }

LaurentScalar q(long num, long den = 1) { return LaurentScalar::q_power(rat(num, den)); }

CharacterElement random_element(std::mt19937& gen, Lattice l, int rank) {
  std::uniform_int_distribution<long> coeff(-2, 2), key(-2, 2), exp(-3, 3), terms(0, 4);
  CharacterElement e(l);
  for (long k = terms(gen); k > 0; --k) {
    Vec v(rank);
    for (auto& x : v) x = key(gen);
    e.add_term(v, LaurentScalar::monomial(rat(coeff(gen)), rat(exp(gen))));
  }
  return e;
}

/// Image of the orbit sum of omega_i on AII A_{2t+1}, built from i-subsets of {1..2t+2}:
/// exponent sum_{j in S} (n + 2 - 2j), torus key from the pair counts.
CharacterElement aii_image_from_subsets(int t, int i) {
  const int n = 2 * t + 1;
  CharacterElement out(Lattice::torus);
  for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
    if (std::popcount(mask) != i) continue;
    long e = 0;
    for (int j = 1; j <= n + 1; ++j)
      if (mask >> (j - 1) & 1) e += n + 2 - 2 * j;
    Vec c(t + 1), key(t);
    for (int j = 0; j <= t; ++j) c[j] = (mask >> (2 * j) & 1) + (mask >> (2 * j + 1) & 1);
    for (int j = 0; j < t; ++j) key[j] = c[j] - c[j + 1];
    out.add_term(key, q(e));
  }
  return out;
}

}  // namespace

TEST(Character, RingAxiomsOnRandomElements) {
  std::mt19937 gen(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_element(gen, Lattice::torus, 2), b = random_element(gen, Lattice::torus, 2),
               c = random_element(gen, Lattice::torus, 2);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a * CharacterElement::one(Lattice::torus, 2), a);
  }
  EXPECT_THROW(CharacterElement::one(Lattice::torus, 1) * CharacterElement::one(Lattice::ambient, 1), LatticeMismatch);
}

TEST(Character, JsonRoundTrip) {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_element(gen, Lattice::restricted, 3);
    EXPECT_EQ(CharacterElement::from_json(nlohmann::json::parse(a.to_json().dump())), a);
  }
  const OrbitBasis hm = OrbitBasis::hat_m(rs('A', 2));
  const auto e = hm.expand(hm.element({1, 0}) * hm.element({0, 1}));
  EXPECT_EQ(OrbitExpansion::from_json(nlohmann::json::parse(e.to_json().dump())), e);
}

TEST(OrbitBasis, StructureConstantsMatchPairCounting) {
  for (auto [l, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'G', 2}, {'A', 3}, {'C', 3}}) {
    const auto sys = rs(l, n);
    const OrbitBasis m = OrbitBasis::m(sys);
    std::vector<Vec> small;
    for (int i = 0; i < n; ++i) small.push_back(unit_vec(n, i));
    small.push_back(Vec(n, 1));
    for (const auto& a : small)
      for (const auto& b : small) {
        const auto brute = oracle::orbit_product(sys.cartan().matrix(), a, b);
        const auto got = m.expand(m.element(a) * m.element(b));
        ASSERT_EQ(got.coeffs.size(), brute.size()) << l << n;
        for (const auto& [key, count] : brute) EXPECT_EQ(got.coefficient(key), LaurentScalar(rat(count))) << l << n;
      }
  }
}

TEST(OrbitBasis, HatTauOnA1) {
  const OrbitBasis ht = OrbitBasis::hat_tau(rs('A', 1));
  CharacterElement expected(Lattice::ambient);
  expected.add_term({1}, q(1, 2));
  expected.add_term({-1}, q(-1, 2));
  EXPECT_EQ(ht.element({1}), expected);
  EXPECT_EQ(ht.element({0}), CharacterElement::monomial(Lattice::ambient, {0}, LaurentScalar(2)));
  EXPECT_TRUE(ht.is_invariant(ht.element({3})));
}

TEST(OrbitBasis, DottedInvarianceAndExpansion) {
  const auto sys = rs('B', 2);
  const OrbitBasis hm = OrbitBasis::hat_m(sys);
  const auto x = hm.element({1, 0}) * hm.element({0, 1}) + LaurentScalar(3) * hm.element({0, 2});
  EXPECT_TRUE(hm.is_invariant(x));
  EXPECT_EQ(hm.dotted_act({0, 1, 0}, x), x);
  EXPECT_EQ(hm.rebuild(hm.expand(x)), x);
  const auto lone = CharacterElement::monomial(Lattice::torus, {1, 0});
  EXPECT_FALSE(hm.is_invariant(lone));
  EXPECT_THROW(hm.expand(lone), NotInvariant);
  EXPECT_THROW(hm.expand(CharacterElement::one(Lattice::ambient, 2)), LatticeMismatch);
  const auto plain = hat_to_plain(hm, hm.element({1, 0}));
  EXPECT_EQ(plain, OrbitBasis::m(sys).element({1, 0}));
}

TEST(OrbitBasis, TipIsDominanceMinimal) {
  const auto sys = rs('A', 2);
  const OrbitBasis hm = OrbitBasis::hat_m(sys);
  const auto t = hm.tip(hm.element({1, 1}));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.terms().begin()->first, (Vec{-1, -1}));
  EXPECT_THROW(hm.tip(CharacterElement(Lattice::torus)), MathError);
}

TEST(Polynomial, DivisionAndGcd) {
  const Polynomial x({rat(0), rat(1)});
  const Polynomial a = (x - Polynomial(rat(1))) * (x - Polynomial(rat(2)));
  const Polynomial b = (x - Polynomial(rat(1))) * (x + Polynomial(rat(3)));
  EXPECT_EQ(gcd(a, b), x - Polynomial(rat(1)));
  std::mt19937 gen(11);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> pc(4), dc(2);
    for (auto& c : pc) c = d(gen);
    for (auto& c : dc) c = d(gen);
    dc[1] = dc[1] == 0 ? 1 : dc[1];
    const Polynomial p(pc), dv(dc);
    const auto [quo, rem] = p.divmod(dv);
    EXPECT_EQ(quo * dv + rem, p);
    EXPECT_LT(rem.degree(), dv.degree());
  }
  EXPECT_THROW(a.exact_div(x - Polynomial(rat(5))), MathError);
}

TEST(Polynomial, FractionFreeSolve) {
  const Polynomial x({rat(0), rat(1)});
  const Polynomial one(rat(1));
  // [[x, 1], [1, x]] v = [1, 1]  =>  v = (1, 1) / (x + 1)
  auto sol = solve_fraction_free({{x, one}, {one, x}}, {one, one});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->numerators[0] * (x + one), sol->denominator);
  EXPECT_EQ(sol->numerators[1] * (x + one), sol->denominator);
  EXPECT_FALSE(solve_fraction_free({{x}, {x}}, {one, x}).has_value());
}

TEST(Membership, ProductCertificateOnAbstractA2) {
  const OrbitBasis hm = OrbitBasis::hat_m(rs('A', 2));
  const std::vector<NamedElement> gens{{"a", hm.element({1, 0})}, {"b", hm.element({0, 1})}};
  const NamedElement target{"t", hm.element({1, 0}) * hm.element({0, 1}) - hm.element({0, 0})};
  const auto res = membership_bounded(hm, target, gens, 2);
  ASSERT_EQ(res.status, MembershipStatus::member);
  ASSERT_TRUE(res.certificate);
  EXPECT_TRUE(res.certificate->residual_zero);
  EXPECT_TRUE(verify_certificate(*res.certificate, target.element, gens));
  EXPECT_EQ(res.certificate->to_json().at("target"), "t");

  const auto miss = membership_bounded(hm, {"a", hm.element({1, 0})}, {gens[1]}, 2, Vec{1, 0});
  EXPECT_EQ(miss.status, MembershipStatus::non_member_up_to_bound);
  MembershipLimits tight;
  tight.max_columns = 1;
  EXPECT_EQ(membership_bounded(hm, target, gens, 2, std::nullopt, tight).status, MembershipStatus::inconclusive);
}

TEST(Images, AiiOrbitImagesMatchSubsetModel) {
  for (int n : {5, 7}) {
    const auto pair = catalog().pair("AII", n);
    const int t = (n - 1) / 2;
    for (int i = 1; i <= n; ++i) EXPECT_EQ(orbit_image(pair, unit_vec(n, i - 1)), aii_image_from_subsets(t, i)) << n << " " << i;
  }
}

TEST(Images, AiiA5Generators) {
  const auto pair = catalog().pair("AII", 5);
  const OrbitBasis hm = OrbitBasis::hat_m(pair);
  const auto z1 = hm.expand(orbit_image(pair, unit_vec(5, 0)));
  EXPECT_EQ(z1.coeffs.size(), 1u);
  EXPECT_EQ(z1.coefficient({1, 0}), q(1) + q(-1));
  const auto z2 = hm.expand(orbit_image(pair, unit_vec(5, 1)));
  EXPECT_EQ(z2.coefficient({2, 0}), LaurentScalar(1));
  EXPECT_EQ(z2.coefficient({0, 1}), q(2) + LaurentScalar(2) + q(-2));
  const auto z5 = hm.expand(orbit_image(pair, unit_vec(5, 4)));
  EXPECT_EQ(z5.coefficient({0, 1}), q(1) + q(-1));
}

TEST(Images, FiberCountsMatchSubsetEnumeration) {
  for (int n : {5, 7}) {
    const auto pair = catalog().pair("AII", n);
    const int t = (n - 1) / 2;
    for (int i = 1; i <= t + 1; ++i)
      for (const auto& row : fiber_table(pair, i)) {
        EXPECT_EQ(row.computed, oracle::aii_subset_fiber(t, i, row.target)) << n << " " << i;
        EXPECT_EQ(row.computed, row.proof_value);
        if (row.s > 0) {
          EXPECT_NE(row.computed, row.statement_value);
        }
      }
  }
  EXPECT_THROW(aii_restricted_rank(catalog().pair("DIII(i)", 8)), std::invalid_argument);
  EXPECT_THROW(fiber_table(catalog().pair("AII", 5), 9), std::out_of_range);
}

TEST(Images, CoefficientsAtOneMatchClosedForm) {
  for (int n : {5, 7}) {
    const auto pair = catalog().pair("AII", n);
    for (int i = 1; i <= n; ++i) {
      const auto f = f_coefficients(pair, i);
      EXPECT_TRUE(f.nonnegative);
      EXPECT_EQ(f.at_one, hat_M((n - 1) / 2, i)) << n << " " << i;
    }
  }
}

TEST(Images, TypeAProductsMatchPairCounting) {
  for (int t = 2; t <= 4; ++t) {
    const auto sys = type_a(t);
    for (int r = 0; r <= t; ++r)
      for (int k = std::max(r, 1); r + k <= t + 1; ++k) {
        const ProductCheck c = verify_m_product(t, r, k);
        EXPECT_TRUE(c.holds()) << t << " " << r << " " << k;
        const auto brute = oracle::orbit_product(sys.cartan().matrix(), eta_sum(t, r, 0), eta_sum(t, k, 0));
        std::map<Vec, Rational> want;
        for (const auto& [key, cnt] : brute) want[key] = cnt;
        EXPECT_EQ(c.direct.specialize(1), want);
      }
  }
}

TEST(Images, DominanceIntervalMatchesPrefixSums) {
  for (int t = 2; t <= 5; ++t) {
    const auto eps = oracle::EpsModel::make('A', t);
    for (int r = 1; r <= t; ++r)
      for (int k = r; r + k <= t + 1; ++k) {
        const IntervalCheck c = verify_dominance_interval(t, r, k);
        EXPECT_TRUE(c.holds());
        std::set<Vec> brute;
        const Vec top = eta_sum(t, r, k);
        Vec cur(t, 0);
        std::function<void(int)> rec = [&](int j) {
          if (j == t) {
            Vec coords;
            if (cur != top && eps.root_coords(top - cur, coords) &&
                std::all_of(coords.begin(), coords.end(), [](long x) { return x >= 0; }))
              brute.insert(cur);
            return;
          }
          for (long v = 0; v <= 2; ++v) {
            cur[j] = v;
            rec(j + 1);
          }
        };
        rec(0);
        EXPECT_EQ(c.computed, brute) << t << " " << r << " " << k;
      }
  }
}

TEST(Images, BinomialIdentityAndLinearStep) {
  for (int i = 0; i <= 30; ++i) EXPECT_TRUE(binomial_identity(i));
  for (int t = 1; t <= 5; ++t)
    for (int l = 1; 2 * l <= t + 1; ++l) EXPECT_TRUE(linear_step_check(t, l));
}

TEST(Images, CentralImagesAreNormalizedAndInvariant) {
  const auto ai = catalog().pair("AI", 2);
  const auto adj = central_image(ai, {1, 1});
  const auto c = check_image(ai, adj);
  EXPECT_TRUE(c.unit_normalized);
  EXPECT_TRUE(c.invariant);
  EXPECT_TRUE(c.rebuilds);
  const auto aii = catalog().pair("AII", 5);
  for (int i = 0; i < 5; ++i) {
    const auto ci = check_image(aii, central_image(aii, unit_vec(5, i)));
    EXPECT_TRUE(ci.unit_normalized && ci.invariant && ci.rebuilds) << i;
    EXPECT_TRUE(tip_check(aii, unit_vec(5, i)).holds()) << i;
  }
  ImageLimits tiny;
  tiny.max_dim_terms = 3;
  EXPECT_THROW(central_image(ai, {1, 1}, tiny), OrbitTooLarge);
  EXPECT_THROW(central_image(ai, {-1, 1}), MathError);
}

TEST(Generation, AiiCertificatesReplay) {
  for (int n : {5, 7}) {
    const auto pair = catalog().pair("AII", n);
    const auto rep = generate_aii(pair);
    ASSERT_EQ(rep.steps.size(), static_cast<std::size_t>((n - 1) / 2));
    EXPECT_TRUE(rep.all_verified());
    for (const auto& s : rep.steps) {
      ASSERT_TRUE(s.result.certificate);
      for (const auto& [mono, c] : s.result.certificate->terms)
        for (const auto& name : mono) {
          if (name[0] != 'Z') continue;
          EXPECT_LE(std::stoi(name.substr(1)), s.index);
        }
    }
  }
}

TEST(Generation, BcPairAndProjections) {
  const auto pair = catalog().pair("DIII(i)", 8);
  EXPECT_EQ(restricted_series(pair), 'C');
  EXPECT_EQ(seed_indices(pair), std::vector<int>{1});
  const auto rep = generate_bc(pair);
  EXPECT_EQ(rep.steps.size(), 4u);
  EXPECT_TRUE(rep.all_verified());
  for (int r = 1; r <= 4; ++r) EXPECT_EQ(projection_check(pair.restricted(), 'C', r).coefficient, rat(r, 4));
  const auto b5 = rs('B', 5);
  for (int r = 1; r < 5; ++r) EXPECT_TRUE(projection_check(b5, 'B', r).holds());
  EXPECT_TRUE(sum_depends_on_r_plus_k(b5, 'B'));
  for (int i = 1; i <= 5; ++i) EXPECT_TRUE(split_check(pair, i).holds()) << i;
  EXPECT_THROW(projection_check(b5, 'A', 1), std::invalid_argument);
}

TEST(Generation, ExceptionalNonMembership) {
  const auto pair = catalog().pair("EIII", 6);
  const auto ev = non_membership_evidence(pair, 2, pair.omega_tilde(1));
  EXPECT_EQ(ev.result.status, MembershipStatus::non_member_up_to_bound);
  EXPECT_TRUE(ev.lattice_obstruction);
}

TEST(Verify, DispatchAndExitCodes) {
  EXPECT_EQ(lemma_ids().size(), 21u);
  VerifyParams p;
  EXPECT_THROW(verify(catalog(), "9.9", p), UsageError);
  EXPECT_THROW(verify(catalog(), "6.3", p), UsageError);
  p.sigma = "A3";
  p.r = 1;
  p.k = 2;
  const auto reps = verify(catalog(), "6.6", p);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].status, Status::pass);
  EXPECT_EQ(reps[0].ms, 0);
  const auto j = reps[0].to_json();
  for (const char* key : {"lemma_id", "params", "status", "expected", "computed", "ms"}) EXPECT_TRUE(j.contains(key));
  p.r = 3;
  EXPECT_THROW(verify(catalog(), "6.6", p), UsageError);

  VerificationReport pass, fail, unsure;
  fail.status = Status::fail;
  unsure.status = Status::inconclusive;
  EXPECT_EQ(exit_code({pass}), 0);
  EXPECT_EQ(exit_code({pass, unsure}), 3);
  EXPECT_EQ(exit_code({unsure, fail}), 1);
}

TEST(Verify, OrbitLimitGivesInconclusive) {
  VerifyParams p;
  p.pair = "AII";
  p.n = 7;
  p.limits.max_orbit = 10;
  const auto reps = verify(catalog(), "6.4", p);
  ASSERT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0].status, Status::inconclusive);
}

TEST(Verify, LatticeVerdictsPerPair) {
  VerifyParams p;
  p.pair = "AII";
  p.n = 5;
  EXPECT_EQ(verify(catalog(), "3.6", p)[0].status, Status::pass);
  p.pair = "FII";
  p.n = 4;
  const auto fii = verify(catalog(), "3.6", p)[0];
  EXPECT_FALSE(fii.computed.at("plus_equal").get<bool>());
  p.pair = "EIV";
  p.n = 6;
  EXPECT_EQ(verify(catalog(), "3.7", p)[0].status, Status::pass);
}
