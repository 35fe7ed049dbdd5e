#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qsym/catalog.hpp"

using namespace qsym;

namespace {

const Catalog& catalog() {
  static const Catalog cat = Catalog::load();
  return cat;
}

std::vector<SymmetricPair> all_instances() {
  std::vector<SymmetricPair> out;
  for (const auto& in : catalog().instances()) out.push_back(catalog().pair(in.label, in.n, in.params));
  return out;
}

Vec negated(Vec v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

TEST(Catalog, LoadsFamiliesAndInstances) {
  EXPECT_EQ(catalog().families().size(), 25u);
  EXPECT_EQ(catalog().instances().size(), 18u);
  EXPECT_EQ(catalog().family("EIII").type, 'E');
  EXPECT_THROW(catalog().family("XI"), CatalogError);
}

TEST(Catalog, RejectsBadParameters) {
  EXPECT_THROW(catalog().pair("AII", 4), CatalogError);
  EXPECT_THROW(catalog().pair("CII(i)", 5), CatalogError);
  EXPECT_THROW(catalog().pair("CII(i)", 5, {{"p", 3}}), CatalogError);
  EXPECT_THROW(catalog().pair("EIII", 7), CatalogError);
  EXPECT_THROW(Catalog::load("/nonexistent/catalog.json"), CatalogError);
  EXPECT_THROW(Catalog::from_json(nlohmann::json::parse(R"({"families": 3})")), CatalogError);
}

TEST(Catalog, IndexExpressions) {
  EXPECT_EQ(IndexExpr::eval("2*p+1", {{"p", 3}}), 7);
  EXPECT_EQ(IndexExpr::eval("n % 2 == 1 && n >= 3", {{"n", 5}}), 1);
  EXPECT_EQ(IndexExpr::eval("(n-1)/2", {{"n", 9}}), 4);
  EXPECT_EQ(IndexExpr::eval("n <= 2 || n > 4", {{"n", 3}}), 0);
  EXPECT_THROW(IndexExpr::eval("n +", {{"n", 1}}), CatalogError);
  EXPECT_THROW(IndexExpr::eval("m", {{"n", 1}}), CatalogError);
}

TEST(Catalog, VariantsSelectByParameter) {
  const auto di = catalog().pair("DI", 5, {{"p", 4}});
  EXPECT_EQ(di.datum().perm[3], 4);
  const auto split = catalog().pair("DI", 5, {{"p", 5}});
  EXPECT_EQ(split.restricted_rank(), 5);
}

TEST(Satake, RejectsBadDiagrams) {
  const auto a3 = CartanDatum::standard('A', 3);
  EXPECT_THROW(SatakeDatum::from_arrows("X", a3, {5}, {}), InvalidSatake);
  EXPECT_THROW(SatakeDatum::from_arrows("X", a3, {}, {{0, 7}}), InvalidSatake);
}

TEST(Satake, ThetaIsAnInvolutionPermutingRoots) {
  for (const auto& pair : all_instances()) {
    const RootSystem& amb = pair.ambient();
    std::set<Vec> roots(amb.positive_roots_fund().begin(), amb.positive_roots_fund().end());
    for (const auto& a : amb.positive_roots_fund()) roots.insert(negated(a));
    for (const auto& a : amb.positive_roots_fund()) {
      EXPECT_TRUE(roots.count(pair.theta(a))) << pair.label();
      EXPECT_EQ(pair.theta(pair.theta(a)), a) << pair.label();
    }
    for (int b : pair.datum().black) EXPECT_EQ(pair.theta_simple_root(b), amb.simple_root(b)) << pair.label();
    for (int i = 0; i < pair.rank(); ++i) EXPECT_EQ(pair.datum().perm[pair.datum().perm[i]], i);
  }
}

TEST(Satake, RestrictedSystems) {
  const std::map<std::string, std::string> expected{
      {"AII5", "A2"},      {"AII7", "A3"},   {"AIII5", "BC2"}, {"CII(i)3", "BC1"}, {"CII(ii)8", "C4"},
      {"DIII(i)8", "C4"},  {"DIII(ii)5", "BC2"}, {"EIII6", "BC2"}, {"EIV6", "A2"},   {"EVII7", "C3"},
      {"EIX8", "F4"},      {"FII4", "BC1"},  {"CI3", "C3"},     {"AI4", "A4"}};
  for (const auto& in : catalog().instances()) {
    const auto key = in.label + std::to_string(in.n);
    auto it = expected.find(key);
    if (it == expected.end()) continue;
    const auto pair = catalog().pair(in.label, in.n, in.params);
    EXPECT_EQ(pair.sigma_label(), it->second) << key;
    EXPECT_EQ(pair.is_bc(), it->second.rfind("BC", 0) == 0) << key;
  }
}

TEST(Satake, PairedRestrictionMatchesEpsilonModel) {
  struct Case {
    std::string label;
    int n;
    char letter;
    char series;
  };
  const std::vector<Case> cases{{"AII", 5, 'A', 'A'}, {"AII", 7, 'A', 'A'}, {"AII", 9, 'A', 'A'},
                                {"CII(ii)", 8, 'C', 'C'}, {"DIII(i)", 8, 'D', 'C'}};
  std::mt19937 gen(3);
  std::uniform_int_distribution<long> d(-3, 3);
  for (const auto& c : cases) {
    const auto pair = catalog().pair(c.label, c.n);
    const auto eps = oracle::EpsModel::make(c.letter, c.n);
    for (int trial = 0; trial < 40; ++trial) {
      Vec lambda(c.n);
      for (auto& x : lambda) x = d(gen);
      EXPECT_EQ(pair.restrict_eta(lambda), oracle::paired_restriction(eps, lambda, c.series)) << c.label << c.n;
    }
  }
}

TEST(Satake, SplitPairsRestrictTrivially) {
  for (const auto& [label, n] : std::vector<std::pair<std::string, int>>{{"AI", 3}, {"CI", 3}}) {
    const auto pair = catalog().pair(label, n);
    EXPECT_EQ(pair.restricted().cartan(), pair.ambient().cartan());
    for (int i = 0; i < n; ++i) EXPECT_EQ(pair.omega_tilde(i), unit_vec(n, i));
  }
}

TEST(Satake, WhiteRepresentativesMatchTabulatedWeights) {
  for (const auto& pair : all_instances())
    for (int i : pair.pi_star()) {
      EXPECT_EQ(pair.omega_tilde(i), pair.omega_tilde_expected(i)) << pair.label() << " node " << i + 1;
      EXPECT_TRUE(pair.rank_one_subpair(i).holds()) << pair.label() << " node " << i + 1;
    }
}

TEST(Satake, RestrictionKillsBlackRootsAndFlipsUnderTheta) {
  for (const auto& pair : all_instances()) {
    const RootSystem& amb = pair.ambient();
    for (int i = 0; i < pair.rank(); ++i) {
      const Vec w = unit_vec(pair.rank(), i);
      const RVec r = pair.restrict_ambient(w);
      for (int b : pair.datum().black) EXPECT_EQ(amb.inner(r, to_rvec(amb.simple_root(b))), 0) << pair.label();
      RVec flipped = pair.restrict_ambient(pair.theta(w));
      for (auto& x : flipped) x = -x;
      EXPECT_EQ(flipped, r) << pair.label();
      EXPECT_EQ(pair.restrict_eta(pair.theta(w)), negated(pair.restrict_eta(w))) << pair.label();
    }
  }
}

TEST(Satake, LatticeComparison) {
  const std::set<std::string> not_plus{"AII7", "AII9", "CII(ii)8", "DIII(i)8", "EIII6", "EIV6", "EVII7", "EIX8", "FII4"};
  for (const auto& in : catalog().instances()) {
    const auto pair = catalog().pair(in.label, in.n, in.params);
    const auto lc = pair.lattice_compare();
    const auto key = in.label + std::to_string(in.n);
    EXPECT_TRUE(lc.full_equal) << key;
    EXPECT_EQ(lc.plus_equal, !not_plus.count(key)) << key;
    for (int j = 0; j < pair.restricted_rank(); ++j) {
      ASSERT_TRUE(lc.full_certificates[j].has_value()) << key;
      Vec sum(pair.restricted_rank(), 0);
      for (std::size_t k = 0; k < lc.omega_tilde.size(); ++k)
        sum = sum + scaled(lc.omega_tilde[k], to_ll((*lc.full_certificates[j])[k]));
      EXPECT_EQ(sum, unit_vec(pair.restricted_rank(), j)) << key;
      if (lc.plus_certificates[j]) {
        Vec psum(pair.restricted_rank(), 0);
        for (std::size_t k = 0; k < lc.omega_tilde.size(); ++k)
          psum = psum + scaled(lc.omega_tilde[k], (*lc.plus_certificates[j])[k]);
        EXPECT_EQ(psum, unit_vec(pair.restricted_rank(), j)) << key;
      }
    }
  }
}

TEST(Satake, ExceptionalFullLatticeCertificate) {
  const auto eiv = catalog().pair("EIV", 6);
  EXPECT_EQ(eiv.omega_tilde(2) - eiv.omega_tilde(1), (Vec{1, 0}));
  EXPECT_EQ(eiv.omega_tilde(0), (Vec{2, 0}));
  EXPECT_EQ(eiv.omega_tilde(5), (Vec{0, 2}));
  const auto lc = eiv.lattice_compare();
  EXPECT_FALSE(lc.plus_certificates[0].has_value());
}

TEST(Satake, AiiChains) {
  EXPECT_EQ(catalog().pair("AII", 5).max_aii_chain_rank(), 5);
  EXPECT_EQ(catalog().pair("DIII(ii)", 5).max_aii_chain_rank(), 3);
  EXPECT_EQ(catalog().pair("EIV", 6).max_aii_chain_rank(), 0);
}

TEST(Satake, BcDominanceUsesHalvedLastRoot) {
  const auto fii = catalog().pair("FII", 4);
  EXPECT_EQ(fii.restricted().dominance_scale().back(), rat(1, 2));
  EXPECT_TRUE(fii.restricted().dominance_leq({1}, {2}));
  const auto aii = catalog().pair("AII", 5);
  EXPECT_FALSE(aii.restricted().dominance_leq({1, 0}, {0, 1}));
}
