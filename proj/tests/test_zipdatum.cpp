#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace gzc;

namespace {

std::string failure(GroupKind k, const CocharacterType& t, bool odd = true) {
  try {
    validate_type({k, t.total(), odd}, t);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "ok";
}

}  // namespace

TEST(ZipDatum, ParseType) {
  auto t = parse_type("-1:2,0:1,3:4");
  EXPECT_EQ(t.at(-1), 2);
  EXPECT_EQ(t.at(0), 1);
  EXPECT_EQ(t.at(3), 4);
  EXPECT_EQ(t.total(), 7);
  EXPECT_EQ(t.str(), "-1:2,0:1,3:4");
  auto p = parse_type("2,0,1");
  EXPECT_EQ(p.str(), "0:2,2:1");
  EXPECT_THROW(parse_type("1:2,1:3"), ValidationError);
  EXPECT_THROW(parse_type("x:1"), ValidationError);
  EXPECT_THROW(parse_type("1:-1"), ValidationError);
  EXPECT_EQ(make_type({{1, 2}, {0, 1}}).weights(), (std::vector<int>{1, 1, 0}));
}

TEST(ZipDatum, TypeConditionsNameTheViolation) {
  using K = GroupKind;
  EXPECT_EQ(failure(K::GL, make_type({{0, 1}, {5, 2}})), "ok");
  EXPECT_EQ(failure(K::SL, make_type({{0, 1}, {1, 1}})), "Σ i·n_i ≠ 0");
  EXPECT_EQ(failure(K::SL, make_type({{-2, 1}, {1, 2}})), "ok");
  EXPECT_EQ(failure(K::Sp, make_type({{0, 3}})), "n odd");
  EXPECT_EQ(failure(K::Sp, make_type({{0, 1}, {1, 1}})), "n_i ≠ n_{−i}");
  EXPECT_EQ(failure(K::CSp, make_type({{0, 1}, {1, 1}})), "ok");
  EXPECT_EQ(failure(K::CSp, make_type({{0, 1}, {1, 1}}, 2)), "n_i ≠ n_{d−i}");
  EXPECT_EQ(failure(K::CSp, make_type({{0, 1}, {1, 2}, {3, 1}})), "no d with n_i = n_{d−i}");
  EXPECT_EQ(failure(K::O, make_type({{-1, 1}, {1, 1}}), false), "q even");
  EXPECT_EQ(failure(K::O, make_type({{-1, 1}, {1, 2}})), "n_i ≠ n_{−i}");
  EXPECT_EQ(failure(K::CO, make_type({{0, 2}, {1, 2}}, 1), false), "q even");
  EXPECT_EQ(failure(K::U, make_type({{0, 1}, {1, 2}})), "ok");
  EXPECT_EQ(failure(K::CU, make_type({{0, 1}, {1, 2}})), "multiplier weight d required");
  try {
    validate_type({K::GL, 3, true}, make_type({{0, 2}}));
    ADD_FAILURE();
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "Σ n_i ≠ n");
  }
}

TEST(ZipDatum, UnitaryDegreeMarksSymmetricTypes) {
  EXPECT_EQ(validate_type({GroupKind::U, 2, true}, make_type({{-1, 1}, {1, 1}})).degree, 1);
  EXPECT_EQ(validate_type({GroupKind::U, 2, true}, make_type({{0, 1}, {1, 1}})).degree, 2);
  EXPECT_EQ(validate_type({GroupKind::CU, 2, true}, make_type({{0, 1}, {1, 1}}, 1)).degree, 1);
}

TEST(ZipDatum, GL3Example) {
  auto Z = build_zip_datum({GroupKind::GL, 3, true}, make_type({{0, 2}, {1, 1}}));
  EXPECT_EQ(Z.I, SimpleSubset::of({1}));
  EXPECT_EQ(Z.J, SimpleSubset::of({0}));
  EXPECT_EQ(Z.dim_G_mod_P, 2);
  EXPECT_EQ(length(Z.weyl, Z.y), 2);
  EXPECT_EQ(Z.x, Z.y);
  EXPECT_TRUE(Z.connected());
}

// dim G/P_+ = l(y) = l(w0) - l(w0_I), and the GL count sum_{i<j} n_i n_j
TEST(ZipDatum, DimensionAndLengthOfY) {
  for (auto& e : oracle::catalog()) {
    auto Z = build_zip_datum(e.G, e.t);
    EXPECT_EQ(length(Z.weyl, Z.y), Z.dim_G_mod_P) << oracle::label(e);
    EXPECT_EQ(length(Z.weyl, Z.w0) - length(Z.weyl, longest_element(Z.weyl, Z.I)), Z.dim_G_mod_P);
    if (e.G.kind == GroupKind::GL) {
      int s = 0;
      for (auto& [i, a] : e.t.nbar)
        for (auto& [j, b] : e.t.nbar)
          if (i < j) s += a * b;
      EXPECT_EQ(Z.dim_G_mod_P, s) << oracle::label(e);
    }
  }
}

TEST(ZipDatum, SiegelAndOrthogonalDimensions) {
  for (int g = 1; g <= 4; ++g)
    EXPECT_EQ(build_zip_datum({GroupKind::CSp, 2 * g, true}, make_type({{0, g}, {1, g}}, 1)).dim_G_mod_P,
              g * (g + 1) / 2);
  for (int n = 3; n <= 8; ++n)
    EXPECT_EQ(build_zip_datum({GroupKind::O, n, true}, make_type({{-1, 1}, {0, n - 2}, {1, 1}})).dim_G_mod_P, n - 2);
}

TEST(ZipDatum, PsiMapsIOntoJ) {
  for (auto& e : oracle::catalog()) {
    auto Z = build_zip_datum(e.G, e.t);
    SimpleSubset img;
    for (int s : Z.I.members()) {
      int t = as_simple(Z.weyl, Z.psi(Z.weyl.simples[s]));
      ASSERT_GE(t, 0) << oracle::label(e);
      img.insert(t);
    }
    EXPECT_EQ(img, Z.J) << oracle::label(e);
    for (auto& w : oracle::generated(Z.weyl, Z.J)) EXPECT_EQ(Z.psi(Z.psi_inv(w)), w);
  }
}

TEST(ZipDatum, ThetaForOrthogonalGroups) {
  for (int n = 2; n <= 8; ++n)
    for (int a = 0; 2 * a <= n; ++a) {
      auto t = make_type({{-1, a}, {0, n - 2 * a}, {1, a}});
      auto Z = build_zip_datum({GroupKind::O, n, true}, t);
      EXPECT_EQ(Z.theta.size() == 2, n - 2 * a > 0) << n << " " << a;
    }
}

TEST(ZipDatum, UnitaryFrobeniusIsConjugationByLongestElement) {
  auto Z = build_zip_datum({GroupKind::U, 3, true}, make_type({{0, 2}, {1, 1}}));
  EXPECT_EQ(Z.weyl.frob.conj, Z.w0);
  EXPECT_EQ(Z.I, Z.J);
}
