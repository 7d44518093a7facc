#include <gtest/gtest.h>

#include "json.hpp"
#include "oracles.hpp"

using namespace gzc;

namespace {

// all permutations with w^-1 increasing on {1..d} and {d+1..n}
std::set<std::vector<int>> brute_classes(int n, int d) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  std::set<std::vector<int>> out;
  do {
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[w[i] - 1] = i;
    bool ok = true;
    for (int a = 0; a + 1 < n; ++a)
      if (a + 1 != d && inv[a] > inv[a + 1]) ok = false;
    if (ok) out.insert(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

Display1 random_display(const FieldPtr& F, int q, int n, int d, std::mt19937& rng) {
  return {F, q, n, d, oracle::random_invertible(F, n, rng)};
}

}  // namespace

TEST(BT1, CountsAreBinomial) {
  for (int n = 0; n <= 10; ++n)
    for (int d = 0; d <= n; ++d) EXPECT_EQ(classify_bt1(n, d).size(), binomial(n, d));
}

TEST(BT1, ClassesMatchPermutationFilter) {
  for (int n = 1; n <= 7; ++n)
    for (int d = 0; d <= n; ++d) {
      std::set<std::vector<int>> got;
      for (auto& c : classify_bt1(n, d)) {
        got.insert(c.w);
        EXPECT_EQ(c.aut_dim, d * (n - d) - c.length);
        EXPECT_GE(c.aut_dim, 0);
      }
      EXPECT_EQ(got, brute_classes(n, d));
    }
}

TEST(BT1, SmallTables) {
  auto two = classify_bt1(2, 1);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].aut_dim, 1);
  EXPECT_EQ(two[1].aut_dim, 0);
  auto three = classify_bt1(3, 1);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(one_line(three[0].w), "1,2,3");
  EXPECT_EQ(one_line(three[1].w), "2,1,3");
  EXPECT_EQ(one_line(three[2].w), "2,3,1");
  EXPECT_EQ(three[0].aut_dim, 2);
  EXPECT_EQ(three[1].aut_dim, 1);
  EXPECT_EQ(three[2].aut_dim, 0);
}

TEST(BT1, BijectionWithGLStrata) {
  for (int n = 1; n <= 6; ++n)
    for (int d = 0; d <= n; ++d) {
      auto P = build_poset(bt1_datum(n, d));
      std::map<WeylElement, const Stratum*> by_rep;
      for (auto& s : P.strata) by_rep[s.rep.w] = &s;
      auto rows = classify_bt1(n, d);
      ASSERT_EQ(rows.size(), P.strata.size());
      for (auto& c : rows) {
        auto it = by_rep.find(bt1_to_weyl(c));
        ASSERT_NE(it, by_rep.end()) << one_line(c.w);
        EXPECT_EQ(it->second->length, c.length);
        EXPECT_EQ(it->second->aut.aut_dim, c.aut_dim);
        EXPECT_EQ(it->second->codim, c.aut_dim);
      }
    }
}

TEST(BT1, GuardsAndErrors) {
  EXPECT_THROW(classify_bt1(13, 6), ResourceError);
  EXPECT_THROW(classify_bt1(3, 4), ValidationError);
  EXPECT_THROW(classify_bt1(3, -1), ValidationError);
  auto F = make_field(2);
  EXPECT_THROW(validate_display({F, 2, 2, 1, Mat(F, 2, 2)}), ValidationError);
  FZip bad{F, 2, 2, identity(F, 2), {0, 2}, identity(F, 2)};
  EXPECT_THROW(display_of_fzip(bad), ValidationError);
  EXPECT_THROW(dual_bt1(bad), ValidationError);
}

TEST(Display, AxiomsHoldInNormalForm) {
  std::mt19937 rng(41);
  for (int q : {2, 3, 4})
    for (int k = 0; k < 40; ++k) {
      int n = 1 + k % 4, d = k % (n + 1);
      auto D = random_display(field_of_order(q), q, n, d, rng);
      EXPECT_TRUE(display_axioms_hold(D));
      auto R = realize(D);
      EXPECT_EQ(rank(R.F1), n);
    }
}

TEST(Display, RoundTripThroughFZips) {
  std::mt19937 rng(42);
  for (int q : {2, 4}) {
    auto F = field_of_order(q);
    for (int k = 0; k < 50; ++k) {
      int n = 1 + k % 4, d = (k / 4) % (n + 1);
      auto D = random_display(F, q, n, d, rng);
      auto M = fzip_of_display(D);
      ZipType want;
      if (d) want[0] = d;
      if (n - d) want[1] = n - d;
      EXPECT_EQ(type_of(M), want);
      auto D2 = display_of_fzip(M);
      EXPECT_EQ(D2.d, d);
      EXPECT_EQ(D2.Phi, D.Phi);
      auto N = oracle::random_fzip(F, q, n, 0, 1, rng);
      auto back = fzip_of_display(display_of_fzip(N));
      EXPECT_TRUE(isomorphic(back, N));
    }
  }
}

TEST(Display, Duality) {
  std::mt19937 rng(43);
  for (int q : {2, 4}) {
    auto F = field_of_order(q);
    for (int k = 0; k < 30; ++k) {
      auto M = oracle::random_fzip(F, q, 1 + k % 4, 0, 1, rng);
      auto Md = dual_bt1(M);
      auto t = type_of(M), td = type_of(Md);
      EXPECT_EQ(td[0], t[1]);
      EXPECT_EQ(td[1], t[0]);
      EXPECT_TRUE(isomorphic(dual_bt1(Md), M));
    }
  }
}

TEST(BT1, EmitFormats) {
  EXPECT_EQ(emit_bt1(3, 1, Format::tsv), "# w\tlength\taut_dim\tcodim\n1,2,3\t0\t2\t2\n2,1,3\t1\t1\t1\n2,3,1\t2\t0\t0\n");
  auto j = nlohmann::json::parse(emit_bt1(4, 2, Format::json));
  EXPECT_EQ(j["height"], 4);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["classes"].size(), 6u);
  std::string dot = emit_bt1(4, 2, Format::dot);
  auto P = build_poset(bt1_datum(4, 2));
  std::size_t arrows = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  EXPECT_EQ(arrows, P.hasse.size());
  EXPECT_EQ(emit_bt1(5, 2, Format::dot), emit_bt1(5, 2, Format::dot));
}
