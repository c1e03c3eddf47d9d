#include "nichols/hv1.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>

namespace nichols::hv1 {
namespace {

// Completions of the full presentation take seconds; share one instance per process.
Checks& shared() {
  static Checks c;
  return c;
}

void expect_pass(const CheckReport& r) {
  EXPECT_TRUE(r.passed()) << r.to_json().dump(1);
}

TEST(Hv1Relations, FamilyCounts) {
  const Hv1Relations r = relations();
  EXPECT_EQ(r.minimal.size(), 12u);
  EXPECT_EQ(r.distinguished.size(), 10u);
  std::map<std::string, int> families;
  for (const auto& m : r.minimal) ++families[m.family];
  EXPECT_EQ(families.size(), 6u);
  EXPECT_EQ(families.at(top_family()), 1);
  for (const auto& d : r.distinguished) EXPECT_NE(d.family, top_family());
}

TEST(Hv1Relations, DegreesMatchTable) {
  const auto rows = degree_table(relations());
  EXPECT_EQ(rows.size(), 12u);
  for (const auto& row : rows) EXPECT_TRUE(row.ok()) << row.name;
}

TEST(Hv1Relations, TopRelationHasDegreeEighteen) {
  for (const auto& m : relations().minimal)
    if (m.family == top_family()) EXPECT_EQ(m.degree(), 18);
}

// Independent oracle: expand the four factors by direct convolution of explicit lists.
TEST(Hv1Series, FactorizedProductMatchesDirectExpansion) {
  const std::vector<int64_t> fk3 = {1, 3, 4, 3, 1};
  const std::vector<int64_t> x4(6, 1);                                   // 1 + t + ... + t^5
  const std::vector<int64_t> z = {1, 0, 3, 0, 4, 0, 3, 0, 1};            // fk3(t^2)
  const std::vector<int64_t> u = {1, 0, 0, 2, 0, 0, 2, 0, 0, 2, 0, 0, 2, 0, 0, 2, 0, 0, 1};  // (1+t^3)^2 (1+t^6+t^12)
  auto conv = [](const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
    std::vector<int64_t> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  EXPECT_EQ(factorized_series(), conv(conv(conv(x4, z), u), fk3));
  const auto f = factorized_series();
  EXPECT_EQ(std::accumulate(f.begin(), f.end(), int64_t{0}), 10368);
  EXPECT_EQ(f.front(), 1);
  EXPECT_EQ(f.size(), 36u);  // top degree 35
  // Palindromic: a finite-dimensional Nichols algebra has a symmetric series.
  for (size_t k = 0; k < f.size(); ++k) EXPECT_EQ(f[k], f[f.size() - 1 - k]);
}

TEST(Hv1Series, PbwCountMatchesTotal) {
  EXPECT_EQ(Checks::pbw_count(), 10368);
  const auto words = pbw_words();
  EXPECT_EQ(static_cast<int64_t>(words.size()), 10368);
  std::vector<int64_t> by_degree(36, 0);
  for (const auto& w : words) {
    ASSERT_LT(w.degree(), 36);
    ++by_degree[w.degree()];
  }
  EXPECT_EQ(by_degree, factorized_series());
}

TEST(Hv1Series, StretchAndProductHelpers) {
  EXPECT_EQ(stretch({1, 2}, 3), (std::vector<int64_t>{1, 0, 0, 2}));
  EXPECT_EQ(poly_mul({1, 1}, {1, -1}), (std::vector<int64_t>{1, 0, -1}));
  EXPECT_EQ(fk3_series(), (std::vector<int64_t>{1, 3, 4, 3, 1}));
}

TEST(Hv1Elements, DefiningIdentities) {
  // z_h = x_h x4 - q1 x4 x_h, u_ij = x_i z_j + q1 z_{2i-j} x_i.
  const Scalar q1 = Scalar::q1();
  for (int h = 1; h <= 3; ++h) EXPECT_EQ(z(h), x(h) * x(4) - q1 * (x(4) * x(h)));
  EXPECT_EQ(u(1, 2), x(1) * z(2) + q1 * (z(wrap3(0)) * x(1)));
  EXPECT_EQ(wrap3(0), 3);
  EXPECT_EQ(wrap3(4), 1);
  EXPECT_EQ(z124134_factors().size(), 3u);
}

TEST(Hv1SubAlgebras, FominKirillov) { expect_pass(shared().fk3()); }
TEST(Hv1SubAlgebras, TruncatedPolynomial) { expect_pass(shared().v2()); }
TEST(Hv1SubAlgebras, WeightTwo) { expect_pass(shared().v12()); }
TEST(Hv1SubAlgebras, WeightThree) { expect_pass(shared().v112()); }
TEST(Hv1SubAlgebras, Aggregate) { expect_pass(shared().sub_nichols()); }

TEST(Hv1Checks, RelationTable) { expect_pass(shared().relation_table()); }
TEST(Hv1Checks, DualIsomorphism) { expect_pass(shared().dual_iso()); }
TEST(Hv1Checks, RelationsHoldInNichols) { expect_pass(shared().relations_in_nichols()); }
TEST(Hv1Checks, Dimension) {
  expect_pass(shared().dimension());
  const auto& gb = shared().nichols_basis();
  EXPECT_EQ(gb.normal_word_count(), 10368);
  EXPECT_EQ(gb.hilbert(40).coefficients, [] {
    auto f = factorized_series();
    f.resize(41, 0);
    return f;
  }());
}
TEST(Hv1Checks, PbwBasis) { expect_pass(shared().pbw()); }
TEST(Hv1Checks, Minimality) { expect_pass(shared().minimality()); }
TEST(Hv1Checks, PreNichols) { expect_pass(shared().prenichols()); }
TEST(Hv1Checks, Center) { expect_pass(shared().center()); }

}  // namespace
}  // namespace nichols::hv1
