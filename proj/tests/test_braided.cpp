#include "nichols/braided.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nichols {
namespace {

using T = Tensor<Scalar>;
using T2 = TensorSquare<Scalar>;

const Scalar w = Scalar::omega();
const Scalar q1 = Scalar::q1();
const Scalar q2 = Scalar::q2();

T x(int i) { return T::letter(i - 1); }
T one() { return T::one(); }
T z(int h) { return x(h) * x(4) - q1 * (x(4) * x(h)); }
int third(int i, int j) { return kThirdIndex[i - 1][j - 1] + 1; }

std::vector<Word> all_words(int n, int len) {
  std::vector<Word> out{Word()};
  for (int l = 0; l < len; ++l) {
    std::vector<Word> next;
    for (const auto& u : out)
      for (int i = 0; i < n; ++i) next.push_back(u + static_cast<char>(i));
    out = std::move(next);
  }
  return out;
}

T random_element(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, 3), coef(-2, 2), e(-2, 2);
  T t;
  for (int k = 0; k < 3; ++k) {
    Word u;
    int l = len(rng);
    for (int p = 0; p < l; ++p) u.push_back(static_cast<char>(letter(rng)));
    t.add_term(u, Scalar::monomial(QOmega(coef(rng), coef(rng)), e(rng)));
  }
  return t;
}

TEST(Braided, Hv1BraidingTable) {
  auto V = hv1_space();
  EXPECT_EQ(V.coeff(0, 1), Scalar(-1));
  EXPECT_EQ(V.target(0, 1), 2);  // c(x1 (x) x2) = -x3 (x) x1
  EXPECT_EQ(V.coeff(3, 3), -w.pow(2));
  EXPECT_EQ(V.coeff(0, 3), q1);
  EXPECT_EQ(V.coeff(3, 0), q2);
  auto [l, r] = V.braid_sides(0, 1, 3);
  EXPECT_EQ(l, r);
  EXPECT_TRUE(V.braid_equation());
}

TEST(Braided, RealizationBuildsTheSameSpace) {
  EnvelopingRealization r;
  EXPECT_TRUE(same_braiding(build_hv1(r), hv1_space()));
  auto s = Specialization::q1_to_omega();
  auto fr = hv1_finite_realization(24, 12, s);
  auto Vf = build_from_realization(fr);
  EXPECT_TRUE(Vf.braid_equation());
  auto V = hv1_space();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      EXPECT_EQ(Vf.coeff(i, j), s(V.coeff(i, j)));
      EXPECT_EQ(Vf.target(i, j), V.target(i, j));
    }
}

TEST(Braided, BraidedProductExamples) {
  auto V = hv1_space();
  EXPECT_EQ(x(1) * x(4), T::word(make_word({0, 3})));
  T2 a = T2::simple(one(), x(1)), b = T2::simple(x(4), one());
  EXPECT_EQ(mul2(V, a, b), q1 * T2::simple(x(4), x(1)));
  EXPECT_EQ(mul2(V, b, T2::simple(x(1), one())), T2::simple(x(4) * x(1), one()));
}

TEST(Braided, CoproductOfZAndU) {
  auto V = hv1_space();
  const Scalar w2 = w.pow(2);
  EXPECT_EQ(coproduct(V, x(1)), T2::simple(x(1), one()) + T2::simple(one(), x(1)));
  for (int h = 1; h <= 3; ++h) {
    T2 expected = T2::simple(z(h), one()) + T2::simple(one(), z(h)) - w2 * T2::simple(x(h), x(4));
    EXPECT_EQ(coproduct(V, z(h)), expected);
  }
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const int k = third(i, j);
      T u = x(i) * z(j) + q1 * (z(k) * x(i));
      EXPECT_EQ(u, ad_c(V, i - 1, z(j)));
      T2 expected = T2::simple(u, one()) + T2::simple(one(), u) + T2::simple(x(i), z(j)) +
                    w * T2::simple(x(j), z(k)) + w2 * T2::simple(x(k), z(i)) +
                    T2::simple(x(k) * x(i) - w2 * (x(i) * x(j)), x(4));
      EXPECT_EQ(coproduct(V, u), expected) << i << j;
    }
}

TEST(Braided, SkewDerivationsOfZ) {
  auto V = hv1_space();
  for (int h = 1; h <= 3; ++h) {
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(skew_derivation(V, j, z(h)).is_zero());
    EXPECT_EQ(skew_derivation(V, 3, z(h)), -w.pow(2) * x(h));
  }
  EXPECT_EQ(skew_derivation(V, 0, x(1)), one());
}

TEST(Braided, AdjointExamples) {
  auto V = hv1_space();
  EXPECT_EQ(ad_c(V, 0, x(4)), z(1));
  EXPECT_EQ(ad_c(V, 3, x(4)), (Scalar(1) + w.pow(2)) * (x(4) * x(4)));
  EXPECT_EQ(iterated_ad(V, {0, 3}), z(1));
  EXPECT_THROW(ad_c(V, x(1) * x(2), x(4), true), NotPrimitive);
}

TEST(Braided, Primitivity) {
  auto V = hv1_space();
  for (int h = 1; h <= 3; ++h) EXPECT_TRUE(is_primitive(V, x(h) * x(h)));
  EXPECT_TRUE(is_primitive(V, x(4).pow(6)));
  EXPECT_TRUE(is_primitive(V, x(1) * x(2) + x(3) * x(1) + x(2) * x(3)));
  auto u = [&](int i, int j) { return ad_c(V, i - 1, z(j)); };
  for (int i = 2; i <= 3; ++i) {
    const int k = 5 - i;
    T r = u(i, 1) - w * u(1, k);
    EXPECT_FALSE(is_primitive(V, r));
    T2 extra = coproduct(V, r) - T2::simple(r, one()) - T2::simple(one(), r);
    EXPECT_EQ(extra, T2::simple(x(1) * x(k) + x(i) * x(1) + x(k) * x(i), x(4)));
  }
}

TEST(Braided, NicholsMembershipExamples) {
  NicholsOracle<Scalar> oracle(hv1_space());
  EXPECT_TRUE(oracle.member(x(4).pow(6)));
  EXPECT_FALSE(oracle.member(x(4).pow(5)));
  for (int h = 1; h <= 3; ++h) EXPECT_TRUE(oracle.member(x(4) * z(h) - q2 * (z(h) * x(4))));
  EXPECT_FALSE(oracle.member(x(1) * x(2)));
  EXPECT_TRUE(oracle.member(x(1) * x(1)));
}

TEST(Braided, DualSpaceIsIsomorphic) {
  auto V = hv1_space();
  auto D = dual_space(V);
  EXPECT_EQ(D.coeff(0, 1), Scalar(-1));
  EXPECT_EQ(D.target(0, 1), 2);
  EXPECT_EQ(D.coeff(3, 3), -w.pow(2));
  EXPECT_EQ(D.coeff(0, 3), q1);
  EXPECT_EQ(D.coeff(3, 0), q2);
  EXPECT_TRUE(same_braiding(V, D));
}

TEST(Braided, ParserAndPrinter) {
  auto V = hv1_space();
  EXPECT_EQ(parse_tensor<Scalar>("x1x4 - q1*x4x1", V.names()), z(1));
  EXPECT_EQ(parse_tensor<Scalar>("2 x1 (x2+x3)", V.names()), Scalar(2) * (x(1) * (x(2) + x(3))));
  std::map<std::string, T> abbrev{{"z1", z(1)}};
  EXPECT_EQ(parse_tensor<Scalar>("q2 z1x4", V.names(), abbrev), q2 * (z(1) * x(4)));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    T a = random_element(rng, 4);
    EXPECT_EQ(parse_tensor<Scalar>(a.to_string(V.names()), V.names()), a) << a.to_string(V.names());
  }
  EXPECT_THROW(parse_tensor<Scalar>("x5", V.names()), ParseError);
}

TEST(BraidedProperty, CoassociativityThroughDegreeFive) {
  auto V = hv1_space();
  using Triple = std::map<std::tuple<Word, Word, Word>, Scalar>;
  auto add = [](Triple& t, const Word& a, const Word& b, const Word& c, const Scalar& v) {
    auto& slot = t[{a, b, c}];
    slot += v;
    if (slot.is_zero()) t.erase({a, b, c});
  };
  for (int len = 0; len <= 5; ++len)
    for (const Word& u : all_words(4, len)) {
      T2 d = coproduct_word(V, u);
      Triple left, right;
      for (const auto& [k, c] : d.terms()) {
        const T2 dl = coproduct_word(V, k.first), dr = coproduct_word(V, k.second);
        for (const auto& [k2, c2] : dl.terms()) add(left, k2.first, k2.second, k.second, c * c2);
        for (const auto& [k2, c2] : dr.terms()) add(right, k.first, k2.first, k2.second, c * c2);
      }
      ASSERT_EQ(left, right) << len;
    }
}

TEST(BraidedProperty, DerivationsAreTheCoproductComponent) {
  auto V = hv1_space();
  for (int len = 1; len <= 5; ++len)
    for (const Word& u : all_words(4, len)) {
      T a = T::word(u);
      T2 expected;
      for (int i = 0; i < 4; ++i) expected += T2::simple(skew_derivation(V, i, a), x(i + 1));
      ASSERT_EQ(coproduct(V, a).component(len - 1, 1), expected);
    }
}

TEST(BraidedProperty, TwistedLeibniz) {
  auto V = hv1_space();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    T a = random_element(rng, 4), b = random_element(rng, 4);
    for (int i = 0; i < 4; ++i)
      ASSERT_EQ(skew_derivation(V, i, a * b), a * skew_derivation(V, i, b) + skew_derivation(V, i, a) * V.act(i, b));
  }
}

TEST(BraidedProperty, MembershipIsLeftIdealStable) {
  NicholsOracle<Scalar> oracle(hv1_space());
  std::mt19937_64 rng(23);
  std::vector<T> members = {x(1) * x(1), x(1) * x(2) + x(3) * x(1) + x(2) * x(3), x(4) * z(2) - q2 * (z(2) * x(4))};
  std::uniform_int_distribution<int> pick(0, 2), letter(1, 4);
  for (int k = 0; k < 60; ++k) {
    T a = members[static_cast<size_t>(pick(rng))];
    ASSERT_TRUE(oracle.member(a));
    T b = x(letter(rng)) * x(letter(rng));
    EXPECT_TRUE(oracle.member(a * b));
    EXPECT_TRUE(oracle.member(b * a));
  }
}

}  // namespace
}  // namespace nichols
