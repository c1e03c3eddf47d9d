#include "nichols/realization.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nichols {
namespace {

using E = EnvelopingElement;

TEST(Enveloping, NormalFormLaw) {
  EXPECT_EQ(E::gamma() * E::nu(), E::nu().pow(2) * E::gamma());
  EXPECT_TRUE((E::gamma().pow(2) * E::nu() * E::gamma().pow(-2) * E::nu().inverse()).is_identity());
  // g_1 g_2 = g_3 g_1
  EXPECT_EQ(hv1_generator(0) * hv1_generator(1), hv1_generator(2) * hv1_generator(0));
  EXPECT_EQ(hv1_generator(1), E::gamma() * E::nu());
}

TEST(EnvelopingProperty, AssociativeAndInverses) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> b(0, 2), a(-5, 5);
  for (int k = 0; k < 500; ++k) {
    E x{b(rng), a(rng), a(rng)}, y{b(rng), a(rng), a(rng)}, z{b(rng), a(rng), a(rng)};
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE((x * x.inverse()).is_identity());
    EXPECT_EQ(x.pow(3) * x.pow(-2), x);
  }
}

TEST(FiniteGroup, QuotientIsAssociativeGroup) {
  auto G = FiniteGroup::enveloping_quotient(6, 6);
  EXPECT_EQ(G.order(), 108);
  EXPECT_TRUE(G.is_associative());
  EXPECT_THROW(FiniteGroup::enveloping_quotient(3, 6), ConfigError);
  auto S = FiniteGroup::symmetric3();
  EXPECT_TRUE(S.is_associative());
}

TEST(Realization, EnvelopingGroupIsValid) {
  EnvelopingRealization r;
  EXPECT_TRUE(r.validate(2)) << r.validate(2).violation;
  auto [j, c] = r.act(r.g(0), 1);
  EXPECT_EQ(j, 2);
  EXPECT_EQ(c, Scalar(-1));
  for (int i = 0; i < 3; ++i) {
    auto [k, v] = r.act(r.g(3), i);
    EXPECT_EQ(k, i);
    EXPECT_EQ(v, Scalar::q2());
  }
  auto [k, v] = r.act(E::identity(), 2);
  EXPECT_EQ(k, 2);
  EXPECT_TRUE(v.is_one());
}

TEST(Realization, QuotientTwentyFourTwelveAtOmega) {
  auto s = Specialization::q1_to_omega();
  auto r = hv1_finite_realization(24, 12, s);
  EXPECT_EQ(r.group().order(), 864);
  EXPECT_TRUE(r.validate()) << r.validate().violation;
  EXPECT_TRUE(validate_hv1_shape(r, s)) << validate_hv1_shape(r, s).violation;
  auto lam = lambda_support_predicates(r);
  EXPECT_TRUE(lam[0] && lam[1] && lam[2] && lam[3]);
}

TEST(Realization, NonCentralG4IsRejected) {
  auto s = Specialization::q1_to_omega();
  auto group = std::make_shared<const FiniteGroup>(FiniteGroup::enveloping_quotient(6, 6));
  std::vector<int> g;
  for (int i = 0; i < 3; ++i) g.push_back(*group->from_enveloping(hv1_generator(i)));
  g.push_back(*group->from_enveloping(E::gamma()));
  auto r = hv1_realization_on(group, g, s);
  EXPECT_FALSE(validate_hv1_shape(r, s));
}

TEST(Realization, SymbolicQ1ForbidsLambdaOne) {
  EnvelopingRealization r;
  auto lam = lambda_support_predicates(r);
  EXPECT_FALSE(lam[0]);
}

TEST(Realization, S3ForbidsLambdaOne) {
  auto r = fk3_realization_s3();
  EXPECT_TRUE(r.validate()) << r.validate().violation;
  auto lam = fk3_lambda_support(r);
  EXPECT_FALSE(lam[0]);
  EXPECT_TRUE(lam[1]);
}

TEST(RealizationProperty, CocycleLawAndActionOnQuotient) {
  auto s = Specialization::q1_to_omega();
  auto r = hv1_finite_realization(6, 6, s);
  ASSERT_TRUE(r.validate());
  const auto& G = r.group();
  for (int h = 0; h < G.order(); ++h)
    for (int t = 0; t < G.order(); ++t)
      for (int i = 0; i < 4; ++i) {
        ASSERT_EQ(r.chi(i, G.mul(h, t)), r.chi(i, t) * r.chi(r.letter_action(t, i), h));
        ASSERT_EQ(r.letter_action(G.mul(h, t), i), r.letter_action(h, r.letter_action(t, i)));
      }
}

TEST(Realization, SmallModelsForLiftingTests) {
  // q1 -> 1 on (2, 6) is the cheapest HV1 model used for the undeformed smash product.
  auto s1 = Specialization::parse("1");
  auto r = hv1_finite_realization(2, 6, s1);
  EXPECT_TRUE(validate_hv1_shape(r, s1)) << validate_hv1_shape(r, s1).violation;
  auto s = Specialization::q1_to_omega();
  auto r6 = hv1_finite_realization(6, 12, s);
  EXPECT_TRUE(validate_hv1_shape(r6, s));
  auto lam = lambda_support_predicates(r6);
  EXPECT_TRUE(lam[2] && lam[3]);
}

}  // namespace
}  // namespace nichols
