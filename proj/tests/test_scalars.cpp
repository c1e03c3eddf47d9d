#include "nichols/scalar.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nichols {
namespace {

Scalar random_scalar(std::mt19937_64& rng, bool unit_only = false) {
  std::uniform_int_distribution<int> small(-3, 3);
  std::uniform_int_distribution<int> nterms(1, 3);
  Scalar s;
  int n = unit_only ? 1 : nterms(rng);
  for (int t = 0; t < n; ++t) {
    int a = small(rng), b = small(rng);
    if (a == 0 && b == 0) a = 1;
    s += Scalar::monomial(QOmega(a, b), small(rng));
  }
  return s.is_zero() ? Scalar::one() : s;
}

TEST(QOmega, OmegaIsPrimitiveCubeRoot) {
  QOmega w = QOmega::omega();
  EXPECT_FALSE((w * w).is_one());
  EXPECT_TRUE((w * w * w).is_one());
  EXPECT_EQ(w * w, -QOmega(1) - w);
  EXPECT_EQ(w.conjugate(), w * w);
}

TEST(QOmega, InverseRoundTrip) {
  QOmega x(Rational(3), Rational(-2));
  EXPECT_TRUE((x * x.inverse()).is_one());
}

TEST(Scalar, QParametersSatisfyDefiningIdentities) {
  Scalar w = Scalar::omega();
  EXPECT_EQ(-(Scalar::q1() * Scalar::q2()), w);
  EXPECT_TRUE((-(w * w)).pow(6).is_one());
  EXPECT_TRUE(w.pow(3).is_one());
}

TEST(Scalar, NonMonomialIsNotAUnit) {
  Scalar s = Scalar::one() + Scalar::q1();
  EXPECT_FALSE(s.is_unit());
  EXPECT_THROW((void)s.inverse(), NotAUnit);
  EXPECT_THROW((void)Scalar::zero().inverse(), NotAUnit);
}

TEST(Scalar, PrintParseRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Scalar s = random_scalar(rng);
    EXPECT_EQ(Scalar::parse(s.to_string()), s) << s.to_string();
  }
  EXPECT_EQ(Scalar::parse("q2"), Scalar::q2());
  EXPECT_EQ(Scalar::parse("-w^2*q^-3"), -(Scalar::omega().pow(2)) * Scalar::q1().pow(-3));
  EXPECT_THROW(Scalar::parse("q3"), ParseError);
}

TEST(ScalarProperty, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    Scalar u = random_scalar(rng, true);
    EXPECT_TRUE((u * u.inverse()).is_one());
    EXPECT_EQ(u.pow(-2) * u.pow(2), Scalar::one());
  }
}

TEST(Cyclotomic, PolynomialsAndPhi) {
  EXPECT_EQ(euler_phi(24), 8);
  EXPECT_EQ(cyclotomic_polynomial(3), (std::vector<int64_t>{1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<int64_t>{1, 0, -1, 0, 1}));
}

TEST(Cyclotomic, RootsOfUnityAndMixedOrders) {
  auto z = CyclotomicNumber::zeta_power(24, 1);
  EXPECT_TRUE(z.pow(24).is_one());
  EXPECT_FALSE(z.pow(12).is_one());
  EXPECT_EQ(z.root_of_unity_order(), 24);
  auto i = CyclotomicNumber::zeta_power(4, 1);
  auto w = CyclotomicNumber::zeta_power(3, 1);
  EXPECT_EQ((i * w).root_of_unity_order(), 12);
  EXPECT_EQ(i * i, CyclotomicNumber::from_rational(-1));
  auto x = CyclotomicNumber::parse("1 + 2*z12 - z12^3/5");
  EXPECT_TRUE((x * x.inverse()).is_one());
}

TEST(Specialization, ImagesOfParameters) {
  auto s = Specialization::q1_to_omega();
  EXPECT_EQ(s(Scalar::q2()), CyclotomicNumber::from_rational(-1));
  EXPECT_TRUE(s(Scalar::q1().pow(72)).is_one());
  EXPECT_EQ(s(Scalar::omega()), s.image_of_q1());
  EXPECT_THROW(Specialization(4, CyclotomicNumber::zeta_power(4, 1)), std::invalid_argument);
}

TEST(SpecializationProperty, IsARingMap) {
  std::mt19937_64 rng(5);
  auto s = Specialization::q1_to_zeta_power(24, 5);
  for (int i = 0; i < 100; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    EXPECT_EQ(s(a * b), s(a) * s(b));
    EXPECT_EQ(s(a + b), s(a) + s(b));
  }
}

}  // namespace
}  // namespace nichols
