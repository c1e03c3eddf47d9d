#include "nichols/engine.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nichols {
namespace {

using T = Tensor<Scalar>;
using R = Relation<Scalar>;
using P = Presentation<Scalar>;

const Scalar w = Scalar::omega();
const Scalar q1 = Scalar::q1();

T x(int i) { return T::letter(i - 1); }

// Quadratic relations of the three-letter Fomin-Kirillov algebra.
P fk3() {
  P p = P::make(3);
  for (int i = 1; i <= 3; ++i) p.relations.push_back(R::element("square", x(i) * x(i), p.order));
  p.relations.push_back(R::element("cycle", x(1) * x(2) + x(2) * x(3) + x(3) * x(1), p.order));
  p.relations.push_back(R::element("cycle'", x(2) * x(1) + x(1) * x(3) + x(3) * x(2), p.order));
  return p;
}

T random_tensor(std::mt19937_64& rng, int letters, int max_len, int terms) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, letters - 1), coef(-2, 2), e(-1, 1);
  T t;
  for (int k = 0; k < terms; ++k) {
    Word u;
    for (int l = len(rng); l > 0; --l) u.push_back(static_cast<char>(letter(rng)));
    t.add_term(u, Scalar::monomial(QOmega(coef(rng), coef(rng)), e(rng)));
  }
  return t;
}

T random_homogeneous(std::mt19937_64& rng, int letters, int len, int terms) {
  std::uniform_int_distribution<int> letter(0, letters - 1), coef(-2, 2);
  T t;
  for (int k = 0; k < terms; ++k) {
    Word u;
    for (int l = 0; l < len; ++l) u.push_back(static_cast<char>(letter(rng)));
    t.add_term(u, Scalar(QOmega(coef(rng), coef(rng))));
  }
  return t;
}

TEST(Engine, FominKirillovThree) {
  auto gb = complete(fk3(), 10);
  EXPECT_TRUE(gb.finite_certified());
  EXPECT_EQ(gb.hilbert(4).coefficients, (std::vector<int64_t>{1, 3, 4, 3, 1}));
  EXPECT_EQ(gb.dimension().kind, Dimension::Kind::Finite);
  EXPECT_EQ(gb.dimension().value, 12);
  EXPECT_EQ(*gb.hilbert(6).total, 12);
  EXPECT_EQ(gb.hilbert_by_automaton(6), (std::vector<int64_t>{1, 3, 4, 3, 1, 0, 0}));
}

TEST(Engine, TruncatedPolynomial) {
  P p = P::make(1, {R::element("power", x(1).pow(6), MonomialOrder::natural(1))});
  auto gb = complete(p, 20);
  EXPECT_EQ(gb.dimension().value, 6);
  EXPECT_EQ(gb.completed_through(), 6);
  ASSERT_EQ(gb.rules().size(), 1u);
  EXPECT_EQ(gb.rules()[0].lead, Word(6, 0));
}

TEST(Engine, FreeAlgebraIsInfinite) {
  auto gb = complete(P::make(2), 8);
  EXPECT_EQ(gb.dimension().kind, Dimension::Kind::Infinite);
  auto h = gb.hilbert(8).coefficients;
  for (int d = 0; d <= 8; ++d) EXPECT_EQ(h[static_cast<size_t>(d)], int64_t{1} << d);
  EXPECT_EQ(gb.hilbert_by_automaton(20)[20], int64_t{1} << 20);
}

TEST(Engine, QuantumPlane) {
  P p = P::make(2);
  p.relations.push_back(R::element("commute", x(2) * x(1) - q1 * (x(1) * x(2)), p.order));
  auto gb = complete(p, 6);
  EXPECT_EQ(gb.dimension().kind, Dimension::Kind::Infinite);
  auto h = gb.hilbert_by_automaton(30);
  for (int d = 0; d <= 30; ++d) EXPECT_EQ(h[static_cast<size_t>(d)], d + 1);
  // x2^2 x1 = q1^2 x1 x2^2
  EXPECT_EQ(gb.normal_form(x(2) * x(2) * x(1)), (q1 * q1) * (x(1) * x(2) * x(2)));
}

TEST(Engine, CapTooSmallIsReported) {
  P p = P::make(2);
  p.relations.push_back(R::element("commute", x(2) * x(1) - x(1) * x(2), p.order));
  auto gb = complete(p, 3);
  EXPECT_THROW(gb.normal_form(x(1).pow(4)), CapTooSmall);
  EXPECT_THROW(gb.hilbert(4), CapTooSmall);
}

TEST(Engine, ProductRelationsMatchExpandedOnes) {
  T a = x(1) * x(2) + w * (x(2) * x(1));
  P p1 = P::make(2), p2 = P::make(2);
  p1.relations.push_back(R::product("cube", {a, a, a}));
  p2.relations.push_back(R::element("cube", a.pow(3), p2.order));
  auto g1 = complete(p1, 9), g2 = complete(p2, 9);
  EXPECT_EQ(g1.hilbert(9).coefficients, g2.hilbert(9).coefficients);
  EXPECT_EQ(g1.normal_form(a.pow(3)), T());
  EXPECT_EQ(g1.normal_form_product({a, a, a}), T());
  EXPECT_EQ(g1.normal_form_product({a, x(1), a}), g1.normal_form(a * x(1) * a));
}

TEST(Engine, FilteredRelation) {
  // x^2 = 1 gives the group algebra of the cyclic group of order two.
  P p = P::make(1, {R::element("involution", x(1) * x(1) - T::one(), MonomialOrder::natural(1))});
  auto gb = complete(p, 10);
  EXPECT_TRUE(gb.finite_certified());
  EXPECT_EQ(gb.dimension().value, 2);
  EXPECT_EQ(gb.normal_form(x(1).pow(5)), x(1));
  EXPECT_EQ(gb.normal_form(x(1).pow(4)), T::one());
  EXPECT_FALSE(gb.stats().collapse_detected);
}

TEST(Engine, FilteredCollapseIsDetected) {
  // x^2 = 1 and x^3 = 0 force 1 = 0.
  MonomialOrder o = MonomialOrder::natural(1);
  P p = P::make(1, {R::element("a", x(1) * x(1) - T::one(), o), R::element("b", x(1).pow(3), o)});
  auto gb = complete(p, 6);
  EXPECT_TRUE(gb.stats().collapse_detected);
}

TEST(Engine, WeightedLetters) {
  P p = fk3();
  p.order = MonomialOrder({2, 2, 2}, {0, 1, 2});
  auto gb = complete(p, 20);
  EXPECT_EQ(gb.hilbert(8).coefficients, (std::vector<int64_t>{1, 0, 3, 0, 4, 0, 3, 0, 1}));
  EXPECT_EQ(gb.dimension().value, 12);
  EXPECT_EQ(gb.hilbert_by_automaton(8), gb.hilbert(8).coefficients);
}

TEST(Engine, LetterPrecedenceChangesLeadsNotDimensions) {
  P p = fk3();
  p.order = MonomialOrder({1, 1, 1}, {2, 0, 1});
  auto a = complete(fk3(), 10), b = complete(p, 10);
  EXPECT_EQ(a.hilbert(4).coefficients, b.hilbert(4).coefficients);
  EXPECT_NE(a.rules().front().lead, b.rules().front().lead);
}

TEST(Engine, GradingMustMakeRelationsHomogeneous) {
  P p = fk3();
  p.grading = Grading::enveloping({0, 1, 2});
  auto gb = complete(p, 10);
  EXPECT_EQ(gb.dimension().value, 12);
  P bad = P::make(2);
  bad.grading = Grading::enveloping({0, 1});
  bad.relations.push_back(R::element("mixed", x(1) * x(1) + x(1) * x(2), bad.order));
  EXPECT_THROW(complete(bad, 4), std::invalid_argument);
}

TEST(Engine, ParallelCompletionIsDeterministic) {
  P p = fk3();
  p.grading = Grading::enveloping({0, 1, 2});
  CompletionOptions par;
  par.jobs = 4;
  auto a = complete(p, 10), b = complete(p, 10, par);
  ASSERT_EQ(a.rules().size(), b.rules().size());
  for (size_t i = 0; i < a.rules().size(); ++i) {
    EXPECT_EQ(a.rules()[i].lead, b.rules()[i].lead);
    EXPECT_EQ(a.rules()[i].tail, b.rules()[i].tail);
  }
}

TEST(Engine, IdealMembership) {
  P p = fk3();
  EXPECT_TRUE(ideal_membership(x(1) * x(2) * x(1) * x(2) + x(2) * x(1) * x(2) * x(1) , p) ==
              complete(p, 4).normal_form(x(1) * x(2) * x(1) * x(2) + x(2) * x(1) * x(2) * x(1)).is_zero());
  EXPECT_TRUE(ideal_membership(x(1) * x(1) * x(2), p));
  EXPECT_FALSE(ideal_membership(x(1) * x(2), p));
}

TEST(Engine, JsonRoundTrip) {
  P p = fk3();
  p.relations.push_back(R::product("cube", {x(1) + w * x(2), x(1) + w * x(2), x(1) + w * x(2)}));
  auto j = presentation_to_json(p);
  P back = presentation_from_json<Scalar>(j);
  ASSERT_EQ(back.relations.size(), p.relations.size());
  for (size_t i = 0; i < p.relations.size(); ++i) EXPECT_EQ(back.relations[i].expand(), p.relations[i].expand());
  EXPECT_EQ(complete(back, 8).hilbert(8).coefficients, complete(p, 8).hilbert(8).coefficients);
}

TEST(Engine, CompletingTheRulesIsANoOp) {
  auto gb = complete(fk3(), 10);
  P again = P::make(3);
  for (const auto& r : gb.rules()) again.relations.push_back(R::element("rule", T::word(r.lead) - r.tail, again.order));
  auto gb2 = complete(again, 10);
  ASSERT_EQ(gb.rules().size(), gb2.rules().size());
  for (size_t i = 0; i < gb.rules().size(); ++i) {
    EXPECT_EQ(gb.rules()[i].lead, gb2.rules()[i].lead);
    EXPECT_EQ(gb.rules()[i].tail, gb2.rules()[i].tail);
  }
}

TEST(EngineProperty, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(7);
  EXPECT_EQ(brute_force_dimensions(fk3(), 6), complete(fk3(), 6).hilbert(6).coefficients);
  for (int trial = 0; trial < 12; ++trial) {
    int letters = 2 + trial % 2;
    P p = P::make(letters);
    int nrel = 1 + trial % 3;
    for (int k = 0; k < nrel; ++k)
      p.relations.push_back(R::element("r", random_homogeneous(rng, letters, 2 + (k + trial) % 2, 3), p.order));
    auto gb = complete(p, 6);
    EXPECT_EQ(brute_force_dimensions(p, 6), gb.hilbert(6).coefficients) << "trial " << trial;
    EXPECT_EQ(gb.hilbert_by_automaton(6), gb.hilbert(6).coefficients) << "trial " << trial;
  }
}

TEST(EngineProperty, RewritingIsConfluent) {
  std::mt19937_64 rng(11);
  std::vector<P> systems{fk3()};
  for (int trial = 0; trial < 4; ++trial) {
    P p = P::make(3);
    p.relations.push_back(R::element("r", random_homogeneous(rng, 3, 2, 3), p.order));
    p.relations.push_back(R::element("s", random_homogeneous(rng, 3, 3, 4), p.order));
    systems.push_back(p);
  }
  for (const auto& p : systems) {
    auto gb = complete(p, 7);
    for (int k = 0; k < 40; ++k) {
      T a = random_tensor(rng, 3, 7, 4);
      T nf = gb.normal_form(a);
      EXPECT_EQ(gb.reduce_by_rules(a, RewriteStrategy::Leftmost), nf);
      EXPECT_EQ(gb.reduce_by_rules(a, RewriteStrategy::Rightmost), nf);
      EXPECT_EQ(gb.normal_form(nf), nf);
    }
  }
}

TEST(EngineProperty, NormalFormIsLinearAndMultiplicative) {
  std::mt19937_64 rng(13);
  auto gb = complete(fk3(), 10);
  for (int k = 0; k < 50; ++k) {
    T a = random_tensor(rng, 3, 4, 3), b = random_tensor(rng, 3, 4, 3);
    EXPECT_EQ(gb.normal_form(a + b), gb.normal_form(a) + gb.normal_form(b));
    EXPECT_EQ(gb.normal_form(a * b), gb.normal_form(gb.normal_form(a) * gb.normal_form(b)));
  }
}

}  // namespace
}  // namespace nichols
