#include "nichols/liftings.hpp"

#include <gtest/gtest.h>

namespace nichols::liftings {
namespace {

void expect_pass(const CheckReport& r) { EXPECT_TRUE(r.passed()) << r.to_json().dump(1); }

const Hv1Model& model(int N, int M, const char* q1) {
  static std::map<std::string, Hv1Model> cache;
  const std::string key = std::to_string(N) + "," + std::to_string(M) + "," + q1;
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enveloping_model(N, M, Specialization::parse(q1))).first;
  return it->second;
}

std::shared_ptr<const FiniteRealization> s3() {
  static auto r = std::make_shared<const FiniteRealization>(fk3_realization_s3());
  return r;
}

TEST(DeformationParameters, ParseAndPrint) {
  auto l = DeformationParameters::parse("0, 1,w");
  EXPECT_TRUE(l.lambda[0].is_zero());
  EXPECT_TRUE(l.lambda[1].is_one());
  EXPECT_EQ(l.lambda[2], C::zeta_power(3, 1));
  EXPECT_TRUE(l.lambda[3].is_zero());
  EXPECT_FALSE(l.is_zero());
  EXPECT_TRUE(DeformationParameters::parse("0,0,0,0").is_zero());
  EXPECT_THROW(DeformationParameters::parse("1,2,3,4,5"), ParseError);
  EXPECT_THROW(DeformationParameters::parse("1,,2"), ParseError);
}

TEST(Models, Descriptors) {
  const auto s = Specialization::q1_to_omega();
  EXPECT_EQ(model_from_descriptor("env:6,6", s).order(), 108);
  EXPECT_EQ(model(24, 12, "w").order(), 864);
  EXPECT_THROW(model_from_descriptor("env:6", s), ConfigError);
  EXPECT_THROW(model_from_descriptor("cyclic:5", s), ConfigError);
  EXPECT_THROW(model_from_descriptor("table:/nonexistent/group.json", s), ConfigError);
}

TEST(Admissibility, BySlot) {
  const auto all = DeformationParameters::parse("1,1,1,1");
  EXPECT_TRUE(admissible(all, *model(24, 12, "w").realization));
  EXPECT_TRUE(admissible(all, *model(6, 12, "w").realization));
  auto small = admissible_slots(all, *model(6, 6, "w").realization);
  EXPECT_TRUE(small[0] && small[1]);
  EXPECT_FALSE(small[2] || small[3]);
  EXPECT_TRUE(admissible(DeformationParameters{}, *model(6, 6, "w").realization));
  auto fk3 = fk3_lambda_support(*s3());
  EXPECT_FALSE(fk3[0]);  // the squares of the transpositions are trivial
  EXPECT_TRUE(fk3[1]);
}

TEST(Strata, Shape) {
  const auto S = stratification();
  ASSERT_EQ(S.size(), 5u);
  const std::vector<size_t> sizes = {3, 3, 2, 2, 2};
  for (size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(S[k].level, static_cast<int>(k));
    EXPECT_EQ(S[k].elements.size(), sizes[k]);
  }
  // Every minimal relation appears exactly once.
  size_t total = 0;
  for (const auto& s : S) total += s.elements.size();
  EXPECT_EQ(total, hv1::relations().minimal.size());
  EXPECT_EQ(S[4].elements[1].element.degree(), 18);
}

TEST(Strata, ReportWithoutTop) {
  StrataOptions o;
  o.include_top = false;
  expect_pass(strata_report(o));
}

TEST(Strata, ReportWithTop) { expect_pass(strata_report()); }

TEST(Smash, FreeSmashHasOrderTimesWords) {
  SmashBuilder b(s3());
  const auto sp = b.build();
  EXPECT_EQ(sp.group_words.size(), 6u);
  EXPECT_EQ(sp.a_weight, 3);
  CompletionOptions co;
  co.stop_when_finite = false;
  const auto gb = complete(sp.presentation, sp.cap_for_a_degree(3), co);
  EXPECT_FALSE(gb.stats().collapse_detected);
  EXPECT_EQ(a_degree_counts(sp, gb, 3), (std::vector<int64_t>{6, 18, 54, 162}));
}

TEST(Smash, MultiplicationIsAssociative) {
  const auto& r = *model(6, 6, "w").realization;
  const int e = r.group().identity();
  SmashElement x = smash_from(TC::letter(0) * TC::letter(3) + TC::letter(1), r.g(2));
  SmashElement y = smash_from(TC::letter(3) - TC::letter(2) * TC::letter(0), r.g(3));
  SmashElement z = smash_from(TC::letter(1), e);
  z[{Word(), r.g(0)}] = C::parse("w");
  EXPECT_EQ(smash_mul(r, smash_mul(r, x, y), z), smash_mul(r, x, smash_mul(r, y, z)));
}

TEST(Smash, SkewPrimitivity) {
  const auto& r = *model(6, 6, "w").realization;
  const int e = r.group().identity();
  for (int i = 0; i < 4; ++i)
    EXPECT_TRUE(skew_primitivity_defect(r, smash_from(TC::letter(i), e), r.g(i)).empty());
  // chi_1(g_1) = -1 makes a1^2 skew-primitive; a1 a2 is not.
  auto g11 = r.group().mul(r.g(0), r.g(0));
  EXPECT_TRUE(skew_primitivity_defect(r, smash_from(TC::letter(0) * TC::letter(0), e), g11).empty());
  auto g12 = r.group().mul(r.g(0), r.g(1));
  EXPECT_FALSE(skew_primitivity_defect(r, smash_from(TC::letter(0) * TC::letter(1), e), g12).empty());
  // 1 - g is (g, 1)-primitive.
  SmashElement d{{{Word(), e}, C::one()}, {{Word(), g11}, -C::one()}};
  EXPECT_TRUE(skew_primitivity_defect(r, d, g11).empty());
}

TEST(Smash, ConjugationOrbitOfASquare) {
  const auto& r = *s3();
  const auto orbit = conjugation_orbit(r, smash_from(TC::letter(0) * TC::letter(0), r.group().identity()));
  EXPECT_EQ(orbit.size(), 3u);
  EXPECT_TRUE(proportional(orbit[0], orbit[0]).has_value());
  EXPECT_FALSE(proportional(orbit[0], orbit[1]).has_value());
}

TEST(Fk3Liftings, Undeformed) { expect_pass(fk3_lifting_report({C::zero(), C::zero()}, s3())); }
TEST(Fk3Liftings, CyclicSumDeformed) { expect_pass(fk3_lifting_report({C::zero(), C::one()}, s3())); }
TEST(Fk3Liftings, SquaresRejected) {
  EXPECT_THROW(fk3_lifting_report({C::one(), C::zero()}, s3()), NotAdmissible);
}

TEST(Hv1Liftings, UndeformedCountsThroughSix) {
  LiftingOptions o;
  o.a_degree = 6;
  expect_pass(lifting_report(DeformationParameters{}, model(2, 6, "1"), o));
}

TEST(Hv1Liftings, CyclicSumDeformation) {
  expect_pass(lifting_report(DeformationParameters::parse("0,1"), model(6, 6, "w")));
}

TEST(Hv1Liftings, AllSlots) {
  expect_pass(lifting_report(DeformationParameters::parse("1,w,1,-1"), model(6, 12, "w")));
}

TEST(Hv1Liftings, Rejections) {
  EXPECT_THROW(lifting_report(DeformationParameters::parse("0,0,1"), model(6, 6, "w")), NotAdmissible);
  EXPECT_THROW(hv1_lifting(DeformationParameters::parse("1"), model(6, 6, "w"), 5), MissingA124134);
  EXPECT_NO_THROW(hv1_lifting(DeformationParameters::parse("1"), model(6, 6, "w"), 4));
}

TEST(Hv1Liftings, DeformedRelatorsAreMarked) {
  const auto sp = hv1_lifting(DeformationParameters::parse("0,1"), model(6, 6, "w"), 4);
  EXPECT_FALSE(sp.deformed.empty());
  const auto undeformed = hv1_lifting(DeformationParameters{}, model(6, 6, "w"), 4);
  EXPECT_TRUE(undeformed.deformed.empty());
}

TEST(CleftObjects, TopExactness) {
  EXPECT_TRUE(cleft_top_is_exact(DeformationParameters::parse("0,0,1,1")));
  EXPECT_FALSE(cleft_top_is_exact(DeformationParameters::parse("0,1")));
}

TEST(CleftObjects, GradingCoarsensWithTheParameters) {
  const auto& m = model(24, 12, "w");
  const auto p = cleft_presentation(DeformationParameters::parse("0,0,1,1"), m, 5);
  EXPECT_EQ(p.relations.size(), 12u);
  // y4^6 - 1 must be homogeneous: the grading forgets zeta^6.
  EXPECT_EQ(p.grading.key(Word(6, '\3')), p.grading.key(Word()));
  const auto q = cleft_presentation(DeformationParameters{}, m, 5);
  EXPECT_NE(q.grading.key(Word(6, '\3')), q.grading.key(Word()));
}

TEST(CleftObjects, TopDeformationHasNicholsDimension) {
  CleftOptions o;
  o.jobs = 4;
  expect_pass(cleft_report(DeformationParameters::parse("0,0,1,1"), model(24, 12, "w"), o));
}

TEST(TopElement, UndeformedSectionGivesTheCube) {
  auto res = compute_a124134(DeformationParameters::parse("0,0,0,1"), model(6, 12, "w"));
  EXPECT_EQ(res.status, A124134Result::Status::Computed);
  EXPECT_EQ(res.factors.size(), 3u);
  expect_pass(res.report);
}

TEST(TopElement, DeformedSectionRunsOutOfBudget) {
  A124134Budget b;
  b.seconds = 1;
  auto res = compute_a124134(DeformationParameters::parse("1"), model(6, 12, "w"), b);
  EXPECT_EQ(res.status, A124134Result::Status::Unfinished);
  EXPECT_EQ(res.report.status, Status::Unknown);
  EXPECT_TRUE(res.factors.empty());
}

}  // namespace
}  // namespace nichols::liftings
