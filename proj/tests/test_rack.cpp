#include "nichols/rack.hpp"

#include <gtest/gtest.h>

namespace nichols {
namespace {

TEST(Rack, TranspositionsOfS3) {
  Rack r = transposition_rack();
  EXPECT_TRUE(validate_rack(r));
  EXPECT_TRUE(r.is_quandle());
  EXPECT_EQ(r.op(1, 0), 2);  // 2 |> 1 = 3 in 1-based labels
  EXPECT_EQ(r.op(0, 1), 2);
  EXPECT_EQ(r.op(0, 2), 1);
}

TEST(Rack, TrivialRack) {
  std::vector<int> t;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) t.push_back(y);
  EXPECT_TRUE(validate_rack(Rack(3, t)));
}

TEST(Rack, BruteForceViolationIsReported) {
  // Search all size-3 tables with bijective translations for one failing self-distributivity.
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  bool found = false;
  for (int a = 0; a < 6 && !found; ++a)
    for (int b = 0; b < 6 && !found; ++b)
      for (int c = 0; c < 6 && !found; ++c) {
        std::vector<int> t;
        for (int p : {a, b, c}) t.insert(t.end(), perms[p].begin(), perms[p].end());
        Rack r(3, t);
        auto res = validate_rack(r);
        if (!res) {
          ASSERT_TRUE(res.triple.has_value());
          auto [x, y, z] = *res.triple;
          EXPECT_NE(r.op(x, r.op(y, z)), r.op(r.op(x, y), r.op(x, z)));
          found = true;
        }
      }
  EXPECT_TRUE(found);
  EXPECT_FALSE(validate_rack(Rack(2, {0, 0, 0, 0})));
}

TEST(Cocycle, ConstantCocycles) {
  Rack r = transposition_rack();
  EXPECT_TRUE(validate_cocycle(r, TwoCocycle<Scalar>::constant(3, Scalar(-1))));
  EXPECT_TRUE(validate_cocycle(r, TwoCocycle<Scalar>::constant(3, Scalar(1))));
  auto bad = TwoCocycle<Scalar>::constant(3, Scalar(-1));
  bad.at(0, 0) = Scalar::omega();
  EXPECT_FALSE(validate_cocycle(r, bad));
}

TEST(Cocycle, Hv1BlocksAndExhaustiveCondition) {
  auto [r, q] = hv1_rack_and_cocycle();
  EXPECT_TRUE(validate_rack(r));
  EXPECT_TRUE(r.is_quandle());
  EXPECT_TRUE(validate_cocycle(r, q));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(q(i, j), Scalar(-1));
    EXPECT_EQ(q(i, 3), Scalar::q1());
    EXPECT_EQ(q(3, i), Scalar::q2());
    EXPECT_EQ(r.op(3, i), i);
    EXPECT_EQ(r.op(i, 3), 3);
  }
  EXPECT_EQ(q(3, 3), -Scalar::omega().pow(2));
}

TEST(Rack, ConjugationRackOfCentralSingleton) {
  Rack r = conjugation_rack(1, [](int, int) { return std::optional<int>(0); });
  EXPECT_EQ(r.size(), 1);
  EXPECT_TRUE(r.is_quandle());
  EXPECT_THROW(conjugation_rack(2, [](int, int) { return std::optional<int>(); }), NotClosed);
}

TEST(Rack, JsonRoundTrip) {
  Rack r = with_fixed_point(transposition_rack());
  EXPECT_EQ(rack_from_json(to_json(r)), r);
}

}  // namespace
}  // namespace nichols
