#include "nichols/properties.hpp"

#include <gtest/gtest.h>

namespace nichols::properties {
namespace {

void expect_pass(const CheckReport& r) { EXPECT_TRUE(r.passed()) << r.to_json().dump(1); }

TEST(Properties, BraidEquation) { expect_pass(braid_equation()); }
TEST(Properties, Coassociativity) { expect_pass(coassociativity(4)); }
TEST(Properties, TwistedLeibniz) { expect_pass(twisted_leibniz(100, 7)); }
TEST(Properties, RewriteConfluence) { expect_pass(rewrite_confluence(50, 7)); }
TEST(Properties, DimensionOracles) { expect_pass(dimension_oracles(5)); }

}  // namespace
}  // namespace nichols::properties
