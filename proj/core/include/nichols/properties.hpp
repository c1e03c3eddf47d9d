#pragma once

#include "nichols/report.hpp"

#include <cstdint>

namespace nichols::properties {

// Braid equation of HV1 on every letter triple, with symbolic q1.
CheckReport braid_equation();
// (Delta (x) id) Delta = (id (x) Delta) Delta on every word of length <= max_length.
CheckReport coassociativity(int max_length = 5);
// d_i(ab) = a d_i(b) + d_i(a) (g_i . b) on random pairs.
CheckReport twisted_leibniz(int pairs = 500, uint64_t seed = 1);
// Leftmost and rightmost rewriting agree with the table normal form on random
// elements up to the completion cap.
CheckReport rewrite_confluence(int elements = 200, uint64_t seed = 1, int cap = 8);
// Automaton word counts, table counts and brute-force linear algebra agree.
CheckReport dimension_oracles(int through = 6);

}  // namespace nichols::properties
