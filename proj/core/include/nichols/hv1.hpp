#pragma once

#include "nichols/braided.hpp"
#include "nichols/engine.hpp"
#include "nichols/realization.hpp"
#include "nichols/report.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace nichols::hv1 {

using T = Tensor<Scalar>;

// Indices are 1-based as in the usual notation: letters x1..x4 are 0..3.
int wrap3(int k);  // representative in 1..3
T x(int i);
T z(int h);                 // x_h x4 - q1 x4 x_h
T u(int i, int j);          // (ad x_i) z_j = x_i z_j + q1 z_{2i-j} x_i
T u12413();                 // u12 u13 + w^2 u13 u12
T z4();                     // x4^6
std::vector<T> z124134_factors();  // three copies of u12413

struct Hv1Relation {
  std::string family;
  std::string name;
  Relation<Scalar> relation;
  std::pair<int, int> bidegree;  // (letters among x1..x3, letters x4)
  EnvelopingElement group_degree;
  int degree() const { return bidegree.first + bidegree.second; }
};

struct Hv1Relations {
  std::vector<Hv1Relation> minimal;        // twelve relations in six families
  std::vector<Hv1Relation> derived;        // consequences used by the larger presentation
  std::vector<Hv1Relation> distinguished;  // minimal set without x4^6 and the cube
};

Hv1Relations relations();
const std::string& top_family();  // family name of the degree-18 relation

// Default letter precedence x4 < x1 < x2 < x3.
std::vector<int> default_precedence();

struct PresentationOptions {
  std::vector<int> precedence = default_precedence();
  bool use_grading = true;
  int gamma_mod = 0;  // coarsen the grading (0 keeps the full enveloping degree)
  int zeta_mod = 0;
  bool drop_nu = false;
};

Presentation<Scalar> presentation(const std::vector<Hv1Relation>& rels, const PresentationOptions& o = {});
std::vector<Hv1Relation> without_family(const std::vector<Hv1Relation>& rels, const std::string& family);

// Sub-Nichols algebras, each with its own presentation.
Presentation<Scalar> v1_presentation();    // x1..x3, quadratic relations
Presentation<Scalar> v2_presentation();    // x4 with x4^6
Presentation<Scalar> v12_presentation();   // z1..z3 of weight 2
Presentation<Scalar> v112_presentation();  // u12, u13 of weight 3

// Whether the product F_1 ... F_k is primitive in T(V)/I, where gb presents
// T(V)/I through the total degree. The coproduct is expanded factor by factor
// with legs reduced after every step.
bool primitive_modulo(const GroebnerBasis<Scalar>& gb, const BraidedVectorSpace<Scalar>& V, const std::vector<T>& factors);

// Polynomial helpers on coefficient vectors.
std::vector<int64_t> poly_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b);
std::vector<int64_t> fk3_series();  // 1 + 3t + 4t^2 + 3t^3 + t^4
std::vector<int64_t> stretch(const std::vector<int64_t>& a, int k);  // a(t^k)
// Product of the four factor series.
std::vector<int64_t> factorized_series();

// One row of the table of degrees of the minimal relations.
struct DegreeRow {
  std::string name;
  std::pair<int, int> bidegree, expected_bidegree;
  EnvelopingElement group_degree, expected_group_degree;
  bool ok() const { return bidegree == expected_bidegree && group_degree == expected_group_degree; }
};
std::vector<DegreeRow> degree_table(const Hv1Relations& r);

struct Hv1Context;  // shared completed bases, built lazily

struct CheckOptions {
  int jobs = 1;
  int max_degree = 40;        // cap for the Nichols algebra
  int prenichols_degree = 24; // cap for the distinguished pre-Nichols algebra
  bool elementwise_minimality = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

class Checks {
 public:
  explicit Checks(CheckOptions o = {});
  ~Checks();

  const Hv1Relations& rels() const;
  const GroebnerBasis<Scalar>& nichols_basis();        // G completed
  const GroebnerBasis<Scalar>& without_top_basis();    // G without the cube, through degree 18
  const GroebnerBasis<Scalar>& prenichols_basis();     // distinguished set

  CheckReport relation_table();
  CheckReport relations_in_nichols();
  CheckReport dimension();
  CheckReport pbw();
  CheckReport minimality();
  CheckReport prenichols();
  CheckReport center();
  CheckReport dual_iso();
  CheckReport sub_nichols();
  CheckReport fk3();
  CheckReport v2();
  CheckReport v12();
  CheckReport v112();

  // Number of PBW words and their multidegree enumeration.
  static int64_t pbw_count();

 private:
  std::unique_ptr<Hv1Context> ctx_;
};

// PBW words of the basis, as lists of factor tensors with their exponents.
struct PbwWord {
  int n4 = 0;
  bool z_bracket = false;  // z2 z1 branch
  std::array<int, 3> nz{};  // n14, n24, n34 (n24 unused in the bracket branch)
  int n124 = 0, n124134 = 0, n134 = 0;
  bool x_bracket = false;  // x2 x1 branch
  std::array<int, 3> nx{};
  std::vector<T> factors() const;
  int degree() const;
};
std::vector<PbwWord> pbw_words();

}  // namespace nichols::hv1
