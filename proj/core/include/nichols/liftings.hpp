#pragma once

#include "nichols/engine.hpp"
#include "nichols/hv1.hpp"
#include "nichols/realization.hpp"
#include "nichols/report.hpp"

#include <array>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace nichols::liftings {

using C = CyclotomicNumber;
using TC = Tensor<C>;
using GB = GroebnerBasis<C>;

struct NotAdmissible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MissingA124134 : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite realization of HV1 together with the image of q1.
struct Hv1Model {
  std::string name;
  std::shared_ptr<const FiniteRealization> realization;
  Specialization specialization;
  int order() const { return realization->group().order(); }
};

// Quotient of the enveloping group by gamma^N and zeta^M; throws ConfigError
// unless the realization and the HV1 shape checks pass.
Hv1Model enveloping_model(int N, int M, const Specialization& s);
// (24, 12) with q1 -> w: every deformation slot is admissible there.
Hv1Model default_model();
// "env:N,M" or "table:<file>" (the file holds a FiniteGroup JSON plus "generators").
Hv1Model model_from_descriptor(std::string_view descriptor, const Specialization& s);

struct DeformationParameters {
  std::array<C, 4> lambda{C::zero(), C::zero(), C::zero(), C::zero()};

  bool is_zero() const;
  bool nonzero(int slot) const { return !lambda[static_cast<size_t>(slot)].is_zero(); }
  std::string to_string() const;
  // "l1,l2,l3,l4" in the cyclotomic grammar; missing trailing slots are zero.
  static DeformationParameters parse(std::string_view text);
};

// Slot k passes when lambda_k = 0 or the realization permits a nonzero value.
std::array<bool, 4> admissible_slots(const DeformationParameters& l, const FiniteRealization& r);
bool admissible(const DeformationParameters& l, const FiniteRealization& r);

// ---------------------------------------------------------------- strata

struct StratumElement {
  std::string name;
  hv1::T element;
  EnvelopingElement group_degree;
};

struct Stratum {
  int level = 0;
  std::vector<StratumElement> elements;
};

// G_0 .. G_4: the minimal relations split into levels, each level primitive
// modulo the ideal of the previous ones.
std::vector<Stratum> stratification();

struct StrataOptions {
  bool include_top = true;  // primitivity of the degree-18 element (completes through 18)
  int jobs = 1;
};
// Group-action tables of every stratum, group degrees, and primitivity by level.
CheckReport strata_report(const StrataOptions& o = {});

// ---------------------------------------------------------------- smash products

// T(V) # kG presented by the letters a_1..a_n followed by one letter per
// generator g_i of G. The group part is the Cayley rewriting system of G for
// its shortlex normal words; cross relations move group letters to the right.
// a-letters weigh more than any group normal word, so weight / a_weight is the
// number of a-letters.
struct SmashPresentation {
  Presentation<C> presentation;
  std::shared_ptr<const FiniteRealization> realization;
  int a_letters = 0;
  int a_weight = 1;
  std::vector<int> generator_elements;  // group element of each group letter
  std::vector<Word> group_words;        // normal word of each group element
  std::vector<std::string> deformed;    // names of the deformed relations

  int a_degree(const Word& w) const;
  TC group_element(int g) const;
  int cap_for_a_degree(int d) const { return a_weight * (d + 1) - 1; }
};

// Free smash element: (a-word, group element) -> coefficient.
using SmashElement = std::map<std::pair<Word, int>, C>;

struct SmashBuilder {
  explicit SmashBuilder(std::shared_ptr<const FiniteRealization> r, std::vector<int> a_precedence = {},
                        std::vector<std::string> a_names = {});

  // Top part in a-letters with an optional lower part written in the smash letters.
  void add(std::string name, const TC& top, const TC& lower = {}, bool deformed = false);
  void add_product(std::string name, std::vector<TC> factors, const TC& lower = {}, bool deformed = false);
  // A free smash element whose top part has no group component.
  void add_element(std::string name, const std::map<std::pair<Word, int>, C>& x, bool deformed = false);
  // Blocks by the quotient of G by the normal closure of these elements.
  void grade_modulo(std::vector<int> elements);
  SmashPresentation build() const;

  const SmashPresentation& base() const { return sp_; }

 private:
  SmashPresentation sp_;
  std::vector<int> a_precedence_;
  std::vector<int> normal_generators_;
  bool graded_ = true;
};

// Smash product arithmetic without relations.
SmashElement smash_mul(const FiniteRealization& r, const SmashElement& x, const SmashElement& y);
SmashElement smash_from(const TC& t, int group_element);
// (u, g) -> u w_g in the smash letters.
TC to_smash_tensor(const SmashPresentation& sp, const SmashElement& x);
// x followed by its conjugates h x h^-1 under the generators, closed up to scalars.
// Imposing a whole orbit keeps the weight filtration honest: a lone representative
// would let its conjugates appear only as weight-lowering consequences.
std::vector<SmashElement> conjugation_orbit(const FiniteRealization& r, const SmashElement& x);
// c with a = c b, if any.
std::optional<C> proportional(const SmashElement& a, const SmashElement& b);
// (g, 1)-skew-primitivity defect: Delta(x) - x (x) 1 - g (x) x, legs in T(V) # kG.
using SmashSquare = std::map<std::tuple<Word, int, Word, int>, C>;
SmashSquare skew_primitivity_defect(const FiniteRealization& r, const SmashElement& x, int g);
// The defect with legs reduced in a completed smash presentation.
std::map<std::pair<uint32_t, uint32_t>, C> reduce_square(const SmashPresentation& sp, const GB& gb,
                                                         const SmashSquare& s);

// Counts of normal words by number of a-letters.
std::vector<int64_t> a_degree_counts(const SmashPresentation& sp, const GB& gb, int up_to);

// ---------------------------------------------------------------- FK3 liftings

SmashPresentation fk3_lifting(const std::array<C, 2>& lambda, std::shared_ptr<const FiniteRealization> r);
// Admissibility, dimension 12 |G| with a finiteness certificate, the implied
// relations, and a-degree counts (1, 3, 4, 3, 1) |G|.
CheckReport fk3_lifting_report(const std::array<C, 2>& lambda, std::shared_ptr<const FiniteRealization> r,
                               int jobs = 1);

// ---------------------------------------------------------------- HV1 cleft objects

struct CleftOptions {
  int cap = 60;
  int jobs = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// E_k(lambda) for k = 1..4 and k = 5 for E(lambda), over the specialized field.
// The top relation uses the cube itself; this is exact when lambda_1 = lambda_2 = 0,
// where the section is the identity, and flagged otherwise.
Presentation<C> cleft_presentation(const DeformationParameters& l, const Hv1Model& m, int level);
bool cleft_top_is_exact(const DeformationParameters& l);
CheckReport cleft_report(const DeformationParameters& l, const Hv1Model& m, const CleftOptions& o = {});

// ---------------------------------------------------------------- HV1 liftings

// L_k(lambda) for k = 1..4, and k = 5 for L(lambda): the representative of each
// stratum below k with its conjugation orbit.
SmashPresentation hv1_lifting(const DeformationParameters& l, const Hv1Model& m, int level);

struct LiftingOptions {
  int a_degree = 3;  // truncation for the dimension checks
  int jobs = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};
// Conjugate closure, skew-primitivity of the deformed relators, and a-degree
// counts of L_4(lambda) and L(lambda) against the undeformed series times |G|.
CheckReport lifting_report(const DeformationParameters& l, const Hv1Model& m, const LiftingOptions& o = {});

// ---------------------------------------------------------------- top primitive element

struct A124134Budget {
  double seconds = 30;
  int jobs = 1;
};

struct A124134Result {
  enum class Status { Computed, Unfinished };
  Status status = Status::Unfinished;
  std::vector<hv1::T> factors;  // the element as a product, when computed
  CheckReport report;
};

// The (g_1^12 g_4^6, 1)-primitive element of L_4(lambda) lifting z124134.
// With lambda_1 = lambda_2 = 0 the section is the identity and the element is
// the cube itself, certified primitive. Otherwise the expansion is attempted
// within the budget and reported as unfinished when it runs out.
A124134Result compute_a124134(const DeformationParameters& l, const Hv1Model& m, const A124134Budget& b = {});

}  // namespace nichols::liftings
