#pragma once

#include "nichols/rack.hpp"
#include "nichols/scalar.hpp"

#include "json.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InfiniteGroup : std::logic_error {
  using std::logic_error::logic_error;
};

// nu^b gamma^a zeta^c in the enveloping group: gamma nu = nu^2 gamma, zeta central, nu^3 = 1.
// Exponents are 64-bit with overflow checks.
struct EnvelopingElement {
  int b = 0;
  int64_t a = 0;
  int64_t c = 0;

  static EnvelopingElement identity() { return {}; }
  static EnvelopingElement nu() { return {1, 0, 0}; }
  static EnvelopingElement gamma() { return {0, 1, 0}; }
  static EnvelopingElement zeta() { return {0, 0, 1}; }

  bool is_identity() const { return b == 0 && a == 0 && c == 0; }
  EnvelopingElement inverse() const;
  EnvelopingElement pow(int64_t k) const;
  std::string to_string() const;
  friend EnvelopingElement operator*(const EnvelopingElement& x, const EnvelopingElement& y);
  friend bool operator==(const EnvelopingElement&, const EnvelopingElement&) = default;
  friend auto operator<=>(const EnvelopingElement&, const EnvelopingElement&) = default;
};

// g_i = gamma nu^{i-1} for i = 1..3 and g_4 = zeta (0-based index 0..3).
EnvelopingElement hv1_generator(int letter);

// Finite group given by a multiplication table on {0, ..., order-1}.
class FiniteGroup {
 public:
  FiniteGroup(std::string description, int order, std::vector<int> table, std::vector<std::string> names);

  // Quotient of the enveloping group by gamma^N and zeta^M; N must be even.
  static FiniteGroup enveloping_quotient(int N, int M);
  static FiniteGroup symmetric3();
  // {"order": n, "table": [[...]], "names": [...]} with 0-based entries.
  static FiniteGroup from_json(const nlohmann::json& j);

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int x, int y) const { return table_[static_cast<size_t>(x * order_ + y)]; }
  int inv(int x) const { return inverse_[static_cast<size_t>(x)]; }
  int pow(int x, int64_t k) const;
  int conj(int g, int h) const { return mul(mul(g, h), inv(g)); }
  bool is_central(int x) const;
  const std::string& name(int x) const { return names_[static_cast<size_t>(x)]; }
  const std::string& description() const { return description_; }
  // For enveloping quotients: the index of a normal-form element.
  std::optional<int> from_enveloping(const EnvelopingElement& e) const;
  // Exhaustive associativity check.
  bool is_associative() const;

 private:
  std::string description_;
  int order_;
  int identity_ = -1;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  int quotient_N_ = 0;
  int quotient_M_ = 0;
};

struct RealizationCheck {
  bool ok = true;
  std::string violation;
  explicit operator bool() const { return ok; }
};

// Principal realization over a finite group: g(i) in the group, 1-cocycles chi_i
// given on generators and extended by chi_i(g_k t) = chi_i(t) chi_{t|>i}(g_k).
class FiniteRealization {
 public:
  // generator_values[i][k] = chi_i(g_k).
  FiniteRealization(std::shared_ptr<const FiniteGroup> group, Rack rack, std::vector<int> g,
                    std::vector<std::vector<CyclotomicNumber>> generator_values, std::string description = {});

  int letters() const { return static_cast<int>(g_.size()); }
  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  const Rack& rack() const { return rack_; }
  int g(int letter) const { return g_[static_cast<size_t>(letter)]; }
  const std::string& description() const { return description_; }

  // (h |> i, chi_i(h)); only meaningful after validate() succeeds.
  std::pair<int, CyclotomicNumber> act(int h, int letter) const;
  const CyclotomicNumber& chi(int letter, int h) const;
  int letter_action(int h, int letter) const { return action_[static_cast<size_t>(h * letters() + letter)]; }
  const std::vector<std::vector<CyclotomicNumber>>& generator_values() const { return gen_values_; }

  // Conjugation closure, rack compatibility, cocycle well-definedness, YD compatibility.
  RealizationCheck validate() const { return check_; }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  Rack rack_;
  std::vector<int> g_;
  std::vector<std::vector<CyclotomicNumber>> gen_values_;
  std::string description_;
  std::vector<int> action_;                   // h * letters + i -> h |> i
  std::vector<CyclotomicNumber> chi_;         // i * order + h -> chi_i(h)
  RealizationCheck check_;
};

// The enveloping group realization with symbolic q1.
class EnvelopingRealization {
 public:
  EnvelopingRealization();

  int letters() const { return 4; }
  const Rack& rack() const { return rack_; }
  EnvelopingElement g(int letter) const { return hv1_generator(letter); }
  // h |> i via conjugation of the g's.
  int letter_action(const EnvelopingElement& h, int letter) const;
  // chi_i(h) by decomposing h = nu^b gamma^a zeta^c into generators, memoized.
  Scalar chi(int letter, const EnvelopingElement& h) const;
  std::pair<int, Scalar> act(const EnvelopingElement& h, int letter) const {
    return {letter_action(h, letter), chi(letter, h)};
  }
  // Relations among the g's and the cocycle law on the ball |a|, |c| <= radius.
  RealizationCheck validate(int radius = 2) const;

 private:
  Scalar chi_uncached(int letter, const EnvelopingElement& h) const;

  Rack rack_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, EnvelopingElement>, Scalar> memo_;
};

// Generator values of the HV1 cocycles: chi_i(g_j) = -1, chi_i(g_4) = q2,
// chi_4(g_j) = q1, chi_4(g_4) = -w^2.
std::vector<std::vector<Scalar>> hv1_cocycle_generator_values();

// HV1 over the (N, M) quotient with q1 specialized.
FiniteRealization hv1_finite_realization(int N, int M, const Specialization& s);
// HV1 over an arbitrary finite group with chosen images of g_1..g_4.
FiniteRealization hv1_realization_on(std::shared_ptr<const FiniteGroup> group, std::vector<int> g,
                                     const Specialization& s);
// FK3 over S3 with g_i the transpositions and chi_i = -1 on generators.
FiniteRealization fk3_realization_s3();

// Additional HV1-specific checks: g_i^2 = g_j^2, g_i g_j = g_{2i-j} g_i, g_4 central,
// and the generator values of the cocycles.
RealizationCheck validate_hv1_shape(const FiniteRealization& r, const Specialization& s);

// Whether each lambda_k may be nonzero on a finite HV1 realization.
std::array<bool, 4> lambda_support_predicates(const FiniteRealization& r);
// Symbolic version: returns the verdicts that can be refuted on generators;
// throws InfiniteGroup when a slot cannot be decided without exhaustion.
std::array<bool, 4> lambda_support_predicates(const EnvelopingRealization& r);
// FK3 slots (lambda_1, lambda_2).
std::array<bool, 2> fk3_lambda_support(const FiniteRealization& r);

nlohmann::json to_json(const FiniteRealization& r);

}  // namespace nichols
