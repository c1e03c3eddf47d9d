#pragma once

#include "nichols/tensor.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace nichols {

struct CapTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoefficientNotInvertible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Order on words: weight, then length, then lexicographic by letter rank.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  // precedence lists letters from smallest to largest.
  MonomialOrder(std::vector<int> weights, const std::vector<int>& precedence);
  static MonomialOrder natural(int n) { return MonomialOrder(std::vector<int>(static_cast<size_t>(n), 1), identity(n)); }
  static std::vector<int> identity(int n);

  int letters() const { return static_cast<int>(rank_.size()); }
  int rank(int letter) const { return rank_[static_cast<size_t>(letter)]; }
  int weight(int letter) const { return weight_[static_cast<size_t>(letter)]; }
  const std::vector<int>& weights() const { return weight_; }
  int weight(const Word& w) const;
  int max_weight() const;
  bool less(const Word& a, const Word& b) const;
  std::string describe(const std::vector<std::string>& names) const;

 private:
  std::vector<int> weight_;
  std::vector<int> rank_;
};

// Monoid map words -> keys; every relation must be key-homogeneous. Used to
// split the linear algebra into independent blocks.
struct Grading {
  std::string name = "trivial";
  uint64_t identity = 0;
  std::function<uint64_t(uint64_t, int)> step = [](uint64_t k, int) { return k; };

  uint64_t key(uint64_t start, const Word& w) const {
    for (size_t i = 0; i < w.size(); ++i) start = step(start, letter_at(w, i));
    return start;
  }
  uint64_t key(const Word& w) const { return key(identity, w); }

  static Grading trivial() { return {}; }
  // Group degree in the enveloping group nu^b gamma^a zeta^c. Letters with
  // kind 0..2 map to g_1..g_3, kind 3 to zeta. a and c are reduced mod a_mod
  // and c_mod when positive (a_mod must then be even). drop_nu maps to the
  // quotient by the normal subgroup generated by nu.
  static Grading enveloping(std::vector<int> letter_kind, int a_mod = 0, int c_mod = 0, bool drop_nu = false);
};

// r = sum_t c_t F_{t,1} ... F_{t,k} + lower, every product of the same top weight.
template <class K>
struct Relation {
  std::string name;
  std::vector<std::pair<K, std::vector<Tensor<K>>>> products;
  Tensor<K> lower;

  // Splits a tensor into its top-weight part and the rest.
  static Relation element(std::string name, const Tensor<K>& t, const MonomialOrder& order);
  static Relation product(std::string name, std::vector<Tensor<K>> factors, Tensor<K> lower = {});

  int weight(const MonomialOrder& order) const;
  // A word of the top part (for key computation); empty if the relation is zero.
  Word representative() const;
  Tensor<K> top() const;
  Tensor<K> expand() const { return top() + lower; }
};

template <class K>
struct Presentation {
  int letters = 0;
  std::vector<std::string> names;
  std::vector<Relation<K>> relations;
  MonomialOrder order;
  Grading grading;

  static Presentation make(int letters, std::vector<Relation<K>> relations = {}, std::vector<std::string> names = {});
  bool is_homogeneous() const;
};

template <class K>
struct RewriteRule {
  Word lead;
  Tensor<K> tail;  // lead - tail lies in the ideal
};

struct HilbertSeries {
  std::vector<int64_t> coefficients;
  std::optional<int64_t> total;  // set only with a finiteness certificate
  int64_t partial_sum() const;
  nlohmann::json to_json() const;
  std::string table() const;
};

struct Dimension {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  int64_t value = 0;  // total for Finite
  int degree = 0;     // completed degree for Unknown
  std::string to_string() const;
};

struct CompletionOptions {
  int jobs = 1;
  // Stop once enough consecutive empty degrees certify finiteness.
  bool stop_when_finite = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct CompletionStats {
  size_t rows_generated = 0;
  size_t rows_skipped = 0;
  size_t blocks = 0;
  double seconds = 0;
  bool budget_exhausted = false;
  // A row with vanishing top part but nonzero lower part was met (filtered case).
  bool collapse_detected = false;
};

enum class RewriteStrategy { Leftmost, Rightmost };

template <class K>
class GroebnerBasis {
 public:
  using Vec = std::vector<std::pair<uint32_t, K>>;

  int letters() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  int completed_through() const { return completed_; }
  // Finiteness certified: a run of max-letter-weight empty degrees was reached.
  bool finite_certified() const { return finished_; }
  const std::vector<RewriteRule<K>>& rules() const { return rules_; }
  const CompletionStats& stats() const { return stats_; }

  size_t normal_word_count() const { return words_.size(); }
  size_t normal_word_count(int degree) const;
  uint32_t first_id(int degree) const { return start_[static_cast<size_t>(degree)]; }
  const Word& normal_word(uint32_t id) const { return words_[id]; }
  int weight_of(uint32_t id) const { return wdeg_[id]; }
  std::optional<uint32_t> id_of(const Word& w) const;
  std::vector<Word> normal_words(int degree) const;

  Tensor<K> normal_form(const Tensor<K>& a) const;
  // Normal form of F_1 F_2 ... F_k without expanding the product.
  Tensor<K> normal_form_product(const std::vector<Tensor<K>>& factors) const;
  // Rewriting by the rules only (no tables), choosing occurrences by `s`.
  Tensor<K> reduce_by_rules(const Tensor<K>& a, RewriteStrategy s = RewriteStrategy::Leftmost) const;
  bool is_normal(const Word& w) const;

  // Graded dimensions from the normal-word tables.
  HilbertSeries hilbert(int up_to) const;
  // Counts of words avoiding every rule lead, by an automaton walk.
  std::vector<int64_t> hilbert_by_automaton(int up_to) const;
  Dimension dimension() const;
  // All rule overlaps of weight <= completed_through rewrite to zero.
  bool rules_complete_for_all_degrees() const;

  // Sparse-vector interface over normal-word ids.
  Vec unit(uint32_t id) const { return {{id, k_one<K>()}}; }
  Vec to_vec(const Tensor<K>& a) const;
  Tensor<K> to_tensor(const Vec& v) const;
  Vec mul_letter(const Vec& v, int letter) const;
  Vec mul_tensor(const Vec& v, const Tensor<K>& t) const;
  const Vec& right_mul(uint32_t id, int letter) const;

 private:
  template <class>
  friend class Completion;

  int n_ = 0;
  std::vector<std::string> names_;
  MonomialOrder order_;
  Grading grading_;
  std::vector<Word> words_;
  std::vector<int> wdeg_;
  std::vector<uint64_t> key_;
  std::vector<uint32_t> start_;  // start_[d] .. start_[d+1]: ids of weight d
  std::unordered_map<Word, uint32_t> index_;
  std::vector<Vec> rm_;                  // id * n + letter
  std::vector<char> rm_ready_;
  std::vector<RewriteRule<K>> rules_;
  std::unordered_map<Word, size_t> rule_index_;
  int completed_ = 0;
  int max_relation_weight_ = 0;
  bool homogeneous_ = true;
  bool finished_ = false;
  CompletionStats stats_;
};

template <class K>
GroebnerBasis<K> complete(const Presentation<K>& p, int degree_cap, const CompletionOptions& options = {});

// Complete through deg(a) and test the normal form for zero.
template <class K>
bool ideal_membership(const Tensor<K>& a, const Presentation<K>& p);

// Independent oracle: dimensions of the graded components of T/I up to `up_to`,
// by row reduction of the whole component spanned by u r v (homogeneous only).
template <class K>
std::vector<int64_t> brute_force_dimensions(const Presentation<K>& p, int up_to);

template <class K>
nlohmann::json presentation_to_json(const Presentation<K>& p);
template <class K>
Presentation<K> presentation_from_json(const nlohmann::json& j);

}  // namespace nichols
