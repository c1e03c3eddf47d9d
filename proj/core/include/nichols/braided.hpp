#pragma once

#include "nichols/rack.hpp"
#include "nichols/realization.hpp"
#include "nichols/tensor.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace nichols {

struct NotPrimitive : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rack-type braided vector space: c(x_i (x) x_j) = q(i,j) x_{i|>j} (x) x_i.
// g_i . x_j = q(i,j) x_{i|>j} is the only group data the algebra layer needs.
template <class K>
class BraidedVectorSpace {
 public:
  BraidedVectorSpace() = default;
  BraidedVectorSpace(const Rack& rack, const TwoCocycle<K>& q, std::vector<std::string> names = {})
      : n_(rack.size()), names_(std::move(names)) {
    if (names_.empty()) names_ = default_letter_names(n_);
    q_.reserve(static_cast<size_t>(n_ * n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        q_.push_back(q(i, j));
        tgt_.push_back(rack.op(i, j));
      }
  }

  int size() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }
  const K& coeff(int i, int j) const { return q_[static_cast<size_t>(i * n_ + j)]; }
  int target(int i, int j) const { return tgt_[static_cast<size_t>(i * n_ + j)]; }

  // g_i . w, letter by letter.
  std::pair<K, Word> act(int i, const Word& w) const {
    K c = k_one<K>();
    Word out(w.size(), '\0');
    for (size_t k = 0; k < w.size(); ++k) {
      const int j = letter_at(w, k);
      c *= coeff(i, j);
      out[k] = static_cast<char>(target(i, j));
    }
    return {c, out};
  }
  // g_by . w where g_by is the group degree of the word `by`.
  std::pair<K, Word> act_by_word(const Word& by, const Word& w) const {
    K c = k_one<K>();
    Word cur = w;
    for (size_t k = by.size(); k-- > 0;) {
      auto [d, next] = act(letter_at(by, k), cur);
      c *= d;
      cur = std::move(next);
    }
    return {c, cur};
  }
  Tensor<K> act(int i, const Tensor<K>& a) const {
    Tensor<K> t;
    for (const auto& [w, c] : a.terms()) {
      auto [d, v] = act(i, w);
      t.add_term(v, c * d);
    }
    return t;
  }
  Tensor<K> act_by_word(const Word& by, const Tensor<K>& a) const {
    Tensor<K> t;
    for (const auto& [w, c] : a.terms()) {
      auto [d, v] = act_by_word(by, w);
      t.add_term(v, c * d);
    }
    return t;
  }

  // Exhaustive braid equation on letter triples.
  AxiomCheck braid_equation() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          auto [l, r] = braid_sides(i, j, k);
          if (!(l == r)) return {false, std::array<int, 3>{i, j, k}, "braid equation fails"};
        }
    return {};
  }
  // Both sides of the braid equation applied to x_i (x) x_j (x) x_k, as coefficient * word.
  std::pair<std::pair<K, Word>, std::pair<K, Word>> braid_sides(int i, int j, int k) const {
    auto c12 = [this](std::pair<K, Word> t) {
      const int a = letter_at(t.second, 0), b = letter_at(t.second, 1);
      t.first *= coeff(a, b);
      t.second[0] = static_cast<char>(target(a, b));
      t.second[1] = static_cast<char>(a);
      return t;
    };
    auto c23 = [this](std::pair<K, Word> t) {
      const int a = letter_at(t.second, 1), b = letter_at(t.second, 2);
      t.first *= coeff(a, b);
      t.second[1] = static_cast<char>(target(a, b));
      t.second[2] = static_cast<char>(a);
      return t;
    };
    std::pair<K, Word> start{k_one<K>(), make_word({i, j, k})};
    return {c12(c23(c12(start))), c23(c12(c23(start)))};
  }

  // Identifies the space for memo keys: sizes, braiding table and names.
  std::string fingerprint() const {
    std::string s = std::to_string(n_);
    for (size_t k = 0; k < q_.size(); ++k) s += "|" + q_[k].to_string() + ":" + std::to_string(tgt_[k]);
    return s;
  }

 private:
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<K> q_;
  std::vector<int> tgt_;
};

// q(x, y) = chi_y(g_x), target = g_x |> y.
BraidedVectorSpace<Scalar> build_hv1(const EnvelopingRealization& r);
BraidedVectorSpace<CyclotomicNumber> build_from_realization(const FiniteRealization& r);
// HV1 directly from the rack and cocycle tables.
BraidedVectorSpace<Scalar> hv1_space();
// FK3 braiding (transpositions, constant -1) over any coefficient field.
template <class K>
BraidedVectorSpace<K> fk3_space() {
  return BraidedVectorSpace<K>(transposition_rack(),
                               TwoCocycle<K>::constant(3, FieldTraits<K>::from_rational(Rational(-1))));
}

// (a (x) b)(a' (x) b') = a (g_b . a') (x) b b'.
template <class K>
TensorSquare<K> mul2(const BraidedVectorSpace<K>& V, const TensorSquare<K>& A, const TensorSquare<K>& B) {
  TensorSquare<K> out;
  for (const auto& [k1, c1] : A.terms())
    for (const auto& [k2, c2] : B.terms()) {
      auto [d, moved] = V.act_by_word(k1.second, k2.first);
      out.add_term(k1.first + moved, k1.second + k2.second, c1 * c2 * d);
    }
  return out;
}

template <class K>
TensorSquare<K> coproduct_word(const BraidedVectorSpace<K>& V, const Word& w) {
  // Delta(u x) = Delta(u) (x (x) 1 + 1 (x) x).
  std::map<std::pair<Word, Word>, K> cur;
  cur.emplace(std::make_pair(Word(), Word()), k_one<K>());
  for (size_t p = 0; p < w.size(); ++p) {
    const int x = letter_at(w, p);
    std::map<std::pair<Word, Word>, K> next;
    auto add = [&next](Word a, Word b, K c) {
      if (c.is_zero()) return;
      auto [it, ins] = next.try_emplace({std::move(a), std::move(b)}, c);
      if (!ins) {
        it->second += c;
        if (it->second.is_zero()) next.erase(it);
      }
    };
    for (const auto& [k, c] : cur) {
      auto [d, moved] = V.act_by_word(k.second, Word(1, static_cast<char>(x)));
      add(k.first + moved, k.second, c * d);
      add(k.first, k.second + static_cast<char>(x), c);
    }
    cur = std::move(next);
  }
  TensorSquare<K> out;
  for (const auto& [k, c] : cur) out.add_term(k.first, k.second, c);
  return out;
}

template <class K>
TensorSquare<K> coproduct(const BraidedVectorSpace<K>& V, const Tensor<K>& a) {
  TensorSquare<K> out;
  for (const auto& [w, c] : a.terms()) out += c * coproduct_word(V, w);
  return out;
}

template <class K>
bool is_primitive(const BraidedVectorSpace<K>& V, const Tensor<K>& a) {
  TensorSquare<K> d = coproduct(V, a);
  d -= TensorSquare<K>::simple(a, Tensor<K>::one());
  d -= TensorSquare<K>::simple(Tensor<K>::one(), a);
  return d.is_zero();
}

// d_i(u) = sum_k [u_k = i] u_1..u_{k-1} (g_i . u_{k+1}..u_n).
template <class K>
Tensor<K> skew_derivation(const BraidedVectorSpace<K>& V, int i, const Tensor<K>& a) {
  Tensor<K> out;
  for (const auto& [w, c] : a.terms())
    for (size_t k = 0; k < w.size(); ++k)
      if (letter_at(w, k) == i) {
        auto [d, tail] = V.act(i, w.substr(k + 1));
        out.add_term(w.substr(0, k) + tail, c * d);
      }
  return out;
}

// (ad_c x_i) y = x_i y - (g_i . y) x_i.
template <class K>
Tensor<K> ad_c(const BraidedVectorSpace<K>& V, int i, const Tensor<K>& y) {
  Tensor<K> xi = Tensor<K>::letter(i);
  return xi * y - V.act(i, y) * xi;
}

// (ad_c x) y = x y - (g_x . y) x for x homogeneous of a single group degree,
// read off its first word. With `check`, x must be primitive.
template <class K>
Tensor<K> ad_c(const BraidedVectorSpace<K>& V, const Tensor<K>& x, const Tensor<K>& y, bool check = false) {
  if (x.is_zero()) return {};
  if (check && !is_primitive(V, x)) throw NotPrimitive("ad_c needs a primitive element");
  const Word& by = x.terms().begin()->first;
  return x * y - V.act_by_word(by, y) * x;
}

// Iterated adjoint x_{i1 ... in} = (ad_c x_{i1}) ... (ad_c x_{i(n-1)}) x_{in}.
template <class K>
Tensor<K> iterated_ad(const BraidedVectorSpace<K>& V, const std::vector<int>& letters) {
  if (letters.empty()) return Tensor<K>::one();
  Tensor<K> acc = Tensor<K>::letter(letters.back());
  for (size_t k = letters.size() - 1; k-- > 0;) acc = ad_c(V, letters[k], acc);
  return acc;
}

// Membership in the Nichols ideal by the derivation criterion, memoized per
// instance (hence per braided space). An optional reducer replaces an element
// by an equivalent one modulo a sub-ideal already known to lie in the Nichols ideal.
template <class K>
class NicholsOracle {
 public:
  using Reducer = std::function<Tensor<K>(const Tensor<K>&)>;

  explicit NicholsOracle(BraidedVectorSpace<K> V, Reducer reducer = {})
      : V_(std::move(V)), reducer_(std::move(reducer)), fingerprint_(V_.fingerprint()) {}

  const BraidedVectorSpace<K>& space() const { return V_; }
  const std::string& fingerprint() const { return fingerprint_; }

  bool member(const Tensor<K>& a) {
    Tensor<K> b = reducer_ ? reducer_(a) : a;
    if (b.is_zero()) return true;
    if (b.degree() == 0 || b.min_degree() == 0) return false;
    b = normalized(b);
    const std::string key = b.to_string(V_.names());
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    bool result = true;
    for (int i = 0; i < V_.size() && result; ++i) result = member(skew_derivation(V_, i, b));
    std::unique_lock lock(mu_);
    memo_.emplace(key, result);
    return result;
  }

  size_t memo_size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
  }

 private:
  static Tensor<K> normalized(const Tensor<K>& a) {
    const K& lead = a.terms().begin()->second;
    if (!FieldTraits<K>::is_unit(lead)) return a;
    return lead.inverse() * a;
  }

  BraidedVectorSpace<K> V_;
  Reducer reducer_;
  std::string fingerprint_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, bool> memo_;
};

// Dual space: f_i with c(f_i (x) f_j) = (g_i^-1 . f_j) (x) f_i, where
// g_i^-1 . f_j = q(i, k) f_k for the k with i |> k = j.
template <class K>
BraidedVectorSpace<K> dual_space(const BraidedVectorSpace<K>& V) {
  const int n = V.size();
  std::vector<int> table(static_cast<size_t>(n * n));
  std::vector<K> q(static_cast<size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const int j = V.target(i, k);
      table[static_cast<size_t>(i * n + j)] = k;
      q[static_cast<size_t>(i * n + j)] = V.coeff(i, k);
    }
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("f" + std::to_string(i + 1));
  return BraidedVectorSpace<K>(Rack(n, table), TwoCocycle<K>(n, q), names);
}

// Whether x_i -> f_i intertwines the two braidings.
template <class K>
bool same_braiding(const BraidedVectorSpace<K>& V, const BraidedVectorSpace<K>& W) {
  if (V.size() != W.size()) return false;
  for (int i = 0; i < V.size(); ++i)
    for (int j = 0; j < V.size(); ++j)
      if (V.target(i, j) != W.target(i, j) || !(V.coeff(i, j) == W.coeff(i, j))) return false;
  return true;
}

// Text grammar: letters by name (x1 x2 ...), juxtaposition or * for products,
// + and -, scalar constants of K, and named abbreviations expanding to elements.
template <class K>
Tensor<K> parse_tensor(std::string_view text, const std::vector<std::string>& letter_names,
                       const std::map<std::string, Tensor<K>>& abbreviations = {});

}  // namespace nichols

#include "nichols/braided_parse.hpp"
