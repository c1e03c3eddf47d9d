#pragma once

#include "nichols/scalar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nichols {

// A word is a string of letter indices 0..n-1 (one char per letter).
using Word = std::string;

inline Word make_word(std::initializer_list<int> letters) {
  Word w;
  for (int l : letters) w.push_back(static_cast<char>(l));
  return w;
}

inline int letter_at(const Word& w, size_t k) { return static_cast<unsigned char>(w[k]); }

// Default letter names x1, x2, ...
std::vector<std::string> default_letter_names(int n);
std::string word_to_string(const Word& w, const std::vector<std::string>& names);

template <class K>
K k_one() {
  return FieldTraits<K>::from_rational(Rational(1));
}

// Element of the tensor algebra: canonical map word -> nonzero coefficient,
// iterated in lexicographic order of letter indices.
template <class K>
class Tensor {
 public:
  using Map = std::map<Word, K>;

  Tensor() = default;
  explicit Tensor(const K& c) {
    if (!c.is_zero()) terms_.emplace(Word(), c);
  }
  static Tensor word(Word w, const K& c = k_one<K>()) {
    Tensor t;
    t.add_term(w, c);
    return t;
  }
  static Tensor letter(int i, const K& c = k_one<K>()) { return word(Word(1, static_cast<char>(i)), c); }
  static Tensor one() { return Tensor(k_one<K>()); }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  K coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? K() : it->second;
  }

  // -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
    return d;
  }
  int min_degree() const {
    int d = -1;
    for (const auto& [w, c] : terms_) d = (d < 0) ? static_cast<int>(w.size()) : std::min(d, static_cast<int>(w.size()));
    return d;
  }
  bool is_homogeneous() const { return degree() == min_degree(); }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Tensor component(int d) const {
    Tensor t;
    for (const auto& [w, c] : terms_)
      if (static_cast<int>(w.size()) == d) t.terms_.emplace(w, c);
    return t;
  }

  Tensor operator-() const {
    Tensor t;
    for (const auto& [w, c] : terms_) t.terms_.emplace(w, -c);
    return t;
  }
  Tensor& operator+=(const Tensor& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const Tensor& a, const Tensor& b) {
    Tensor t;
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) t.add_term(u + v, c * d);
    return t;
  }
  friend Tensor operator*(const K& k, const Tensor& a) {
    Tensor t;
    if (k.is_zero()) return t;
    for (const auto& [w, c] : a.terms_) t.add_term(w, k * c);
    return t;
  }
  Tensor& operator*=(const Tensor& o) { return *this = *this * o; }
  // Division only by nonzero scalars.
  friend Tensor operator/(const Tensor& a, const Tensor& b) {
    if (!b.is_scalar() || b.is_zero()) throw ParseError("division by a non-scalar tensor");
    return b.terms_.begin()->second.inverse() * a;
  }
  Tensor pow(int64_t e) const {
    if (e < 0) {
      if (!is_scalar() || is_zero()) throw ParseError("negative power of a non-scalar tensor");
      return Tensor(terms_.begin()->second.pow(e));
    }
    Tensor r = one();
    for (int64_t i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  template <class F>
  auto map_coefficients(F f) const -> Tensor<decltype(f(std::declval<K>()))> {
    Tensor<decltype(f(std::declval<K>()))> t;
    for (const auto& [w, c] : terms_) t.add_term(w, f(c));
    return t;
  }

  friend bool operator==(const Tensor& a, const Tensor& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;
  std::string to_string() const { return to_string(default_letter_names(max_letter() + 1)); }
  int max_letter() const {
    int m = -1;
    for (const auto& [w, c] : terms_)
      for (char ch : w) m = std::max(m, static_cast<int>(static_cast<unsigned char>(ch)));
    return m;
  }

 private:
  Map terms_;
};

template <class K>
std::string coefficient_prefix(const K& c) {
  std::string s = c.to_string();
  if (FieldTraits<K>::is_atomic(c)) return s;
  return "(" + s + ")";
}

template <class K>
std::string Tensor<K>::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  const K one = k_one<K>();
  for (const auto& [w, c] : terms_) {
    std::string piece;
    if (w.empty()) piece = coefficient_prefix(c);
    else if (c == one) piece = word_to_string(w, names);
    else if (c == -one) piece = "-" + word_to_string(w, names);
    else piece = coefficient_prefix(c) + "*" + word_to_string(w, names);
    if (!out.empty()) out += (piece[0] == '-') ? " " : " + ";
    out += piece;
  }
  return out;
}

// Element of T(V) (x) T(V): map (left word, right word) -> coefficient.
template <class K>
class TensorSquare {
 public:
  using Key = std::pair<Word, Word>;
  using Map = std::map<Key, K>;

  TensorSquare() = default;
  static TensorSquare simple(const Tensor<K>& a, const Tensor<K>& b) {
    TensorSquare t;
    for (const auto& [u, c] : a.terms())
      for (const auto& [v, d] : b.terms()) t.add_term(u, v, c * d);
    return t;
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  void add_term(const Word& u, const Word& v, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key(u, v), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  TensorSquare& operator+=(const TensorSquare& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  TensorSquare& operator-=(const TensorSquare& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
  }
  friend TensorSquare operator+(TensorSquare a, const TensorSquare& b) { return a += b; }
  friend TensorSquare operator-(TensorSquare a, const TensorSquare& b) { return a -= b; }
  friend TensorSquare operator*(const K& k, const TensorSquare& a) {
    TensorSquare t;
    for (const auto& [key, c] : a.terms_) t.add_term(key.first, key.second, k * c);
    return t;
  }
  // Terms with left degree l and right degree r.
  TensorSquare component(int l, int r) const {
    TensorSquare t;
    for (const auto& [k, c] : terms_)
      if (static_cast<int>(k.first.size()) == l && static_cast<int>(k.second.size()) == r)
        t.terms_.emplace(k, c);
    return t;
  }
  friend bool operator==(const TensorSquare& a, const TensorSquare& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += coefficient_prefix(c) + "*" + (k.first.empty() ? "1" : word_to_string(k.first, names)) + " (x) " +
             (k.second.empty() ? "1" : word_to_string(k.second, names));
    }
    return out;
  }

 private:
  Map terms_;
};

inline Tensor<CyclotomicNumber> specialize(const Tensor<Scalar>& t, const Specialization& s) {
  return t.map_coefficients([&s](const Scalar& c) { return s(c); });
}

}  // namespace nichols
