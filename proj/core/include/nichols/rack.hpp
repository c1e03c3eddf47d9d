#pragma once

#include "nichols/scalar.hpp"

#include "json.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

struct NotClosed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Outcome of an exhaustive axiom check; `triple` is the first violating (x, y, z).
struct AxiomCheck {
  bool ok = true;
  std::optional<std::array<int, 3>> triple;
  std::string message;
  explicit operator bool() const { return ok; }
};

// Finite rack on {0, ..., size-1}; op(x, y) = x |> y.
class Rack {
 public:
  Rack() = default;
  Rack(int size, std::vector<int> table);

  int size() const { return size_; }
  int op(int x, int y) const { return table_[static_cast<size_t>(x * size_ + y)]; }
  const std::vector<int>& table() const { return table_; }
  bool is_quandle() const;

  friend bool operator==(const Rack&, const Rack&) = default;

 private:
  int size_ = 0;
  std::vector<int> table_;
};

// Self-distributivity plus bijectivity of every left translation.
AxiomCheck validate_rack(const Rack& r);

// Third transposition index: labels 1..3 map to 0..2 and the class of 2i-j mod 3
// is read off this table rather than computed, so the representative is fixed.
inline constexpr std::array<std::array<int, 3>, 3> kThirdIndex = {{{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};

// Rack of the three transpositions of S3: i |> j = 2i - j.
Rack transposition_rack();
// Disjoint union with a point fixed by everything and acting trivially.
Rack with_fixed_point(const Rack& r);

// Conjugation rack of a conjugation-closed subset. `conj(x, y)` returns the
// index of x y x^-1 within the subset, or nullopt if it leaves the subset.
Rack conjugation_rack(int size, const std::function<std::optional<int>(int, int)>& conj);

// q(x, y) is the scalar in c(v_x (x) v_y) = q(x, y) v_{x|>y} (x) v_x.
template <class K>
class TwoCocycle {
 public:
  TwoCocycle() = default;
  TwoCocycle(int size, std::vector<K> values) : size_(size), values_(std::move(values)) {
    if (values_.size() != static_cast<size_t>(size) * static_cast<size_t>(size))
      throw std::invalid_argument("cocycle table has wrong size");
  }
  static TwoCocycle constant(int size, const K& v) {
    return TwoCocycle(size, std::vector<K>(static_cast<size_t>(size * size), v));
  }
  int size() const { return size_; }
  const K& operator()(int x, int y) const { return values_[static_cast<size_t>(x * size_ + y)]; }
  K& at(int x, int y) { return values_[static_cast<size_t>(x * size_ + y)]; }

 private:
  int size_ = 0;
  std::vector<K> values_;
};

// q(x, y|>z) q(y, z) = q(x|>y, x|>z) q(x, z) on every triple.
template <class K>
AxiomCheck validate_cocycle(const Rack& r, const TwoCocycle<K>& q) {
  if (q.size() != r.size()) return {false, std::nullopt, "size mismatch"};
  for (int x = 0; x < r.size(); ++x)
    for (int y = 0; y < r.size(); ++y)
      for (int z = 0; z < r.size(); ++z) {
        K lhs = q(x, r.op(y, z)) * q(y, z);
        K rhs = q(r.op(x, y), r.op(x, z)) * q(x, z);
        if (!(lhs == rhs))
          return {false, std::array<int, 3>{x, y, z}, "cocycle condition fails"};
      }
  return {};
}

// Four-point rack (transpositions plus a fixed point) and its cocycle with
// blocks -1 / q1 / q2 / -w^2.
std::pair<Rack, TwoCocycle<Scalar>> hv1_rack_and_cocycle();

nlohmann::json to_json(const Rack& r);
Rack rack_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TwoCocycle<Scalar>& q);

}  // namespace nichols
