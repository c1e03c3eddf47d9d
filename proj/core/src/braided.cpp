#include "nichols/braided.hpp"

namespace nichols {

std::vector<std::string> default_letter_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    const int l = letter_at(w, k);
    s += (static_cast<size_t>(l) < names.size()) ? names[static_cast<size_t>(l)] : "?" + std::to_string(l);
  }
  return s;
}

BraidedVectorSpace<Scalar> build_hv1(const EnvelopingRealization& r) {
  TwoCocycle<Scalar> q = TwoCocycle<Scalar>::constant(4, Scalar::one());
  std::vector<int> table(16);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      auto [t, c] = r.act(r.g(x), y);
      q.at(x, y) = c;
      table[static_cast<size_t>(4 * x + y)] = t;
    }
  return BraidedVectorSpace<Scalar>(Rack(4, table), q);
}

BraidedVectorSpace<CyclotomicNumber> build_from_realization(const FiniteRealization& r) {
  const int n = r.letters();
  TwoCocycle<CyclotomicNumber> q = TwoCocycle<CyclotomicNumber>::constant(n, CyclotomicNumber::one());
  std::vector<int> table(static_cast<size_t>(n * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto [t, c] = r.act(r.g(x), y);
      q.at(x, y) = c;
      table[static_cast<size_t>(n * x + y)] = t;
    }
  return BraidedVectorSpace<CyclotomicNumber>(Rack(n, table), q);
}

BraidedVectorSpace<Scalar> hv1_space() {
  auto [rack, q] = hv1_rack_and_cocycle();
  return BraidedVectorSpace<Scalar>(rack, q);
}

}  // namespace nichols
