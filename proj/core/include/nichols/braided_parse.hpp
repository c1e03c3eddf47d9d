#pragma once

#include "nichols/expr_parse.hpp"

namespace nichols {

template <class K>
Tensor<K> parse_tensor(std::string_view text, const std::vector<std::string>& letter_names,
                       const std::map<std::string, Tensor<K>>& abbreviations) {
  // Identifiers such as "x1x4" or "q1z2" are split greedily into known names.
  std::map<std::string, Tensor<K>> table = abbreviations;
  for (size_t i = 0; i < letter_names.size(); ++i) table.emplace(letter_names[i], Tensor<K>::letter(static_cast<int>(i)));
  auto resolve = [&table](std::string_view name) -> std::optional<Tensor<K>> {
    Tensor<K> acc = Tensor<K>::one();
    size_t pos = 0;
    while (pos < name.size()) {
      size_t best = 0;
      std::optional<Tensor<K>> val;
      for (const auto& [key, v] : table)
        if (key.size() > best && name.substr(pos, key.size()) == key) {
          best = key.size();
          val = v;
        }
      for (size_t len = name.size() - pos; len > best; --len)
        if (auto s = FieldTraits<K>::symbol(name.substr(pos, len))) {
          best = len;
          val = Tensor<K>(*s);
          break;
        }
      if (!val) return std::nullopt;
      acc = acc * *val;
      pos += best;
    }
    return acc;
  };
  detail::ExprParser<Tensor<K>> p(
      text, resolve, [](const Rational& r) { return Tensor<K>(FieldTraits<K>::from_rational(r)); }, true);
  return p.parse();
}

}  // namespace nichols
