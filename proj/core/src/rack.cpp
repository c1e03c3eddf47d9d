#include "nichols/rack.hpp"

#include <vector>

namespace nichols {

Rack::Rack(int size, std::vector<int> table) : size_(size), table_(std::move(table)) {
  if (size <= 0) throw std::invalid_argument("rack size must be positive");
  if (table_.size() != static_cast<size_t>(size) * static_cast<size_t>(size))
    throw std::invalid_argument("rack table has wrong size");
  for (int v : table_)
    if (v < 0 || v >= size) throw std::invalid_argument("rack table entry out of range");
}

bool Rack::is_quandle() const {
  for (int x = 0; x < size_; ++x)
    if (op(x, x) != x) return false;
  return true;
}

AxiomCheck validate_rack(const Rack& r) {
  const int n = r.size();
  for (int x = 0; x < n; ++x) {
    std::vector<bool> hit(static_cast<size_t>(n), false);
    for (int y = 0; y < n; ++y) hit[static_cast<size_t>(r.op(x, y))] = true;
    for (int y = 0; y < n; ++y)
      if (!hit[static_cast<size_t>(y)])
        return {false, std::array<int, 3>{x, y, y}, "left translation of " + std::to_string(x) + " is not onto"};
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (r.op(x, r.op(y, z)) != r.op(r.op(x, y), r.op(x, z)))
          return {false, std::array<int, 3>{x, y, z}, "self-distributivity fails"};
  return {};
}

Rack transposition_rack() {
  std::vector<int> t(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[static_cast<size_t>(3 * i + j)] = kThirdIndex[i][j];
  return Rack(3, std::move(t));
}

Rack with_fixed_point(const Rack& r) {
  const int n = r.size() + 1;
  std::vector<int> t(static_cast<size_t>(n * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[static_cast<size_t>(x * n + y)] = (x == n - 1 || y == n - 1) ? y : r.op(x, y);
  return Rack(n, std::move(t));
}

Rack conjugation_rack(int size, const std::function<std::optional<int>(int, int)>& conj) {
  std::vector<int> t(static_cast<size_t>(size * size));
  for (int x = 0; x < size; ++x)
    for (int y = 0; y < size; ++y) {
      auto v = conj(x, y);
      if (!v) throw NotClosed("subset is not closed under conjugation");
      t[static_cast<size_t>(x * size + y)] = *v;
    }
  return Rack(size, std::move(t));
}

std::pair<Rack, TwoCocycle<Scalar>> hv1_rack_and_cocycle() {
  Rack r = with_fixed_point(transposition_rack());
  auto q = TwoCocycle<Scalar>::constant(4, Scalar(-1));
  for (int i = 0; i < 3; ++i) {
    q.at(i, 3) = Scalar::q1();
    q.at(3, i) = Scalar::q2();
  }
  q.at(3, 3) = -Scalar::omega().pow(2);
  return {std::move(r), std::move(q)};
}

nlohmann::json to_json(const Rack& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (int x = 0; x < r.size(); ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < r.size(); ++y) row.push_back(r.op(x, y) + 1);
    rows.push_back(row);
  }
  return {{"size", r.size()}, {"labels", "1-based"}, {"op", rows}};
}

Rack rack_from_json(const nlohmann::json& j) {
  const int n = j.at("size").get<int>();
  std::vector<int> t;
  for (const auto& row : j.at("op"))
    for (const auto& v : row) t.push_back(v.get<int>() - 1);
  return Rack(n, std::move(t));
}

nlohmann::json to_json(const TwoCocycle<Scalar>& q) {
  nlohmann::json rows = nlohmann::json::array();
  for (int x = 0; x < q.size(); ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < q.size(); ++y) row.push_back(q(x, y).to_string());
    rows.push_back(row);
  }
  return {{"size", q.size()}, {"values", rows}};
}

}  // namespace nichols
