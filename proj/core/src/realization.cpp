#include "nichols/realization.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace nichols {
namespace {

int64_t checked_add(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("enveloping exponent overflow");
  return r;
}

int64_t checked_mul(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("enveloping exponent overflow");
  return r;
}

int mod(int64_t x, int64_t m) { return static_cast<int>(((x % m) + m) % m); }

// 2^a mod 3 depends only on the parity of a.
int two_pow_mod3(int64_t a) { return (a % 2 == 0) ? 1 : 2; }

}  // namespace

EnvelopingElement operator*(const EnvelopingElement& x, const EnvelopingElement& y) {
  return {mod(x.b + two_pow_mod3(x.a) * y.b, 3), checked_add(x.a, y.a), checked_add(x.c, y.c)};
}

EnvelopingElement EnvelopingElement::inverse() const {
  return {mod(-b * two_pow_mod3(a), 3), -a, -c};
}

EnvelopingElement EnvelopingElement::pow(int64_t k) const {
  EnvelopingElement base = k < 0 ? inverse() : *this;
  uint64_t e = k < 0 ? static_cast<uint64_t>(-(k + 1)) + 1 : static_cast<uint64_t>(k);
  EnvelopingElement r;
  while (e != 0) {
    if (e & 1u) r = r * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return r;
}

std::string EnvelopingElement::to_string() const {
  std::string s;
  auto part = [&s](const char* sym, int64_t k) {
    if (k == 0) return;
    if (!s.empty()) s += ' ';
    s += sym;
    if (k != 1) s += "^" + std::to_string(k);
  };
  part("nu", b);
  part("gamma", a);
  part("zeta", c);
  return s.empty() ? "1" : s;
}

EnvelopingElement hv1_generator(int letter) {
  if (letter == 3) return EnvelopingElement::zeta();
  if (letter < 0 || letter > 3) throw std::out_of_range("HV1 has four letters");
  // gamma nu^i = nu^{2i} gamma
  return {mod(2 * letter, 3), 1, 0};
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup::FiniteGroup(std::string description, int order, std::vector<int> table, std::vector<std::string> names)
    : description_(std::move(description)), order_(order), table_(std::move(table)), names_(std::move(names)) {
  if (order <= 0) throw ConfigError("group order must be positive");
  if (table_.size() != static_cast<size_t>(order) * static_cast<size_t>(order))
    throw ConfigError("group table has wrong size");
  for (int v : table_)
    if (v < 0 || v >= order) throw ConfigError("group table entry out of range");
  if (names_.empty())
    for (int i = 0; i < order; ++i) names_.push_back("e" + std::to_string(i));
  if (names_.size() != static_cast<size_t>(order)) throw ConfigError("wrong number of element names");
  for (int e = 0; e < order && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw ConfigError("group table has no identity");
  inverse_.assign(static_cast<size_t>(order), -1);
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      if (mul(x, y) == identity_ && mul(y, x) == identity_) inverse_[static_cast<size_t>(x)] = y;
  if (std::find(inverse_.begin(), inverse_.end(), -1) != inverse_.end())
    throw ConfigError("group table has an element without inverse");
}

FiniteGroup FiniteGroup::enveloping_quotient(int N, int M) {
  if (N <= 0 || M <= 0) throw ConfigError("quotient orders must be positive");
  if (N % 2 != 0) throw ConfigError("gamma order must be even for the quotient to exist");
  const int n = 3 * N * M;
  auto index = [N](int b, int a, int c) { return b + 3 * (a + N * c); };
  std::vector<int> table(static_cast<size_t>(n) * static_cast<size_t>(n));
  std::vector<EnvelopingElement> elems(static_cast<size_t>(n));
  std::vector<std::string> names(static_cast<size_t>(n));
  for (int c = 0; c < M; ++c)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < 3; ++b) {
        elems[static_cast<size_t>(index(b, a, c))] = {b, a, c};
        names[static_cast<size_t>(index(b, a, c))] = EnvelopingElement{b, a, c}.to_string();
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto p = elems[static_cast<size_t>(x)] * elems[static_cast<size_t>(y)];
      table[static_cast<size_t>(x * n + y)] = index(p.b, mod(p.a, N), mod(p.c, M));
    }
  FiniteGroup g("enveloping quotient N=" + std::to_string(N) + " M=" + std::to_string(M), n, std::move(table),
                std::move(names));
  g.quotient_N_ = N;
  g.quotient_M_ = M;
  return g;
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto find = [&perms](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> table(36);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      std::array<int, 3> r{};
      for (int k = 0; k < 3; ++k) r[static_cast<size_t>(k)] = perms[static_cast<size_t>(x)][static_cast<size_t>(perms[static_cast<size_t>(y)][static_cast<size_t>(k)])];
      table[static_cast<size_t>(x * 6 + y)] = find(r);
    }
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back("[" + std::to_string(q[0] + 1) + std::to_string(q[1] + 1) + std::to_string(q[2] + 1) + "]");
  return FiniteGroup("S3", 6, std::move(table), std::move(names));
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j) {
  const int n = j.at("order").get<int>();
  std::vector<int> table;
  for (const auto& row : j.at("table"))
    for (const auto& v : row) table.push_back(v.get<int>());
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  return FiniteGroup(j.value("description", std::string("table group")), n, std::move(table), std::move(names));
}

int FiniteGroup::pow(int x, int64_t k) const {
  int base = k < 0 ? inv(x) : x;
  uint64_t e = k < 0 ? static_cast<uint64_t>(-(k + 1)) + 1 : static_cast<uint64_t>(k);
  e %= static_cast<uint64_t>(order_);  // x^order = 1
  int r = identity_;
  for (uint64_t i = 0; i < e; ++i) r = mul(r, base);
  return r;
}

bool FiniteGroup::is_central(int x) const {
  for (int y = 0; y < order_; ++y)
    if (mul(x, y) != mul(y, x)) return false;
  return true;
}

std::optional<int> FiniteGroup::from_enveloping(const EnvelopingElement& e) const {
  if (quotient_N_ == 0) return std::nullopt;
  return e.b + 3 * (mod(e.a, quotient_N_) + quotient_N_ * mod(e.c, quotient_M_));
}

bool FiniteGroup::is_associative() const {
  for (int x = 0; x < order_; ++x)
    for (int y = 0; y < order_; ++y)
      for (int z = 0; z < order_; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
  return true;
}

// ---------------------------------------------------------------- FiniteRealization

FiniteRealization::FiniteRealization(std::shared_ptr<const FiniteGroup> group, Rack rack, std::vector<int> g,
                                     std::vector<std::vector<CyclotomicNumber>> generator_values,
                                     std::string description)
    : group_(std::move(group)),
      rack_(std::move(rack)),
      g_(std::move(g)),
      gen_values_(std::move(generator_values)),
      description_(std::move(description)) {
  const int L = letters();
  const int n = group_->order();
  auto fail = [this](std::string why) {
    if (check_.ok) check_ = {false, std::move(why)};
  };
  if (rack_.size() != L) throw ConfigError("rack size differs from the number of letters");
  if (gen_values_.size() != static_cast<size_t>(L)) throw ConfigError("need cocycle values for every letter");
  for (const auto& row : gen_values_)
    if (row.size() != static_cast<size_t>(L)) throw ConfigError("need a cocycle value for every generator");
  for (int x : g_)
    if (x < 0 || x >= n) throw ConfigError("generator image out of range");

  action_.assign(static_cast<size_t>(n * L), -1);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < L; ++i) {
      int c = group_->conj(h, g_[static_cast<size_t>(i)]);
      int found = -1;
      for (int j = 0; j < L; ++j)
        if (g_[static_cast<size_t>(j)] == c) {
          if (found >= 0) fail("generator images are not distinct");
          found = j;
        }
      if (found < 0) fail("conjugate of g_" + std::to_string(i + 1) + " by " + group_->name(h) + " is not a generator");
      action_[static_cast<size_t>(h * L + i)] = found < 0 ? i : found;
    }
  for (int h = 0; h < L; ++h)
    for (int i = 0; i < L; ++i)
      if (letter_action(g_[static_cast<size_t>(h)], i) != rack_.op(h, i))
        fail("conjugation by g_" + std::to_string(h + 1) + " disagrees with the rack");

  chi_.assign(static_cast<size_t>(n * L), CyclotomicNumber::zero());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  const int e = group_->identity();
  for (int i = 0; i < L; ++i) chi_[static_cast<size_t>(i * n + e)] = CyclotomicNumber::one();
  seen[static_cast<size_t>(e)] = true;
  std::deque<int> queue{e};
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int k = 0; k < L; ++k) {
      int s = group_->mul(g_[static_cast<size_t>(k)], t);
      for (int i = 0; i < L; ++i) {
        CyclotomicNumber v = chi_[static_cast<size_t>(i * n + t)] *
                             gen_values_[static_cast<size_t>(letter_action(t, i))][static_cast<size_t>(k)];
        auto& slot = chi_[static_cast<size_t>(i * n + s)];
        if (!seen[static_cast<size_t>(s)]) slot = v;
        else if (!(slot == v))
          fail("cocycle chi_" + std::to_string(i + 1) + " is not well defined at " + group_->name(s));
      }
      if (!seen[static_cast<size_t>(s)]) {
        seen[static_cast<size_t>(s)] = true;
        queue.push_back(s);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    fail("generator images do not generate the group");
  for (int h = 0; h < n && check_.ok; ++h)
    for (int t = 0; t < n && check_.ok; ++t)
      for (int i = 0; i < L; ++i)
        if (letter_action(group_->mul(h, t), i) != letter_action(h, letter_action(t, i))) {
          fail("conjugation action is not an action");
          break;
        }
}

std::pair<int, CyclotomicNumber> FiniteRealization::act(int h, int letter) const {
  return {letter_action(h, letter), chi(letter, h)};
}

const CyclotomicNumber& FiniteRealization::chi(int letter, int h) const {
  return chi_[static_cast<size_t>(letter * group_->order() + h)];
}

// ---------------------------------------------------------------- EnvelopingRealization

EnvelopingRealization::EnvelopingRealization() : rack_(with_fixed_point(transposition_rack())) {}

int EnvelopingRealization::letter_action(const EnvelopingElement& h, int letter) const {
  EnvelopingElement c = h * hv1_generator(letter) * h.inverse();
  for (int j = 0; j < 4; ++j)
    if (hv1_generator(j) == c) return j;
  throw std::logic_error("conjugate of a generator is not a generator");
}

std::vector<std::vector<Scalar>> hv1_cocycle_generator_values() {
  std::vector<std::vector<Scalar>> v(4, std::vector<Scalar>(4));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) v[static_cast<size_t>(i)][static_cast<size_t>(j)] = Scalar(-1);
    v[static_cast<size_t>(i)][3] = Scalar::q2();
    v[3][static_cast<size_t>(i)] = Scalar::q1();
  }
  v[3][3] = -Scalar::omega().pow(2);
  return v;
}

Scalar EnvelopingRealization::chi_uncached(int letter, const EnvelopingElement& h) const {
  static const auto gen = hv1_cocycle_generator_values();
  // Factors (generator index, exponent sign) of nu^b gamma^a zeta^c with nu = g_1^-1 g_2.
  std::vector<std::pair<int, int>> factors;
  for (int k = 0; k < h.b; ++k) {
    factors.emplace_back(0, -1);
    factors.emplace_back(1, +1);
  }
  for (int64_t k = 0; k < std::abs(h.a); ++k) factors.emplace_back(0, h.a > 0 ? 1 : -1);
  for (int64_t k = 0; k < std::abs(h.c); ++k) factors.emplace_back(3, h.c > 0 ? 1 : -1);
  Scalar value = Scalar::one();
  EnvelopingElement tail;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const auto [k, sign] = *it;
    const int j = letter_action(tail, letter);
    if (sign > 0) {
      value *= gen[static_cast<size_t>(j)][static_cast<size_t>(k)];
      tail = hv1_generator(k) * tail;
    } else {
      // chi_j(g^-1) = chi_{g^-1 |> j}(g)^-1
      EnvelopingElement ginv = hv1_generator(k).inverse();
      value *= gen[static_cast<size_t>(letter_action(ginv, j))][static_cast<size_t>(k)].inverse();
      tail = ginv * tail;
    }
  }
  return value;
}

Scalar EnvelopingRealization::chi(int letter, const EnvelopingElement& h) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find({letter, h});
    if (it != memo_.end()) return it->second;
  }
  Scalar v = chi_uncached(letter, h);
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::make_pair(letter, h), v);
  return v;
}

RealizationCheck EnvelopingRealization::validate(int radius) const {
  const auto gen = hv1_cocycle_generator_values();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (!(g(i) * g(i) == g(j) * g(j))) return {false, "g_i^2 = g_j^2 fails"};
      if (!(g(i) * g(j) == g(kThirdIndex[i][j]) * g(i))) return {false, "g_i g_j = g_{2i-j} g_i fails"};
    }
  for (auto x : {EnvelopingElement::nu(), EnvelopingElement::gamma()})
    if (!(x * g(3) == g(3) * x)) return {false, "g_4 is not central"};
  for (int h = 0; h < 4; ++h)
    for (int i = 0; i < 4; ++i) {
      if (letter_action(g(h), i) != rack_.op(h, i)) return {false, "conjugation disagrees with the rack"};
      if (!(chi(i, g(h)) == gen[static_cast<size_t>(i)][static_cast<size_t>(h)]))
        return {false, "cocycle evaluation disagrees with generator values"};
    }
  std::vector<EnvelopingElement> ball;
  for (int b = 0; b < 3; ++b)
    for (int a = -radius; a <= radius; ++a)
      for (int c = -radius; c <= radius; ++c) ball.push_back({b, a, c});
  for (const auto& h : ball)
    for (const auto& t : ball)
      for (int i = 0; i < 4; ++i)
        if (!(chi(i, h * t) == chi(i, t) * chi(letter_action(t, i), h)))
          return {false, "cocycle law fails at h=" + h.to_string() + ", t=" + t.to_string()};
  return {};
}

// ---------------------------------------------------------------- constructors

FiniteRealization hv1_realization_on(std::shared_ptr<const FiniteGroup> group, std::vector<int> g,
                                     const Specialization& s) {
  if (g.size() != 4) throw ConfigError("HV1 needs four generator images");
  std::vector<std::vector<CyclotomicNumber>> values;
  for (const auto& row : hv1_cocycle_generator_values()) {
    values.emplace_back();
    for (const auto& v : row) values.back().push_back(s(v));
  }
  std::string desc = "HV1 over " + group->description() + ", " + s.to_string();
  return FiniteRealization(std::move(group), with_fixed_point(transposition_rack()), std::move(g), std::move(values),
                           std::move(desc));
}

FiniteRealization hv1_finite_realization(int N, int M, const Specialization& s) {
  auto group = std::make_shared<const FiniteGroup>(FiniteGroup::enveloping_quotient(N, M));
  std::vector<int> g;
  for (int i = 0; i < 4; ++i) g.push_back(*group->from_enveloping(hv1_generator(i)));
  return hv1_realization_on(std::move(group), std::move(g), s);
}

FiniteRealization fk3_realization_s3() {
  auto group = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric3());
  std::vector<int> g;
  for (int x = 0; x < group->order(); ++x)
    if (x != group->identity() && group->mul(x, x) == group->identity()) g.push_back(x);
  std::vector<std::vector<CyclotomicNumber>> values(3, std::vector<CyclotomicNumber>(3, CyclotomicNumber::from_rational(-1)));
  return FiniteRealization(std::move(group), transposition_rack(), std::move(g), std::move(values), "FK3 over S3");
}

RealizationCheck validate_hv1_shape(const FiniteRealization& r, const Specialization& s) {
  if (auto c = r.validate(); !c) return c;
  if (r.letters() != 4) return {false, "HV1 needs four letters"};
  const auto& G = r.group();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (G.mul(r.g(i), r.g(i)) != G.mul(r.g(j), r.g(j))) return {false, "g_i^2 = g_j^2 fails"};
      if (G.mul(r.g(i), r.g(j)) != G.mul(r.g(kThirdIndex[i][j]), r.g(i))) return {false, "g_i g_j = g_{2i-j} g_i fails"};
    }
  if (!G.is_central(r.g(3))) return {false, "g_4 is not central"};
  const auto gen = hv1_cocycle_generator_values();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (!(r.chi(i, r.g(k)) == s(gen[static_cast<size_t>(i)][static_cast<size_t>(k)])))
        return {false, "cocycle generator values differ from the HV1 table"};
  return {};
}

namespace {

template <class F>
bool trivial_on_all(const FiniteRealization& r, F value) {
  for (int h = 0; h < r.group().order(); ++h)
    if (!value(h).is_one()) return false;
  return true;
}

}  // namespace

std::array<bool, 4> lambda_support_predicates(const FiniteRealization& r) {
  if (r.letters() != 4) throw ConfigError("HV1 predicates need four letters");
  const auto& G = r.group();
  const int e = G.identity();
  std::array<bool, 4> out{};
  out[0] = true;
  for (int i = 0; i < 3; ++i)
    out[0] = out[0] && G.mul(r.g(i), r.g(i)) != e && trivial_on_all(r, [&](int h) { return r.chi(i, h).pow(2); });
  out[1] = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        out[1] = out[1] && G.mul(r.g(i), r.g(j)) != e &&
                 trivial_on_all(r, [&](int h) { return r.chi(i, h) * r.chi(j, h); });
  out[2] = G.pow(r.g(3), 6) != e && trivial_on_all(r, [&](int h) { return r.chi(3, h).pow(6); });
  out[3] = G.mul(G.pow(r.g(0), 12), G.pow(r.g(3), 6)) != e &&
           trivial_on_all(r, [&](int h) { return r.chi(0, h).pow(12) * r.chi(3, h).pow(6); });
  return out;
}

std::array<bool, 4> lambda_support_predicates(const EnvelopingRealization& r) {
  // In the infinite group every group condition holds; the character conditions
  // can only be refuted, on generators.
  auto refuted = [&r](auto value) {
    for (int k = 0; k < 4; ++k)
      if (!value(r.g(k)).is_one()) return true;
    return false;
  };
  std::array<bool, 4> out{};
  std::array<bool, 4> decided{};
  bool s0 = false, s1 = false;
  for (int i = 0; i < 3; ++i) {
    s0 = s0 || refuted([&](const EnvelopingElement& h) { return r.chi(i, h).pow(2); });
    for (int j = 0; j < 3; ++j)
      if (i != j) s1 = s1 || refuted([&](const EnvelopingElement& h) { return r.chi(i, h) * r.chi(j, h); });
  }
  decided[0] = s0;
  decided[1] = s1;
  decided[2] = refuted([&](const EnvelopingElement& h) { return r.chi(3, h).pow(6); });
  decided[3] = refuted([&](const EnvelopingElement& h) { return r.chi(0, h).pow(12) * r.chi(3, h).pow(6); });
  for (int k = 0; k < 4; ++k) {
    if (!decided[static_cast<size_t>(k)])
      throw InfiniteGroup("lambda_" + std::to_string(k + 1) + " needs exhaustive evaluation on a finite model");
    out[static_cast<size_t>(k)] = false;
  }
  return out;
}

std::array<bool, 2> fk3_lambda_support(const FiniteRealization& r) {
  if (r.letters() != 3) throw ConfigError("FK3 predicates need three letters");
  const auto& G = r.group();
  const int e = G.identity();
  std::array<bool, 2> out{true, true};
  for (int i = 0; i < 3; ++i) {
    out[0] = out[0] && G.mul(r.g(i), r.g(i)) != e && trivial_on_all(r, [&](int h) { return r.chi(i, h).pow(2); });
    for (int j = 0; j < 3; ++j)
      if (i != j)
        out[1] = out[1] && G.mul(r.g(i), r.g(j)) != e &&
                 trivial_on_all(r, [&](int h) { return r.chi(i, h) * r.chi(j, h); });
  }
  return out;
}

nlohmann::json to_json(const FiniteRealization& r) {
  nlohmann::json j;
  j["description"] = r.description();
  j["group"] = r.group().description();
  j["order"] = r.group().order();
  nlohmann::json gs = nlohmann::json::array();
  for (int i = 0; i < r.letters(); ++i) gs.push_back(r.group().name(r.g(i)));
  j["generators"] = gs;
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& row : r.generator_values()) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& v : row) jr.push_back(v.to_string());
    vals.push_back(jr);
  }
  j["cocycle_generator_values"] = vals;
  auto c = r.validate();
  j["valid"] = c.ok;
  if (!c.ok) j["violation"] = c.violation;
  return j;
}

}  // namespace nichols
