#include "nichols/liftings.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace nichols::liftings {

namespace {

using hv1::u;
using hv1::wrap3;
using hv1::x;
using hv1::z;

const C kOne = C::one();

std::string itos(int i) { return std::to_string(i); }

EnvelopingElement word_degree(const Word& w) {
  EnvelopingElement g;
  for (size_t k = 0; k < w.size(); ++k) g = g * hv1_generator(letter_at(w, k));
  return g;
}

template <class K>
EnvelopingElement leading_degree(const Tensor<K>& t) {
  return t.is_zero() ? EnvelopingElement{} : word_degree(t.terms().begin()->first);
}

int group_of_word(const FiniteRealization& r, const Word& w) {
  int g = r.group().identity();
  for (size_t k = 0; k < w.size(); ++k) g = r.group().mul(g, r.g(letter_at(w, k)));
  return g;
}

int group_of(const FiniteRealization& r, const TC& t) {
  return t.is_zero() ? r.group().identity() : group_of_word(r, t.terms().begin()->first);
}

// h |> w letterwise with the accumulated character value.
std::pair<C, Word> act_word(const FiniteRealization& r, int h, const Word& w) {
  C c = kOne;
  Word out = w;
  for (size_t k = 0; k < w.size(); ++k) {
    auto [j, chi] = r.act(h, letter_at(w, k));
    out[k] = static_cast<char>(j);
    c *= chi;
  }
  return {c, out};
}

template <class Map, class Key>
void accumulate(Map& m, const Key& k, const C& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

// Smallest normal subgroup containing `elements`.
std::vector<char> normal_closure(const FiniteGroup& G, const std::vector<int>& elements) {
  const int n = G.order();
  std::vector<char> in(static_cast<size_t>(n), 0);
  std::vector<int> gens;
  for (int e : elements)
    for (int h = 0; h < n; ++h) gens.push_back(G.conj(h, e));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::deque<int> todo{G.identity()};
  in[static_cast<size_t>(G.identity())] = 1;
  while (!todo.empty()) {
    int a = todo.front();
    todo.pop_front();
    for (int s : gens) {
      int b = G.mul(a, s);
      if (!in[static_cast<size_t>(b)]) {
        in[static_cast<size_t>(b)] = 1;
        todo.push_back(b);
      }
    }
  }
  return in;
}

void require_admissible(const DeformationParameters& l, const FiniteRealization& r) {
  auto ok = admissible_slots(l, r);
  for (int k = 0; k < 4; ++k)
    if (!ok[static_cast<size_t>(k)])
      throw NotAdmissible("lambda_" + itos(k + 1) + " = " + l.lambda[static_cast<size_t>(k)].to_string() +
                          " is not admissible over " + r.group().description());
}

std::vector<int64_t> padded(std::vector<int64_t> v, size_t n) {
  v.resize(n, 0);
  return v;
}

// Series of the distinguished pre-Nichols algebra: the Nichols series over (1 - t^6)(1 - t^18).
std::vector<int64_t> prenichols_series(int up_to) {
  std::vector<int64_t> central(static_cast<size_t>(up_to) + 1, 0);
  for (int m = 0; 6 * m <= up_to; ++m)
    for (int n = 0; 6 * m + 18 * n <= up_to; ++n) central[static_cast<size_t>(6 * m + 18 * n)] += 1;
  return padded(hv1::poly_mul(hv1::factorized_series(), central), static_cast<size_t>(up_to) + 1);
}

// One relation of the stratification with its deformation: top - lambda (1 - g) + extra,
// where `extra` is a lower part in the a-letters.
struct Relator {
  std::string name;
  int stratum = 0;
  bool representative = true;
  bool cube = false;
  TC top;        // expanded; empty for the cube
  TC factor;     // the cube factor
  C lambda = C::zero();
  TC extra;
  int g = 0;     // group degree of the top part
};

std::vector<Relator> relators(const DeformationParameters& l, const Hv1Model& m) {
  const auto& r = *m.realization;
  const auto& s = m.specialization;
  std::vector<Relator> out;
  const auto strata = stratification();
  for (const auto& st : strata) {
    int idx = 0;
    for (const auto& e : st.elements) {
      Relator rel;
      rel.name = e.name;
      rel.stratum = st.level;
      rel.representative = st.level == 4 || idx == 0;
      switch (st.level) {
        case 1: rel.lambda = l.lambda[0]; break;
        case 2: rel.lambda = l.lambda[1]; break;
        case 3: rel.extra = -l.lambda[1] * TC::letter(3); break;
        case 4: rel.lambda = idx == 0 ? l.lambda[2] : l.lambda[3]; break;
        default: break;
      }
      if (st.level == 4 && idx == 1) {
        rel.cube = true;
        rel.factor = specialize(hv1::u12413(), s);
        rel.g = r.group().mul(r.group().pow(r.g(0), 12), r.group().pow(r.g(3), 6));
      } else {
        rel.top = specialize(e.element, s);
        rel.g = group_of(r, rel.top);
      }
      out.push_back(std::move(rel));
      ++idx;
    }
  }
  return out;
}

TC smash_lower(const SmashPresentation& sp, const Relator& rel) {
  TC lower = rel.extra;
  if (!rel.lambda.is_zero()) lower += rel.lambda * (sp.group_element(rel.g) - TC::one());
  return lower;
}

SmashElement free_relator(const FiniteRealization& r, const Relator& rel) {
  const int e = r.group().identity();
  SmashElement x = smash_from(rel.top, e);
  for (const auto& [k, c] : smash_from(rel.extra, e)) accumulate(x, k, c);
  if (!rel.lambda.is_zero()) {
    accumulate(x, std::make_pair(Word(), r.group().identity()), -rel.lambda);
    accumulate(x, std::make_pair(Word(), rel.g), rel.lambda);
  }
  return x;
}

CompletionOptions completion(int jobs, std::optional<std::chrono::steady_clock::time_point> deadline,
                             bool stop_when_finite = false) {
  CompletionOptions c;
  c.jobs = jobs;
  c.deadline = deadline;
  c.stop_when_finite = stop_when_finite;
  return c;
}

template <class K>
void require_reached(const GroebnerBasis<K>& gb, int needed) {
  if (gb.completed_through() < needed && !gb.finite_certified())
    throw CapTooSmall("completion reached weight " + itos(gb.completed_through()) + ", needed " + itos(needed));
}

using IdSquare = std::map<std::pair<uint32_t, uint32_t>, C>;

// Product in the tensor square of a completed smash presentation.
IdSquare mul_ids(const GB& gb, const IdSquare& A, const IdSquare& B) {
  IdSquare out;
  std::map<std::pair<uint32_t, uint32_t>, GB::Vec> memo;
  auto prod = [&](uint32_t a, uint32_t b) -> const GB::Vec& {
    auto it = memo.find({a, b});
    if (it == memo.end()) it = memo.emplace(std::make_pair(a, b), gb.mul_tensor(gb.unit(a), TC::word(gb.normal_word(b)))).first;
    return it->second;
  };
  for (const auto& [ka, ca] : A)
    for (const auto& [kb, cb] : B) {
      const auto& left = prod(ka.first, kb.first);
      const auto& right = prod(ka.second, kb.second);
      for (const auto& [i, ci] : left)
        for (const auto& [j, cj] : right) accumulate(out, std::make_pair(i, j), ca * cb * ci * cj);
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- models

Hv1Model enveloping_model(int N, int M, const Specialization& s) {
  auto r = std::make_shared<const FiniteRealization>(hv1_finite_realization(N, M, s));
  if (auto c = r->validate(); !c) throw ConfigError("not a realization: " + c.violation);
  if (auto c = validate_hv1_shape(*r, s); !c) throw ConfigError("not of HV1 shape: " + c.violation);
  return Hv1Model{"env:" + itos(N) + "," + itos(M) + " q1=" + s.image_of_q1().to_string(), std::move(r), s};
}

Hv1Model default_model() { return enveloping_model(24, 12, Specialization::q1_to_omega()); }

Hv1Model model_from_descriptor(std::string_view descriptor, const Specialization& s) {
  std::string d(descriptor);
  if (d.rfind("env:", 0) == 0) {
    int N = 0, M = 0;
    char comma = 0;
    std::istringstream in(d.substr(4));
    if (!(in >> N >> comma >> M) || comma != ',') throw ConfigError("expected env:N,M, got " + d);
    return enveloping_model(N, M, s);
  }
  if (d.rfind("table:", 0) == 0) {
    std::ifstream f(d.substr(6));
    if (!f) throw ConfigError("cannot open " + d.substr(6));
    nlohmann::json j;
    try {
      f >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("group table: ") + e.what());
    }
    auto G = std::make_shared<const FiniteGroup>(FiniteGroup::from_json(j));
    if (!j.contains("generators") || j["generators"].size() != 4) throw ConfigError("group table needs four generators");
    std::vector<int> g = j["generators"].get<std::vector<int>>();
    auto r = std::make_shared<const FiniteRealization>(hv1_realization_on(G, g, s));
    if (auto c = r->validate(); !c) throw ConfigError("not a realization: " + c.violation);
    if (auto c = validate_hv1_shape(*r, s); !c) throw ConfigError("not of HV1 shape: " + c.violation);
    return Hv1Model{d, std::move(r), s};
  }
  throw ConfigError("unknown group descriptor " + d + " (use env:N,M or table:<file>)");
}

// ---------------------------------------------------------------- parameters

bool DeformationParameters::is_zero() const {
  return std::all_of(lambda.begin(), lambda.end(), [](const C& c) { return c.is_zero(); });
}

std::string DeformationParameters::to_string() const {
  std::string s = "(";
  for (size_t k = 0; k < 4; ++k) s += (k ? ", " : "") + lambda[k].to_string();
  return s + ")";
}

DeformationParameters DeformationParameters::parse(std::string_view text) {
  DeformationParameters p;
  std::string t(text);
  size_t slot = 0, start = 0;
  while (start <= t.size()) {
    size_t end = t.find(',', start);
    if (end == std::string::npos) end = t.size();
    if (slot >= 4) throw ParseError("at most four deformation parameters");
    std::string item = t.substr(start, end - start);
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty()) throw ParseError("empty deformation parameter in '" + t + "'");
    p.lambda[slot++] = C::parse(item);
    start = end + 1;
  }
  return p;
}

std::array<bool, 4> admissible_slots(const DeformationParameters& l, const FiniteRealization& r) {
  auto allowed = lambda_support_predicates(r);
  std::array<bool, 4> out{};
  for (size_t k = 0; k < 4; ++k) out[k] = l.lambda[k].is_zero() || allowed[k];
  return out;
}

bool admissible(const DeformationParameters& l, const FiniteRealization& r) {
  auto s = admissible_slots(l, r);
  return std::all_of(s.begin(), s.end(), [](bool b) { return b; });
}

// ---------------------------------------------------------------- strata

std::vector<Stratum> stratification() {
  const Scalar w = Scalar::omega(), q2 = Scalar::q2();
  auto g = [](int i) { return hv1_generator(i - 1); };
  std::vector<Stratum> s(5);
  for (int k = 0; k < 5; ++k) s[static_cast<size_t>(k)].level = k;
  for (int h = 1; h <= 3; ++h)
    s[0].elements.push_back({"x4 z" + itos(h) + " - q2 z" + itos(h) + " x4", x(4) * z(h) - q2 * (z(h) * x(4)),
                             g(h) * g(4).pow(2)});
  for (int i = 1; i <= 3; ++i) s[1].elements.push_back({"x" + itos(i) + "^2", x(i) * x(i), g(i).pow(2)});
  for (int i = 2; i <= 3; ++i)
    s[2].elements.push_back({"x1x" + itos(i) + " cyclic sum", x(1) * x(i) + x(5 - i) * x(1) + x(i) * x(5 - i),
                             g(1) * g(i)});
  for (int i = 2; i <= 3; ++i) {
    int k = wrap3(2 - i);
    s[3].elements.push_back({"u" + itos(i) + "1 - w u1" + itos(k), u(i, 1) - w * u(1, k), g(1) * g(5 - i) * g(4)});
  }
  s[4].elements.push_back({"x4^6", hv1::z4(), g(4).pow(6)});
  const hv1::T P = hv1::u12413();
  s[4].elements.push_back({"(u12 u13 + w^2 u13 u12)^3", P * P * P, g(1).pow(12) * g(4).pow(6)});
  return s;
}

CheckReport strata_report(const StrataOptions& o) {
  return timed_check("stratification of the minimal relations", [&](CheckReport& r) {
    const auto S = stratification();
    const auto V = hv1_space();
    const EnvelopingRealization er;
    const auto order = MonomialOrder({1, 1, 1, 1}, hv1::default_precedence());
    nlohmann::json tables = nlohmann::json::array();
    // Level k is read modulo the ideal of the levels below it.
    Presentation<Scalar> below = Presentation<Scalar>::make(4);
    below.order = order;
    below.grading = Grading::enveloping({0, 1, 2, 3});
    for (const auto& st : S) {
      auto skipped = [&](size_t a) { return st.level == 4 && a == 1 && !o.include_top; };
      int cap = 0;
      for (size_t a = 0; a < st.elements.size(); ++a)
        if (!skipped(a)) cap = std::max(cap, st.elements[a].element.degree());
      CompletionOptions co;
      co.jobs = o.jobs;
      co.stop_when_finite = false;
      const auto gb = complete(below, cap, co);
      std::vector<hv1::T> reduced;
      for (size_t a = 0; a < st.elements.size(); ++a)
        reduced.push_back(skipped(a) ? hv1::T() : gb.normal_form(st.elements[a].element));
      const std::string lvl = "level " + itos(st.level) + ": ";

      for (size_t a = 0; a < st.elements.size(); ++a) {
        const auto& e = st.elements[a];
        if (skipped(a)) {
          r.notes.push_back("degree-18 element skipped");
          continue;
        }
        r.require(leading_degree(e.element) == e.group_degree, e.name + " has group degree " + e.group_degree.to_string());
        r.require(!reduced[a].is_zero(), lvl + e.name + " is nonzero modulo the lower levels");
        const bool top = st.level == 4 && a == 1;
        const hv1::T P = hv1::u12413();
        r.require(top ? hv1::primitive_modulo(gb, V, {P, P, P}) : hv1::primitive_modulo(gb, V, {e.element}),
                  lvl + e.name + " is primitive modulo the lower levels");

        for (int j = 0; j < 4; ++j) {
          const hv1::T img = gb.normal_form(V.act(j, e.element));
          std::optional<std::pair<size_t, Scalar>> found;
          for (size_t b = 0; b < st.elements.size() && !found; ++b) {
            const hv1::T& cand = reduced[b];
            for (const auto& [wd, cw] : cand.terms()) {
              if (!cw.is_unit()) continue;
              Scalar c = img.coefficient(wd) / cw;
              if (!c.is_zero() && img == c * cand) found = {{b, c}};
              break;
            }
          }
          const std::string what = "g" + itos(j + 1) + " . (" + e.name + ")";
          r.require(found.has_value(), lvl + what + " is a multiple of an element of the same level");
          if (!found) continue;
          const auto& [b, c] = *found;
          tables.push_back({{"level", st.level}, {"element", e.name}, {"generator", "g" + itos(j + 1)},
                            {"image", st.elements[b].name}, {"scalar", c.to_string()}});
          const EnvelopingElement gj = hv1_generator(j);
          const int h = static_cast<int>(a);
          if (st.level == 0) {
            r.require(static_cast<int>(b) == er.letter_action(gj, h) && c == er.chi(h, gj) * er.chi(3, gj).pow(2),
                      what + " = chi_h chi_4^2 times the permuted element");
          } else if (st.level == 1) {
            r.require(static_cast<int>(b) == er.letter_action(gj, h) && c == er.chi(h, gj).pow(2),
                      what + " = chi_h^2 times the permuted square");
          } else if (st.level == 4) {
            r.require(b == a, what + " spans a stable line");
            if (a == 0) r.require(c == er.chi(3, gj).pow(6), what + " scales by chi_4^6");
          }
        }
      }
      if (st.level < 4)
        for (const auto& e : st.elements) below.relations.push_back(Relation<Scalar>::element(e.name, e.element, order));
    }
    r.witness["action_tables"] = tables;
  });
}

// ---------------------------------------------------------------- smash products

int SmashPresentation::a_degree(const Word& w) const {
  int d = 0;
  for (size_t k = 0; k < w.size(); ++k) d += letter_at(w, k) < a_letters ? 1 : 0;
  return d;
}

TC SmashPresentation::group_element(int g) const { return TC::word(group_words[static_cast<size_t>(g)]); }

SmashBuilder::SmashBuilder(std::shared_ptr<const FiniteRealization> r, std::vector<int> a_precedence,
                           std::vector<std::string> a_names)
    : a_precedence_(std::move(a_precedence)) {
  const FiniteGroup& G = r->group();
  const int n = r->letters();
  sp_.realization = r;
  sp_.a_letters = n;
  if (a_precedence_.empty()) a_precedence_ = MonomialOrder::identity(n);
  if (a_names.empty())
    for (int i = 0; i < n; ++i) a_names.push_back("a" + itos(i + 1));

  // One group letter per distinct g(i), in order of first appearance.
  std::vector<std::string> names = a_names;
  for (int i = 0; i < n; ++i)
    if (std::find(sp_.generator_elements.begin(), sp_.generator_elements.end(), r->g(i)) == sp_.generator_elements.end()) {
      sp_.generator_elements.push_back(r->g(i));
      names.push_back("g" + itos(i + 1));
    }
  const int t = static_cast<int>(sp_.generator_elements.size());

  // Shortlex normal words by breadth-first search in letter order.
  sp_.group_words.assign(static_cast<size_t>(G.order()), Word());
  std::vector<char> seen(static_cast<size_t>(G.order()), 0);
  std::deque<int> todo{G.identity()};
  seen[static_cast<size_t>(G.identity())] = 1;
  int reached = 1;
  while (!todo.empty()) {
    int a = todo.front();
    todo.pop_front();
    for (int k = 0; k < t; ++k) {
      int b = G.mul(a, sp_.generator_elements[static_cast<size_t>(k)]);
      if (seen[static_cast<size_t>(b)]) continue;
      seen[static_cast<size_t>(b)] = 1;
      ++reached;
      sp_.group_words[static_cast<size_t>(b)] = sp_.group_words[static_cast<size_t>(a)] + static_cast<char>(n + k);
      todo.push_back(b);
    }
  }
  if (reached != G.order()) throw ConfigError("the g_i do not generate " + G.description());
  size_t longest = 0;
  for (const auto& w : sp_.group_words) longest = std::max(longest, w.size());
  sp_.a_weight = static_cast<int>(longest) + 1;

  std::vector<int> weights(static_cast<size_t>(n), sp_.a_weight);
  weights.resize(static_cast<size_t>(n + t), 1);
  std::vector<int> precedence = a_precedence_;
  for (int k = 0; k < t; ++k) precedence.push_back(n + k);
  sp_.presentation = Presentation<C>::make(n + t, {}, names);
  sp_.presentation.order = MonomialOrder(weights, precedence);
  const auto& order = sp_.presentation.order;

  // Rules w_g s -> w_{gs} for the minimal non-normal words: w_g s whose suffix is normal.
  std::set<Word> normal(sp_.group_words.begin(), sp_.group_words.end());
  for (int a = 0; a < G.order(); ++a)
    for (int k = 0; k < t; ++k) {
      const Word lead = sp_.group_words[static_cast<size_t>(a)] + static_cast<char>(n + k);
      if (normal.count(lead) || !normal.count(lead.substr(1))) continue;
      const int b = G.mul(a, sp_.generator_elements[static_cast<size_t>(k)]);
      sp_.presentation.relations.push_back(Relation<C>::element(
          "group rule " + word_to_string(lead, names), TC::word(lead) - TC::word(sp_.group_words[static_cast<size_t>(b)]), order));
    }
  // g a_i = chi_i(g) a_{g |> i} g.
  for (int k = 0; k < t; ++k)
    for (int i = 0; i < n; ++i) {
      auto [j, chi] = r->act(sp_.generator_elements[static_cast<size_t>(k)], i);
      TC rel = TC::letter(n + k) * TC::letter(i) - chi * (TC::letter(j) * TC::letter(n + k));
      sp_.presentation.relations.push_back(
          Relation<C>::element("commute " + names[static_cast<size_t>(n + k)] + " past " + names[static_cast<size_t>(i)], rel, order));
    }
}

void SmashBuilder::add(std::string name, const TC& top, const TC& lower, bool deformed) {
  auto& p = sp_.presentation;
  Relation<C> rel = Relation<C>::element(name, top + lower, p.order);
  if (rel.weight(p.order) != sp_.a_weight * top.degree())
    throw std::logic_error("relation " + name + ": the lower part reaches the top weight");
  p.relations.push_back(std::move(rel));
  if (deformed) sp_.deformed.push_back(std::move(name));
}

void SmashBuilder::add_product(std::string name, std::vector<TC> factors, const TC& lower, bool deformed) {
  sp_.presentation.relations.push_back(Relation<C>::product(name, std::move(factors), lower));
  if (deformed) sp_.deformed.push_back(std::move(name));
}

void SmashBuilder::grade_modulo(std::vector<int> elements) {
  normal_generators_.insert(normal_generators_.end(), elements.begin(), elements.end());
}

SmashPresentation SmashBuilder::build() const {
  SmashPresentation sp = sp_;
  const FiniteGroup& G = sp.realization->group();
  const auto in_n = normal_closure(G, normal_generators_);
  auto coset_of = std::make_shared<std::vector<int>>(static_cast<size_t>(G.order()), -1);
  auto rep = std::make_shared<std::vector<int>>();
  for (int g = 0; g < G.order(); ++g) {
    if ((*coset_of)[static_cast<size_t>(g)] >= 0) continue;
    const int id = static_cast<int>(rep->size());
    rep->push_back(g);
    for (int h = 0; h < G.order(); ++h)
      if (in_n[static_cast<size_t>(h)]) (*coset_of)[static_cast<size_t>(G.mul(g, h))] = id;
  }
  std::vector<int> letter_element;
  for (int i = 0; i < sp.a_letters; ++i) letter_element.push_back(sp.realization->g(i));
  for (int e : sp.generator_elements) letter_element.push_back(e);
  auto group = sp.realization->group_ptr();
  sp.presentation.grading.name = "cosets of a normal subgroup of order " +
                                 itos(static_cast<int>(std::count(in_n.begin(), in_n.end(), 1)));
  sp.presentation.grading.identity = static_cast<uint64_t>((*coset_of)[static_cast<size_t>(G.identity())]);
  sp.presentation.grading.step = [coset_of, rep, letter_element, group](uint64_t key, int letter) -> uint64_t {
    int g = group->mul((*rep)[key], letter_element[static_cast<size_t>(letter)]);
    return static_cast<uint64_t>((*coset_of)[static_cast<size_t>(g)]);
  };
  (void)graded_;
  return sp;
}

void SmashBuilder::add_element(std::string name, const SmashElement& x, bool deformed) {
  int top = 0;
  for (const auto& [k, c] : x) top = std::max(top, static_cast<int>(k.first.size()));
  for (const auto& [k, c] : x)
    if (static_cast<int>(k.first.size()) == top && k.second != sp_.realization->group().identity())
      throw std::logic_error("relation " + name + ": top part carries a group element");
  auto& p = sp_.presentation;
  p.relations.push_back(Relation<C>::element(name, to_smash_tensor(sp_, x), p.order));
  if (deformed) sp_.deformed.push_back(std::move(name));
}

TC to_smash_tensor(const SmashPresentation& sp, const SmashElement& x) {
  TC t;
  for (const auto& [k, c] : x) t.add_term(k.first + sp.group_words[static_cast<size_t>(k.second)], c);
  return t;
}

std::optional<C> proportional(const SmashElement& a, const SmashElement& b) {
  if (a.size() != b.size() || b.empty()) return std::nullopt;
  auto it = a.find(b.begin()->first);
  if (it == a.end()) return std::nullopt;
  const C c = it->second / b.begin()->second;
  for (const auto& [k, v] : b) {
    auto jt = a.find(k);
    if (jt == a.end() || !(jt->second == c * v)) return std::nullopt;
  }
  return c;
}

std::vector<SmashElement> conjugation_orbit(const FiniteRealization& r, const SmashElement& x) {
  const FiniteGroup& G = r.group();
  std::vector<int> gens;
  for (int i = 0; i < r.letters(); ++i)
    if (std::find(gens.begin(), gens.end(), r.g(i)) == gens.end()) gens.push_back(r.g(i));
  std::vector<SmashElement> orbit{x};
  for (size_t k = 0; k < orbit.size(); ++k)
    for (int h : gens) {
      SmashElement y = smash_mul(r, smash_mul(r, {{{Word(), h}, kOne}}, orbit[k]), {{{Word(), G.inv(h)}, kOne}});
      const bool known = std::any_of(orbit.begin(), orbit.end(), [&](const SmashElement& o) { return proportional(y, o).has_value(); });
      if (!known) orbit.push_back(std::move(y));
    }
  return orbit;
}

SmashElement smash_mul(const FiniteRealization& r, const SmashElement& x, const SmashElement& y) {
  SmashElement out;
  for (const auto& [ku, c] : x)
    for (const auto& [kv, d] : y) {
      auto [chi, moved] = act_word(r, ku.second, kv.first);
      accumulate(out, std::make_pair(ku.first + moved, r.group().mul(ku.second, kv.second)), c * d * chi);
    }
  return out;
}

SmashElement smash_from(const TC& t, int group_element) {
  SmashElement out;
  for (const auto& [w, c] : t.terms()) out.emplace(std::make_pair(w, group_element), c);
  return out;
}

SmashSquare skew_primitivity_defect(const FiniteRealization& r, const SmashElement& x, int g) {
  const FiniteGroup& G = r.group();
  const int e = G.identity();
  // Legs multiply independently: the bosonization is an ordinary Hopf algebra.
  auto mul_basis = [&](const Word& u, int gu, const Word& v, int gv) {
    auto [chi, moved] = act_word(r, gu, v);
    return std::make_tuple(chi, u + moved, G.mul(gu, gv));
  };
  SmashSquare out;
  for (const auto& [k, c] : x) {
    const auto& [w, h] = k;
    SmashSquare cur;
    cur[{Word(), e, Word(), e}] = c;
    for (size_t p = 0; p < w.size(); ++p) {
      const int i = letter_at(w, p);
      const Word a(1, static_cast<char>(i));
      SmashSquare next;
      for (const auto& [kk, cc] : cur) {
        const auto& [l, gl, rr, gr] = kk;
        // a_i (x) 1
        {
          auto [chi, lw, lg] = mul_basis(l, gl, a, e);
          accumulate(next, std::make_tuple(lw, lg, rr, gr), cc * chi);
        }
        // g_i (x) a_i
        {
          auto [chi1, lw, lg] = mul_basis(l, gl, Word(), r.g(i));
          auto [chi2, rw, rg] = mul_basis(rr, gr, a, e);
          accumulate(next, std::make_tuple(lw, lg, rw, rg), cc * chi1 * chi2);
        }
      }
      cur = std::move(next);
    }
    for (const auto& [kk, cc] : cur) {
      const auto& [l, gl, rr, gr] = kk;
      accumulate(out, std::make_tuple(l, G.mul(gl, h), rr, G.mul(gr, h)), cc);
    }
  }
  for (const auto& [k, c] : x) {
    accumulate(out, std::make_tuple(k.first, k.second, Word(), e), -c);
    accumulate(out, std::make_tuple(Word(), g, k.first, k.second), -c);
  }
  return out;
}

std::map<std::pair<uint32_t, uint32_t>, C> reduce_square(const SmashPresentation& sp, const GB& gb,
                                                         const SmashSquare& s) {
  std::map<std::pair<uint32_t, uint32_t>, C> out;
  std::map<std::pair<Word, int>, GB::Vec> memo;
  auto leg = [&](const Word& w, int g) -> const GB::Vec& {
    auto key = std::make_pair(w, g);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, gb.to_vec(TC::word(w + sp.group_words[static_cast<size_t>(g)]))).first;
    return it->second;
  };
  for (const auto& [k, c] : s) {
    const auto& [l, gl, rr, gr] = k;
    const auto& a = leg(l, gl);
    const auto& b = leg(rr, gr);
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b) accumulate(out, std::make_pair(i, j), c * ci * cj);
  }
  return out;
}

std::vector<int64_t> a_degree_counts(const SmashPresentation& sp, const GB& gb, int up_to) {
  require_reached(gb, sp.cap_for_a_degree(up_to));
  std::vector<int64_t> counts(static_cast<size_t>(up_to) + 1, 0);
  for (uint32_t id = 0; id < gb.normal_word_count(); ++id) {
    if (gb.weight_of(id) > sp.cap_for_a_degree(up_to)) break;
    const int d = sp.a_degree(gb.normal_word(id));
    if (d <= up_to) ++counts[static_cast<size_t>(d)];
  }
  return counts;
}

// ---------------------------------------------------------------- FK3 liftings

namespace {

std::vector<Relator> fk3_relators(const std::array<C, 2>& lambda, const FiniteRealization& r) {
  auto a = [](int i) { return TC::letter(i - 1); };
  std::vector<Relator> out;
  for (int i = 1; i <= 3; ++i) {
    Relator rel;
    rel.name = "a" + itos(i) + "^2";
    rel.stratum = 1;
    rel.representative = i == 1;
    rel.top = a(i) * a(i);
    rel.lambda = lambda[0];
    rel.g = group_of(r, rel.top);
    out.push_back(rel);
  }
  for (int i = 2; i <= 3; ++i) {
    Relator rel;
    rel.name = "a1a" + itos(i) + " cyclic sum";
    rel.stratum = 2;
    rel.representative = i == 2;
    rel.top = a(1) * a(i) + a(5 - i) * a(1) + a(i) * a(5 - i);
    rel.lambda = lambda[1];
    rel.g = group_of(r, rel.top);
    out.push_back(rel);
  }
  return out;
}

}  // namespace

SmashPresentation fk3_lifting(const std::array<C, 2>& lambda, std::shared_ptr<const FiniteRealization> r) {
  SmashBuilder b(r);
  std::vector<int> n;
  for (const auto& rel : fk3_relators(lambda, *r)) {
    if (!rel.representative) continue;
    const auto orbit = conjugation_orbit(*r, free_relator(*r, rel));
    for (size_t k = 0; k < orbit.size(); ++k)
      b.add_element(k ? rel.name + " conjugate " + itos(static_cast<int>(k)) : rel.name, orbit[k], !rel.lambda.is_zero());
    if (!rel.lambda.is_zero()) n.push_back(rel.g);
  }
  b.grade_modulo(n);
  return b.build();
}

CheckReport fk3_lifting_report(const std::array<C, 2>& lambda, std::shared_ptr<const FiniteRealization> r, int jobs) {
  const std::string params = "(" + lambda[0].to_string() + ", " + lambda[1].to_string() + ")";
  return timed_check("lifting of the Fomin-Kirillov algebra " + params + " over " + r->group().description(),
                     [&](CheckReport& rep) {
                       auto ok = fk3_lambda_support(*r);
                       for (size_t k = 0; k < 2; ++k)
                         if (!lambda[k].is_zero() && !ok[k])
                           throw NotAdmissible("lambda_" + itos(static_cast<int>(k) + 1) + " is not admissible over " +
                                               r->group().description());
                       const SmashPresentation sp = fk3_lifting(lambda, r);
                       const int order = r->group().order();
                       const GB gb = complete(sp.presentation, sp.cap_for_a_degree(8), completion(jobs, {}, true));
                       rep.require(!gb.stats().collapse_detected, "no relation collapses to a lower-degree element");
                       const Dimension d = gb.dimension();
                       rep.require(d.kind == Dimension::Kind::Finite && d.value == 12 * order,
                                   "dimension is 12 |G| = " + itos(12 * order), d.to_string());
                       const auto counts = a_degree_counts(sp, gb, 4);
                       std::vector<int64_t> expected;
                       for (int64_t h : hv1::fk3_series()) expected.push_back(h * order);
                       rep.require(counts == expected, "a-degree counts are (1, 3, 4, 3, 1) |G|",
                                   {{"computed", counts}, {"expected", expected}});
                       for (const auto& rel : fk3_relators(lambda, *r)) {
                         if (rel.representative) continue;
                         TC t = rel.top + smash_lower(sp, rel);
                         rep.require(gb.normal_form(t).is_zero(), rel.name + " deformed relation holds");
                       }
                       for (const auto& rel : fk3_relators(lambda, *r))
                         if (rel.representative)
                           rep.require(conjugation_orbit(*r, free_relator(*r, rel)).size() == (rel.stratum == 1 ? 3u : 2u),
                                       rel.name + " has " + (rel.stratum == 1 ? "three" : "two") + " conjugates up to scalars");
                       rep.witness["group_order"] = order;
                       rep.witness["a_weight"] = sp.a_weight;
                     });
}

// ---------------------------------------------------------------- HV1 cleft objects

bool cleft_top_is_exact(const DeformationParameters& l) { return !l.nonzero(0) && !l.nonzero(1); }

Presentation<C> cleft_presentation(const DeformationParameters& l, const Hv1Model& m, int level) {
  Presentation<C> p = Presentation<C>::make(4, {}, {"y1", "y2", "y3", "y4"});
  p.order = MonomialOrder({1, 1, 1, 1}, hv1::default_precedence());
  int a_mod = 0;
  if (l.nonzero(3)) a_mod = 12;
  if (l.nonzero(0) || l.nonzero(1)) a_mod = 2;
  const int c_mod = (l.nonzero(2) || l.nonzero(3)) ? 6 : 0;
  p.grading = Grading::enveloping({0, 1, 2, 3}, a_mod, c_mod, l.nonzero(1));
  for (const auto& rel : relators(l, m)) {
    if (rel.stratum >= level) continue;
    TC lower = rel.extra - rel.lambda * TC::one();
    if (rel.cube) p.relations.push_back(Relation<C>::product(rel.name, {rel.factor, rel.factor, rel.factor}, lower));
    else p.relations.push_back(Relation<C>::element(rel.name, rel.top + lower, p.order));
  }
  return p;
}

CheckReport cleft_report(const DeformationParameters& l, const Hv1Model& m, const CleftOptions& o) {
  return timed_check("cleft object " + l.to_string() + " over " + m.name, [&](CheckReport& r) {
    require_admissible(l, *m.realization);
    const bool exact = cleft_top_is_exact(l);
    if (!exact)
      r.notes.push_back("the top relation uses the cube itself; with lambda_1 or lambda_2 nonzero its lift is not known, so this algebra is a naive model");
    const auto p = cleft_presentation(l, m, 5);
    const GB gb = complete(p, o.cap, completion(o.jobs, o.deadline, true));
    if (gb.stats().budget_exhausted) {
      r.status = Status::Unknown;
      r.notes.push_back("time budget exhausted at weight " + itos(gb.completed_through()));
      return;
    }
    const bool collapse = gb.stats().collapse_detected;
    const Dimension d = gb.dimension();
    const auto h = gb.hilbert(std::min(gb.completed_through(), 40));
    r.hilbert = h;
    auto expected = padded(hv1::factorized_series(), h.coefficients.size());
    const bool dims_ok = !collapse && d.kind == Dimension::Kind::Finite && d.value == 10368 && h.coefficients == expected;
    r.witness["collapse"] = collapse;
    r.witness["dimension"] = d.to_string();
    if (exact) {
      r.require(!collapse, "no relation collapses to a lower-degree element");
      r.require(gb.finite_certified(), "finiteness certified by an empty window");
      r.require(d.kind == Dimension::Kind::Finite && d.value == 10368, "dimension 10368", d.to_string());
      r.require(h.coefficients == expected, "filtration series equals the Nichols series");
    } else if (!dims_ok) {
      r.status = Status::Unknown;
      r.notes.push_back("the naive model does not have the Nichols dimension");
    }
    // Conjugates of y1^2 - lambda_1 by g_3 and g_2 are the other squares.
    const auto& R = *m.realization;
    for (int j : {2, 1}) {
      auto [c, w] = act_word(R, R.g(j), Word{0, 0});
      r.require(c == kOne && w == Word(2, static_cast<char>(R.letter_action(R.g(j), 0))),
                "g" + itos(j + 1) + " (y1^2 - lambda_1) g" + itos(j + 1) + "^-1 = y" +
                    itos(R.letter_action(R.g(j), 0) + 1) + "^2 - lambda_1");
    }
  });
}

// ---------------------------------------------------------------- HV1 liftings

SmashPresentation hv1_lifting(const DeformationParameters& l, const Hv1Model& m, int level) {
  const auto& R = *m.realization;
  SmashBuilder b(m.realization, hv1::default_precedence(), {"a1", "a2", "a3", "a4"});
  std::vector<int> n;
  for (const auto& rel : relators(l, m)) {
    if (rel.stratum >= level || !rel.representative) continue;
    const bool deformed = !rel.lambda.is_zero() || !rel.extra.is_zero();
    if (rel.cube) {
      if (!cleft_top_is_exact(l))
        throw MissingA124134("the lift of the degree-18 relation is unknown when lambda_1 or lambda_2 is nonzero");
      // The cube spans a stable line, so its orbit is itself.
      b.add_product(rel.name, {rel.factor, rel.factor, rel.factor}, smash_lower(b.base(), rel), deformed);
    } else {
      const auto orbit = conjugation_orbit(R, free_relator(R, rel));
      for (size_t k = 0; k < orbit.size(); ++k)
        b.add_element(k ? rel.name + " conjugate " + itos(static_cast<int>(k)) : rel.name, orbit[k], deformed);
    }
    if (!rel.lambda.is_zero()) n.push_back(rel.g);
    if (!rel.extra.is_zero()) n.push_back(R.group().mul(rel.g, R.group().inv(R.g(3))));
  }
  b.grade_modulo(n);
  return b.build();
}

CheckReport lifting_report(const DeformationParameters& l, const Hv1Model& m, const LiftingOptions& o) {
  return timed_check("lifting " + l.to_string() + " over " + m.name, [&](CheckReport& r) {
    const auto& R = *m.realization;
    require_admissible(l, R);
    const int order = R.group().order();
    const auto co = completion(o.jobs, o.deadline);
    auto check_budget = [&](const GB& gb) {
      if (gb.stats().budget_exhausted) throw CapTooSmall("time budget exhausted at weight " + itos(gb.completed_through()));
      r.require(!gb.stats().collapse_detected, "no relation collapses to a lower-degree element");
    };
    const auto rels = relators(l, m);

    // Truncated bases of L_k by (level, a-degree), built on demand.
    std::map<std::pair<int, int>, std::pair<SmashPresentation, GB>> bases;
    auto basis = [&](int level, int a_deg) -> const std::pair<SmashPresentation, GB>& {
      auto key = std::make_pair(level, a_deg);
      auto it = bases.find(key);
      if (it == bases.end()) {
        SmashPresentation sp = hv1_lifting(l, m, level);
        GB gb = complete(sp.presentation, sp.cap_for_a_degree(a_deg), co);
        check_budget(gb);
        it = bases.emplace(key, std::make_pair(std::move(sp), std::move(gb))).first;
      }
      return it->second;
    };

    // The conjugation orbit of each deformed representative is the deformed stratum, up to scalars.
    for (const auto& rep : rels) {
      if (!rep.representative || rep.cube) continue;
      const auto orbit = conjugation_orbit(R, free_relator(R, rep));
      int members = 0;
      for (const auto& rel : rels) {
        if (rel.stratum != rep.stratum || rel.cube) continue;
        ++members;
        const auto x = free_relator(R, rel);
        const bool found = std::any_of(orbit.begin(), orbit.end(), [&](const SmashElement& o) { return proportional(x, o).has_value(); });
        r.require(found, "level " + itos(rel.stratum) + ": " + rel.name + " is conjugate to " + rep.name + " up to a scalar");
      }
      if (rep.stratum != 3) {
        r.require(static_cast<int>(orbit.size()) == members,
                  "level " + itos(rep.stratum) + ": the orbit of " + rep.name + " has " + itos(members) + " elements");
        continue;
      }
      // This level is stable only modulo the lower ones.
      const auto& [sp, gb] = basis(3, 3);
      std::vector<TC> targets;
      for (const auto& rel : rels)
        if (rel.stratum == 3) targets.push_back(gb.normal_form(to_smash_tensor(sp, free_relator(R, rel))));
      bool all = true;
      for (const auto& o : orbit) {
        const TC t = gb.normal_form(to_smash_tensor(sp, o));
        all = all && std::any_of(targets.begin(), targets.end(), [&](const TC& m) {
          if (m.is_zero()) return t.is_zero();
          const C c = t.coefficient(m.terms().begin()->first) / m.terms().begin()->second;
          return t == c * m;
        });
      }
      r.require(all, "level 3: every conjugate of " + rep.name + " is a multiple of a member modulo the lower levels",
                {{"orbit_size", orbit.size()}});
    }

    // Skew-primitivity of each relator modulo the previous level.
    for (const auto& rel : rels) {
      if (rel.cube) {
        r.notes.push_back("skew-primitivity of the degree-18 relator is certified by the top-element computation");
        continue;
      }
      const SmashSquare defect = skew_primitivity_defect(R, free_relator(R, rel), rel.g);
      const std::string what = "level " + itos(rel.stratum) + ": " + rel.name + " is skew-primitive";
      if (defect.empty()) {
        r.require(true, what + " in the free smash product");
        continue;
      }
      const auto& [sp, gb] = basis(rel.stratum, std::max(1, rel.top.degree() - 1));
      r.require(reduce_square(sp, gb, defect).empty(), what + " modulo the previous level");
    }

    // Truncated dimensions against the undeformed series times |G|.
    const int D = o.a_degree;
    {
      const auto& [sp, gb] = basis(4, std::max(D, 3));
      const auto counts = a_degree_counts(sp, gb, D);
      std::vector<int64_t> expected;
      for (int64_t h : prenichols_series(D)) expected.push_back(h * order);
      r.require(counts == expected, "L_4 a-degree counts equal the pre-Nichols series times |G| through a-degree " + itos(D),
                {{"computed", counts}, {"expected", expected}});
    }
    if (cleft_top_is_exact(l)) {
      const auto& [sp, gb] = basis(5, D);
      const auto counts = a_degree_counts(sp, gb, D);
      std::vector<int64_t> expected;
      for (int64_t h : padded(hv1::factorized_series(), static_cast<size_t>(D) + 1)) expected.push_back(h * order);
      r.require(counts == expected, "L a-degree counts equal the Nichols series times |G| through a-degree " + itos(D),
                {{"computed", counts}, {"expected", expected}});
    } else {
      r.notes.push_back("full lifting skipped: the degree-18 element is unknown for lambda_1 or lambda_2 nonzero");
    }
    r.witness["group_order"] = order;
  });
}

// ---------------------------------------------------------------- top primitive element

A124134Result compute_a124134(const DeformationParameters& l, const Hv1Model& m, const A124134Budget& b) {
  A124134Result out;
  const auto& R = *m.realization;
  const int g = R.group().mul(R.group().pow(R.g(0), 12), R.group().pow(R.g(3), 6));
  out.report = timed_check("top primitive element " + l.to_string() + " over " + m.name, [&](CheckReport& r) {
    require_admissible(l, R);
    r.witness["group_degree"] = R.group().name(g);
    if (cleft_top_is_exact(l)) {
      // The section is the identity: the cube is primitive in the pre-Nichols algebra,
      // hence (g, 1)-primitive in its bosonization.
      hv1::CheckOptions co;
      co.jobs = b.jobs;
      co.prenichols_degree = 18;
      hv1::Checks checks(co);
      const auto& gb = checks.prenichols_basis();
      require_reached(gb, 18);
      const hv1::T P = hv1::u12413();
      r.require(hv1::primitive_modulo(gb, hv1_space(), {P, P, P}), "the cube is primitive modulo the lower levels");
      r.require(!gb.normal_form_product({P, P, P}).is_zero(), "the cube is nonzero modulo the lower levels");
      out.factors = {P, P, P};
      out.status = A124134Result::Status::Computed;
      return;
    }
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(b.seconds));
    const SmashPresentation sp = hv1_lifting(l, m, 4);
    const GB gb = complete(sp.presentation, sp.cap_for_a_degree(18), completion(b.jobs, deadline));
    r.witness["completed_weight"] = gb.completed_through();
    r.witness["normal_words"] = gb.normal_word_count();
    if (gb.stats().budget_exhausted || gb.completed_through() < sp.cap_for_a_degree(18)) {
      r.status = Status::Unknown;
      std::ostringstream secs;
      secs << b.seconds;
      r.notes.push_back("budget of " + secs.str() + " s exhausted at a-degree " +
                        itos(gb.completed_through() / sp.a_weight) + " of 18");
      return;
    }
    // Try the cube of the undeformed factor; a nonzero defect would need a correction term.
    const TC P = specialize(hv1::u12413(), m.specialization);
    const auto dP = reduce_square(sp, gb, skew_primitivity_defect(R, smash_from(P, R.group().identity()), group_of(R, P)));
    IdSquare delta;
    const IdSquare factor = [&] {
      IdSquare s = dP;
      const auto pv = gb.to_vec(P);
      const auto gv = gb.to_vec(sp.group_element(group_of(R, P)));
      for (const auto& [i, ci] : pv) {
        accumulate(s, std::make_pair(i, uint32_t{0}), ci);
        for (const auto& [j, cj] : gv) accumulate(s, std::make_pair(j, i), ci * cj);
      }
      return s;
    }();
    delta[{0, 0}] = kOne;
    for (int k = 0; k < 3; ++k) delta = mul_ids(gb, delta, factor);
    const auto cube = gb.to_vec(P * P * P);
    const auto gv = gb.to_vec(sp.group_element(g));
    for (const auto& [i, ci] : cube) {
      accumulate(delta, std::make_pair(i, uint32_t{0}), -ci);
      for (const auto& [j, cj] : gv) accumulate(delta, std::make_pair(j, i), -ci * cj);
    }
    if (delta.empty()) {
      out.factors = {hv1::u12413(), hv1::u12413(), hv1::u12413()};
      out.status = A124134Result::Status::Computed;
    } else {
      r.status = Status::Unknown;
      r.notes.push_back("the cube of the undeformed factor is not skew-primitive; no correction term was searched");
    }
  });
  return out;
}

}  // namespace nichols::liftings
