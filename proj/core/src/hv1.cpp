#include "nichols/hv1.hpp"

#include <map>
#include <mutex>
#include <set>

namespace nichols::hv1 {

namespace {

const Scalar kOmega = Scalar::omega();
const Scalar kQ1 = Scalar::q1();
const Scalar kQ2 = Scalar::q2();

// Degrees inspected at the top of the pre-Nichols series for linear growth.
constexpr int kGrowthWindow = 6;

Scalar omega_pow(int k) { return kOmega.pow(((k % 3) + 3) % 3); }

EnvelopingElement word_degree(const Word& w) {
  EnvelopingElement g;
  for (size_t k = 0; k < w.size(); ++k) g = g * hv1_generator(letter_at(w, k));
  return g;
}

EnvelopingElement gen(int i) { return hv1_generator(i - 1); }

Hv1Relation make(std::string family, std::string name, Relation<Scalar> rel) {
  Word rep = rel.representative();
  int a = 0, c = 0;
  for (size_t k = 0; k < rep.size(); ++k) (letter_at(rep, k) == 3 ? c : a) += 1;
  return Hv1Relation{std::move(family), std::move(name), std::move(rel), {a, c}, word_degree(rep)};
}

Hv1Relation element(std::string family, std::string name, const T& t) {
  return make(std::move(family), std::move(name), Relation<Scalar>::element(name, t, MonomialOrder::natural(4)));
}

}  // namespace

int wrap3(int k) { return ((k - 1) % 3 + 3) % 3 + 1; }

T x(int i) { return T::letter(i - 1); }
T z(int h) { return x(h) * x(4) - kQ1 * (x(4) * x(h)); }
T u(int i, int j) { return x(i) * z(j) + kQ1 * (z(wrap3(2 * i - j)) * x(i)); }
T u12413() { return u(1, 2) * u(1, 3) + kOmega * kOmega * (u(1, 3) * u(1, 2)); }
T z4() { return x(4).pow(6); }
std::vector<T> z124134_factors() {
  T p = u12413();
  return {p, p, p};
}

const std::string& top_family() {
  static const std::string name = "cube of u12413";
  return name;
}

Hv1Relations relations() {
  Hv1Relations r;
  auto& g = r.minimal;
  for (int i = 1; i <= 3; ++i) g.push_back(element("x_i^2", "x" + std::to_string(i) + "^2", x(i) * x(i)));
  for (int i = 2; i <= 3; ++i)
    g.push_back(element("cyclic sums", "x1x" + std::to_string(i) + " cyclic sum",
                        x(1) * x(i) + x(5 - i) * x(1) + x(i) * x(5 - i)));
  g.push_back(element("x4^6", "x4^6", z4()));
  {
    Relation<Scalar> top = Relation<Scalar>::product(top_family(), z124134_factors());
    g.push_back(make(top_family(), "(u12 u13 + w^2 u13 u12)^3", std::move(top)));
  }
  for (int i = 2; i <= 3; ++i) {
    int k = wrap3(2 - i);
    g.push_back(element("u_i1 = w u_1k", "u" + std::to_string(i) + "1 - w u1" + std::to_string(k),
                        u(i, 1) - kOmega * u(1, k)));
  }
  for (int h = 1; h <= 3; ++h)
    g.push_back(element("x4 z_h link", "x4 z" + std::to_string(h) + " - q2 z" + std::to_string(h) + " x4",
                        x(4) * z(h) - kQ2 * (z(h) * x(4))));

  auto& d = r.derived;
  for (int h = 1; h <= 3; ++h) d.push_back(element("z_h^2", "z" + std::to_string(h) + "^2", z(h) * z(h)));
  d.push_back(element("z cyclic sums", "z1z2 cyclic sum", z(1) * z(2) + z(3) * z(1) + z(2) * z(3)));
  d.push_back(element("z cyclic sums", "z2z1 cyclic sum", z(2) * z(1) + z(1) * z(3) + z(3) * z(2)));
  for (int j = 2; j <= 3; ++j) d.push_back(element("u_1j^2", "u1" + std::to_string(j) + "^2", u(1, j) * u(1, j)));
  for (int i = 2; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      d.push_back(element("u_ij = w^m u_1k", "u" + std::to_string(i) + std::to_string(j) + " reduction",
                          u(i, j) - omega_pow((j - i) * (1 - i)) * u(1, wrap3(j - i + 1))));
    }
  for (int i = 1; i <= 3; ++i)
    for (int j = 2; j <= 3; ++j)
      d.push_back(element("x_i u_1j link", "x" + std::to_string(i) + " u1" + std::to_string(j) + " link",
                          x(i) * u(1, j) - kQ1 * omega_pow((i + 2) * (1 - j)) * (u(1, 5 - j) * x(i))));
  for (int j = 2; j <= 3; ++j)
    for (int h = 1; h <= 3; ++h)
      d.push_back(element("u_1j z_h link", "u1" + std::to_string(j) + " z" + std::to_string(h) + " link",
                          u(1, j) * z(h) - kQ1 * (z(wrap3(j + h - 1)) * u(1, j))));

  for (const auto& rel : g)
    if (rel.family != "x4^6" && rel.family != top_family()) r.distinguished.push_back(rel);
  return r;
}

std::vector<int> default_precedence() { return {3, 0, 1, 2}; }

Presentation<Scalar> presentation(const std::vector<Hv1Relation>& rels, const PresentationOptions& o) {
  Presentation<Scalar> p = Presentation<Scalar>::make(4);
  p.order = MonomialOrder({1, 1, 1, 1}, o.precedence);
  if (o.use_grading) p.grading = Grading::enveloping({0, 1, 2, 3}, o.gamma_mod, o.zeta_mod, o.drop_nu);
  for (const auto& r : rels) p.relations.push_back(r.relation);
  return p;
}

std::vector<Hv1Relation> without_family(const std::vector<Hv1Relation>& rels, const std::string& family) {
  std::vector<Hv1Relation> out;
  for (const auto& r : rels)
    if (r.family != family) out.push_back(r);
  return out;
}

Presentation<Scalar> v1_presentation() {
  Presentation<Scalar> p = Presentation<Scalar>::make(3);
  auto add = [&](const T& t) { p.relations.push_back(Relation<Scalar>::element("r", t, p.order)); };
  for (int i = 1; i <= 3; ++i) add(x(i) * x(i));
  add(x(1) * x(2) + x(3) * x(1) + x(2) * x(3));
  add(x(1) * x(3) + x(2) * x(1) + x(3) * x(2));
  p.grading = Grading::enveloping({0, 1, 2});
  return p;
}

Presentation<Scalar> v2_presentation() {
  Presentation<Scalar> p = Presentation<Scalar>::make(1, {}, {"x4"});
  p.relations.push_back(Relation<Scalar>::element("x4^6", T::letter(0).pow(6), p.order));
  return p;
}

Presentation<Scalar> v12_presentation() {
  // Same braiding shape as V1, generators of weight two.
  Presentation<Scalar> p = v1_presentation();
  p.names = {"z1", "z2", "z3"};
  p.order = MonomialOrder({2, 2, 2}, {0, 1, 2});
  return p;
}

Presentation<Scalar> v112_presentation() {
  Presentation<Scalar> p = Presentation<Scalar>::make(2, {}, {"u12", "u13"});
  p.order = MonomialOrder({3, 3}, {0, 1});
  T a = T::letter(0), b = T::letter(1);
  p.relations.push_back(Relation<Scalar>::element("u12^2", a * a, p.order));
  p.relations.push_back(Relation<Scalar>::element("u13^2", b * b, p.order));
  T c = a * b + kOmega * kOmega * (b * a);
  p.relations.push_back(Relation<Scalar>::product("cube", {c, c, c}));
  return p;
}

std::vector<int64_t> poly_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<int64_t> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<int64_t> fk3_series() { return {1, 3, 4, 3, 1}; }

std::vector<int64_t> stretch(const std::vector<int64_t>& a, int k) {
  if (a.empty()) return {};
  std::vector<int64_t> out((a.size() - 1) * static_cast<size_t>(k) + 1, 0);
  for (size_t i = 0; i < a.size(); ++i) out[i * static_cast<size_t>(k)] = a[i];
  return out;
}

std::vector<int64_t> factorized_series() {
  std::vector<int64_t> v2(6, 1);
  std::vector<int64_t> v12 = stretch(fk3_series(), 2);
  std::vector<int64_t> v112 = poly_mul(poly_mul({1, 0, 0, 1}, {1, 0, 0, 1}), stretch({1, 1, 1}, 6));
  return poly_mul(poly_mul(poly_mul(v2, v12), v112), fk3_series());
}

std::vector<DegreeRow> degree_table(const Hv1Relations& r) {
  // Expected bidegrees and group degrees per relation, in list order.
  auto g = [](int i) { return gen(i); };
  std::vector<std::pair<std::pair<int, int>, EnvelopingElement>> expected;
  for (int i = 1; i <= 3; ++i) expected.push_back({{2, 0}, g(i).pow(2)});
  for (int i = 2; i <= 3; ++i) expected.push_back({{2, 0}, g(1) * g(i)});
  expected.push_back({{0, 6}, g(4).pow(6)});
  expected.push_back({{12, 6}, g(1).pow(12) * g(4).pow(6)});
  for (int i = 2; i <= 3; ++i) expected.push_back({{2, 1}, g(1) * g(5 - i) * g(4)});
  for (int h = 1; h <= 3; ++h) expected.push_back({{1, 2}, g(h) * g(4).pow(2)});
  std::vector<DegreeRow> rows;
  for (size_t k = 0; k < r.minimal.size(); ++k) {
    const auto& rel = r.minimal[k];
    DegreeRow row{rel.name, rel.bidegree, {}, rel.group_degree, {}};
    if (k < expected.size()) {
      row.expected_bidegree = expected[k].first;
      row.expected_group_degree = expected[k].second;
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- PBW words

std::vector<T> PbwWord::factors() const {
  std::vector<T> f;
  for (int k = 0; k < n4; ++k) f.push_back(x(4));
  if (z_bracket) {
    if (nz[0]) f.push_back(z(1));
    f.push_back(z(2));
    f.push_back(z(1));
    if (nz[2]) f.push_back(z(3));
  } else {
    for (int h = 1; h <= 3; ++h)
      if (nz[static_cast<size_t>(h - 1)]) f.push_back(z(h));
  }
  if (n124) f.push_back(u(1, 2));
  for (int k = 0; k < n124134; ++k) f.push_back(u12413());
  if (n134) f.push_back(u(1, 3));
  if (x_bracket) {
    if (nx[0]) f.push_back(x(1));
    f.push_back(x(2));
    f.push_back(x(1));
    if (nx[2]) f.push_back(x(3));
  } else {
    for (int i = 1; i <= 3; ++i)
      if (nx[static_cast<size_t>(i - 1)]) f.push_back(x(i));
  }
  return f;
}

int PbwWord::degree() const {
  auto count = [](bool bracket, const std::array<int, 3>& n) { return bracket ? n[0] + 2 + n[2] : n[0] + n[1] + n[2]; };
  return n4 + 2 * count(z_bracket, nz) + 3 * (n124 + n134) + 6 * n124134 + count(x_bracket, nx);
}

namespace {

// Choices for one bracketed factor: eight plain monomials, then four bracket ones.
std::vector<std::pair<bool, std::array<int, 3>>> bracket_choices() {
  std::vector<std::pair<bool, std::array<int, 3>>> out;
  for (int m = 0; m < 8; ++m) out.push_back({false, {m & 1, (m >> 1) & 1, (m >> 2) & 1}});
  for (int m = 0; m < 4; ++m) out.push_back({true, {m & 1, 0, (m >> 1) & 1}});
  return out;
}

}  // namespace

std::vector<PbwWord> pbw_words() {
  std::vector<PbwWord> out;
  auto br = bracket_choices();
  for (int n4 = 0; n4 < 6; ++n4)
    for (const auto& zc : br)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 2; ++c)
            for (const auto& xc : br) {
              PbwWord w;
              w.n4 = n4;
              w.z_bracket = zc.first;
              w.nz = zc.second;
              w.n124 = a;
              w.n124134 = b;
              w.n134 = c;
              w.x_bracket = xc.first;
              w.nx = xc.second;
              out.push_back(w);
            }
  return out;
}

int64_t Checks::pbw_count() { return static_cast<int64_t>(pbw_words().size()); }

// ---------------------------------------------------------------- checks

using GB = GroebnerBasis<Scalar>;
using Vec = GB::Vec;

struct Hv1Context {
  CheckOptions opt;
  Hv1Relations rels = relations();
  BraidedVectorSpace<Scalar> V = hv1_space();
  NicholsOracle<Scalar> oracle{hv1_space()};
  std::optional<GB> full, no_top, tilde;
  std::mutex m;

  CompletionOptions completion() const {
    CompletionOptions c;
    c.jobs = opt.jobs;
    c.deadline = opt.deadline;
    return c;
  }
  const GB& get(std::optional<GB>& slot, const std::vector<Hv1Relation>& rs, int cap) {
    std::lock_guard lock(m);
    if (!slot) slot.emplace(complete(presentation(rs), cap, completion()));
    return *slot;
  }
};

namespace {

nlohmann::json series_json(const std::vector<int64_t>& v) { return nlohmann::json(v); }

std::vector<int64_t> padded(std::vector<int64_t> v, size_t n) {
  v.resize(n, 0);
  return v;
}

void require_complete(const GB& gb, int needed, CheckReport& r) {
  if (gb.completed_through() < needed && !gb.finite_certified())
    throw CapTooSmall("completion reached degree " + std::to_string(gb.completed_through()) + ", needed " +
                      std::to_string(needed));
  (void)r;
}

// Tensor square over normal-word ids.
using Square = std::map<std::pair<uint32_t, uint32_t>, Scalar>;

void add_to(Square& s, uint32_t a, uint32_t b, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = s.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  }
}

Square reduce_square(const GB& gb, const TensorSquare<Scalar>& t) {
  Square out;
  for (const auto& [k, c] : t.terms()) {
    Vec a = gb.to_vec(T::word(k.first)), b = gb.to_vec(T::word(k.second));
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b) add_to(out, i, j, c * ci * cj);
  }
  return out;
}

// (a (x) b)(c (x) d) = a (g_b . c) (x) b d, legs reduced.
Square mul_square(const GB& gb, const BraidedVectorSpace<Scalar>& V, const Square& A, const Square& B) {
  Square out;
  std::map<std::pair<uint32_t, Word>, Vec> left_memo;
  std::map<std::pair<uint32_t, uint32_t>, Vec> right_memo;
  for (const auto& [ka, ca] : A)
    for (const auto& [kb, cb] : B) {
      auto [k, moved] = V.act_by_word(gb.normal_word(ka.second), gb.normal_word(kb.first));
      auto lkey = std::make_pair(ka.first, moved);
      auto lit = left_memo.find(lkey);
      if (lit == left_memo.end()) lit = left_memo.emplace(lkey, gb.mul_tensor(gb.unit(ka.first), T::word(moved))).first;
      auto rkey = std::make_pair(ka.second, kb.second);
      auto rit = right_memo.find(rkey);
      if (rit == right_memo.end())
        rit = right_memo.emplace(rkey, gb.mul_tensor(gb.unit(ka.second), T::word(gb.normal_word(kb.second)))).first;
      Scalar c = ca * cb * k;
      for (const auto& [i, ci] : lit->second)
        for (const auto& [j, cj] : rit->second) add_to(out, i, j, c * ci * cj);
    }
  return out;
}

T act_power(const BraidedVectorSpace<Scalar>& V, int letter, const T& a) { return V.act(letter, a); }

}  // namespace

bool primitive_modulo(const GB& gb, const BraidedVectorSpace<Scalar>& V, const std::vector<T>& factors) {
  Square d;
  add_to(d, 0, 0, Scalar::one());
  for (const T& f : factors) d = mul_square(gb, V, d, reduce_square(gb, coproduct(V, f)));
  Vec prod = gb.to_vec(T::one());
  for (const T& f : factors) prod = gb.mul_tensor(prod, f);
  Square expected;
  for (const auto& [id, c] : prod) {
    add_to(expected, id, 0, c);
    add_to(expected, 0, id, c);
  }
  return d == expected;
}

Checks::Checks(CheckOptions o) : ctx_(std::make_unique<Hv1Context>()) { ctx_->opt = std::move(o); }
Checks::~Checks() = default;

const Hv1Relations& Checks::rels() const { return ctx_->rels; }

const GB& Checks::nichols_basis() { return ctx_->get(ctx_->full, ctx_->rels.minimal, ctx_->opt.max_degree); }

const GB& Checks::without_top_basis() {
  return ctx_->get(ctx_->no_top, without_family(ctx_->rels.minimal, top_family()), 18);
}

const GB& Checks::prenichols_basis() {
  return ctx_->get(ctx_->tilde, ctx_->rels.distinguished, ctx_->opt.prenichols_degree);
}

CheckReport Checks::relation_table() {
  return timed_check("relation degree table", [&](CheckReport& r) {
    const auto& R = ctx_->rels;
    r.require(R.minimal.size() == 12, "minimal set has twelve relations", R.minimal.size());
    std::set<std::string> fams;
    for (const auto& rel : R.minimal) fams.insert(rel.family);
    r.require(fams.size() == 6, "minimal set has six families", fams.size());
    r.require(R.distinguished.size() == 10, "distinguished set has ten relations", R.distinguished.size());
    for (const auto& row : degree_table(R))
      r.require(row.ok(), "degree of " + row.name,
                {{"bidegree", {row.bidegree.first, row.bidegree.second}}, {"group_degree", row.group_degree.to_string()}});
    // No relation has the degree of a generator, and equal bidegrees never share a group degree.
    for (const auto& rel : R.minimal) {
      bool distinct = true;
      for (int i = 0; i < 4; ++i) distinct = distinct && !(rel.group_degree == hv1_generator(i));
      r.require(distinct, "group degree of " + rel.name + " differs from every generator degree");
    }
    // Relations sharing bidegree and group degree must still be linearly
    // independent; the squares x_i^2 all have degree gamma^2.
    std::map<std::string, std::vector<const Hv1Relation*>> classes;
    for (const auto& rel : R.minimal)
      classes[std::to_string(rel.bidegree.first) + "," + std::to_string(rel.bidegree.second) + " " +
              rel.group_degree.to_string()]
          .push_back(&rel);
    for (const auto& [key, members] : classes) {
      if (members.size() < 2) continue;
      Presentation<Scalar> p = Presentation<Scalar>::make(4);
      for (const auto* m : members) p.relations.push_back(m->relation);
      int deg = members.front()->degree();
      int64_t words = 1;
      for (int k = 0; k < deg; ++k) words *= 4;
      int64_t rank = words - brute_force_dimensions(p, deg).back();
      std::string names;
      for (const auto* m : members) names += (names.empty() ? "" : ", ") + m->name;
      r.notes.push_back("shared degree " + key + ": " + names);
      r.require(rank == static_cast<int64_t>(members.size()), "relations of degree " + key + " are linearly independent",
                rank);
    }
    // Homogeneity of every listed element, word by word; the cube via its factor.
    auto degree_of = [](const T& t) -> std::optional<std::pair<EnvelopingElement, std::pair<int, int>>> {
      std::optional<std::pair<EnvelopingElement, std::pair<int, int>>> out;
      for (const auto& [w, c] : t.terms()) {
        EnvelopingElement g;
        int a = 0, cnt4 = 0;
        for (size_t k = 0; k < w.size(); ++k) {
          g = g * hv1_generator(letter_at(w, k));
          (letter_at(w, k) == 3 ? cnt4 : a) += 1;
        }
        auto here = std::make_pair(g, std::make_pair(a, cnt4));
        if (out && *out != here) return std::nullopt;
        out = here;
      }
      return out;
    };
    auto homogeneous = [&](const Hv1Relation& rel) {
      if (rel.family == top_family()) {
        auto d = degree_of(u12413());
        return d && d->first.pow(3) == rel.group_degree &&
               std::make_pair(3 * d->second.first, 3 * d->second.second) == rel.bidegree;
      }
      auto d = degree_of(rel.relation.expand());
      return d && d->first == rel.group_degree && d->second == rel.bidegree;
    };
    for (const auto* set : {&R.minimal, &R.derived})
      for (const auto& rel : *set) r.require(homogeneous(rel), rel.name + " is homogeneous");
  });
}

CheckReport Checks::relations_in_nichols() {
  return timed_check("relations hold in the Nichols algebra", [&](CheckReport& r) {
    for (const auto* set : {&ctx_->rels.minimal, &ctx_->rels.derived})
      for (const auto& rel : *set) {
        if (rel.family == top_family()) continue;
        r.require(ctx_->oracle.member(rel.relation.expand()), rel.name);
      }
    // The cube: every derivation of it lies in the ideal of the other relations,
    // which the step above places inside the Nichols ideal.
    const GB& gb = without_top_basis();
    require_complete(gb, 17, r);
    const T p = u12413();
    for (int i = 0; i < 4; ++i) {
      T dp = skew_derivation(ctx_->V, i, p), gp = act_power(ctx_->V, i, p);
      T sum = gb.normal_form_product({p, p, dp}) + gb.normal_form_product({p, dp, gp}) +
              gb.normal_form_product({dp, gp, gp});
      r.require(sum.is_zero(), "derivation " + std::to_string(i + 1) + " of the cube vanishes modulo the other relations");
    }
    for (int i = 2; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        if (i != j) {
          T d = u(i, j) - omega_pow((j - i) * (1 - i)) * u(1, wrap3(j - i + 1));
          r.require(ctx_->oracle.member(d), "u" + std::to_string(i) + std::to_string(j) + " rewrites to u1k");
        }
  });
}

CheckReport Checks::dimension() {
  return timed_check("Nichols algebra dimension", [&](CheckReport& r) {
    const GB& gb = nichols_basis();
    r.require(gb.finite_certified(), "finiteness certificate (empty degree reached)", gb.completed_through());
    if (!gb.finite_certified()) {
      r.status = Status::Unknown;
      return;
    }
    auto h = gb.hilbert(gb.completed_through());
    r.hilbert = h;
    auto expected = factorized_series();
    r.require(*h.total == 10368, "total dimension 10368", *h.total);
    r.require(10368 == 81 * 128, "10368 = 3^4 2^7");
    size_t n = std::max(h.coefficients.size(), expected.size());
    r.require(padded(h.coefficients, n) == padded(expected, n), "Hilbert series equals the product of factor series",
              {{"computed", series_json(h.coefficients)}, {"product", series_json(expected)}});
    int top = 0;
    for (size_t d = 0; d < h.coefficients.size(); ++d)
      if (h.coefficients[d] > 0) top = static_cast<int>(d);
    r.require(top == 35, "top degree 35", top);
    r.require(gb.hilbert_by_automaton(gb.completed_through()) == h.coefficients, "automaton count agrees with tables");
    r.notes.push_back("coefficients kept symbolic in q1; rules " + std::to_string(gb.rules().size()));
  });
}

CheckReport Checks::pbw() {
  return timed_check("PBW basis", [&](CheckReport& r) {
    const GB& gb = nichols_basis();
    if (!gb.finite_certified()) throw CapTooSmall("Nichols completion has no finiteness certificate");
    auto words = pbw_words();
    r.require(words.size() == 10368, "PBW enumeration has 10368 words", words.size());
    PbwWord empty;
    r.require(empty.factors().empty() && gb.normal_form_product(empty.factors()) == T::one(),
              "word with all exponents zero is 1");
    const int top = gb.completed_through();
    std::vector<std::vector<Vec>> by_degree(static_cast<size_t>(top) + 1);
    // Prefix sharing: words differing only in the trailing x letters share a prefix.
    std::map<std::string, Vec> memo;
    auto nf = [&](const PbwWord& w) {
      PbwWord head = w;
      head.x_bracket = false;
      head.nx = {0, 0, 0};
      std::string key = std::to_string(head.n4) + (head.z_bracket ? "b" : "p") + std::to_string(head.nz[0]) +
                        std::to_string(head.nz[1]) + std::to_string(head.nz[2]) + std::to_string(head.n124) +
                        std::to_string(head.n124134) + std::to_string(head.n134);
      auto it = memo.find(key);
      if (it == memo.end()) {
        Vec v = gb.unit(0);
        for (const auto& t : head.factors()) v = gb.mul_tensor(v, t);
        it = memo.emplace(key, std::move(v)).first;
      }
      PbwWord tail;
      tail.x_bracket = w.x_bracket;
      tail.nx = w.nx;
      Vec v = it->second;
      for (const auto& t : tail.factors()) v = gb.mul_tensor(v, t);
      return v;
    };
    for (const auto& w : words) {
      int d = w.degree();
      if (d > top) {
        r.require(false, "PBW word degree within completion", d);
        continue;
      }
      by_degree[static_cast<size_t>(d)].push_back(nf(w));
    }
    auto h = gb.hilbert(top);
    std::vector<int64_t> counts, ranks;
    for (int d = 0; d <= top; ++d) {
      const auto& vs = by_degree[static_cast<size_t>(d)];
      counts.push_back(static_cast<int64_t>(vs.size()));
      // Rank over the normal words of degree d.
      uint32_t base = gb.first_id(d);
      size_t width = gb.normal_word_count(d);
      std::vector<std::optional<Vec>> pivot(width);
      int64_t rank = 0;
      for (Vec v : vs) {
        for (auto& [id, c] : v) id -= base;
        while (!v.empty() && pivot[v.front().first]) {
          const Vec& p = *pivot[v.front().first];
          Scalar c = v.front().second;
          Vec out;
          size_t i = 0, j = 0;
          while (i < v.size() || j < p.size()) {
            if (j == p.size() || (i < v.size() && v[i].first < p[j].first)) out.push_back(v[i++]);
            else if (i == v.size() || p[j].first < v[i].first) { out.emplace_back(p[j].first, -(c * p[j].second)); ++j; }
            else {
              Scalar s = v[i].second - c * p[j].second;
              if (!s.is_zero()) out.emplace_back(v[i].first, s);
              ++i;
              ++j;
            }
          }
          v = std::move(out);
        }
        if (v.empty()) continue;
        if (!v.front().second.is_unit()) throw CoefficientNotInvertible("non-monomial pivot in PBW rank");
        Scalar inv = v.front().second.inverse();
        for (auto& [id, c] : v) c = c * inv;
        pivot[v.front().first] = std::move(v);
        ++rank;
      }
      ranks.push_back(rank);
    }
    r.require(counts == h.coefficients, "PBW words per degree equal Hilbert coefficients",
              {{"pbw", series_json(counts)}, {"hilbert", series_json(h.coefficients)}});
    r.require(ranks == h.coefficients, "PBW normal forms are independent in every degree", series_json(ranks));
  });
}

CheckReport Checks::minimality() {
  return timed_check("minimality of the presentation", [&](CheckReport& r) {
    const auto& G = ctx_->rels.minimal;
    for (const auto& row : degree_table(ctx_->rels)) r.require(row.ok(), "table row " + row.name);
    auto survives = [&](const std::vector<Hv1Relation>& rest, const Hv1Relation& rel) {
      if (rel.family == top_family()) {
        // The family has one member, so both removal modes use the same basis.
        const GB& gb = without_top_basis();
        require_complete(gb, 18, r);
        return !gb.normal_form_product(z124134_factors()).is_zero();
      }
      GB gb = complete(presentation(rest), rel.degree(), ctx_->completion());
      require_complete(gb, rel.degree(), r);
      return !gb.normal_form(rel.relation.expand()).is_zero();
    };
    if (ctx_->opt.elementwise_minimality) {
      for (size_t k = 0; k < G.size(); ++k) {
        std::vector<Hv1Relation> rest;
        for (size_t j = 0; j < G.size(); ++j)
          if (j != k) rest.push_back(G[j]);
        r.require(survives(rest, G[k]), G[k].name + " is not generated by the others");
      }
      r.notes.push_back("element-wise removal");
    } else {
      std::vector<std::string> families;
      for (const auto& rel : G)
        if (std::find(families.begin(), families.end(), rel.family) == families.end()) families.push_back(rel.family);
      for (const auto& fam : families) {
        auto rest = without_family(G, fam);
        for (const auto& rel : G)
          if (rel.family == fam) r.require(survives(rest, rel), rel.name + " is not generated by the other families");
      }
      r.notes.push_back("family-wise removal");
    }
  });
}

CheckReport Checks::prenichols() {
  return timed_check("distinguished pre-Nichols algebra", [&](CheckReport& r) {
    const int cap = ctx_->opt.prenichols_degree;
    const GB& gb = prenichols_basis();
    require_complete(gb, cap, r);
    auto h = gb.hilbert(cap);
    r.hilbert = h;
    // Hilb(B) / ((1 - t^6)(1 - t^18)), truncated.
    std::vector<int64_t> central(static_cast<size_t>(cap) + 1, 0);
    for (int m = 0; 6 * m <= cap; ++m)
      for (int n = 0; 6 * m + 18 * n <= cap; ++n) central[static_cast<size_t>(6 * m + 18 * n)] += 1;
    auto expected = padded(poly_mul(factorized_series(), central), static_cast<size_t>(cap) + 1);
    r.require(h.coefficients == expected, "Hilbert series is the Nichols series times the central factors",
              {{"computed", series_json(h.coefficients)}, {"expected", series_json(expected)}});
    auto nichols = factorized_series();
    bool low = true;
    for (int d = 0; d < 6; ++d) low = low && h.coefficients[static_cast<size_t>(d)] == nichols[static_cast<size_t>(d)];
    r.require(low, "degrees 0..5 agree with the Nichols algebra");
    if (cap >= 6) r.require(h.coefficients[6] == nichols[6] + 1, "degree 6 gains exactly x4^6");
    for (const auto& rel : ctx_->rels.derived)
      r.require(gb.normal_form(rel.relation.expand()).is_zero(), rel.name + " holds in the pre-Nichols algebra");
    // Growth sanity check: first differences stop increasing over the top
    // window, so coefficients grow at most linearly and partial sums quadratically.
    if (cap >= kGrowthWindow + 1) {
      std::vector<int64_t> diffs;
      for (int d = cap - kGrowthWindow; d < cap; ++d)
        diffs.push_back(h.coefficients[static_cast<size_t>(d) + 1] - h.coefficients[static_cast<size_t>(d)]);
      bool ok = true;
      for (size_t k = 1; k < diffs.size(); ++k) ok = ok && diffs[k] <= diffs[k - 1];
      r.require(ok, "coefficients grow at most linearly at the top degrees", diffs);
    }
  });
}

CheckReport Checks::center() {
  return timed_check("central Hopf subalgebra", [&](CheckReport& r) {
    const GB& gb = prenichols_basis();
    require_complete(gb, 24, r);
    const auto& V = ctx_->V;
    const T Z4 = z4();
    const T P = u12413();
    for (int i = 0; i < 4; ++i)
      r.require(gb.normal_form(ad_c(V, i, Z4)).is_zero(), "ad x" + std::to_string(i + 1) + " kills z4");
    for (int i = 1; i <= 3; ++i)
      r.require(gb.normal_form(x(i) * Z4 - kQ1.pow(6) * (Z4 * x(i))).is_zero(),
                "x" + std::to_string(i) + " z4 = q1^6 z4 x" + std::to_string(i));
    for (int i = 0; i < 3; ++i) {
      T gp = V.act(i, P);
      T lhs = gb.normal_form_product({T::letter(i), P, P, P}) - gb.normal_form_product({gp, gp, gp, T::letter(i)});
      r.require(lhs.is_zero(), "ad x" + std::to_string(i + 1) + " kills z124134");
    }
    T x4z = gb.normal_form_product({x(4), P, P, P}) - kQ2.pow(12) * gb.normal_form_product({P, P, P, x(4)});
    r.require(x4z.is_zero(), "x4 z124134 = q2^12 z124134 x4");
    T comm = gb.normal_form_product({Z4, P, P, P}) - kQ2.pow(72) * gb.normal_form_product({P, P, P, Z4});
    r.require(comm.is_zero(), "z4 z124134 = q2^72 z124134 z4");
    r.require(is_primitive(V, Z4), "z4 is primitive in the tensor algebra");
    r.require(primitive_modulo(gb, V, {P, P, P}), "z124134 is primitive modulo the distinguished relations");
    for (int j = 2; j <= 3; ++j) {
      T lhs = ad_c(V, 3, u(1, j));
      T rhs = kQ2 * kOmega * kOmega * (z(1) * z(j)) - kQ2 * (z(5 - j) * z(1));
      r.require(gb.normal_form(lhs - rhs).is_zero(), "ad x4 on u1" + std::to_string(j));
      T lhs2 = u(1, j) * x(4) + kQ1 * kQ1 * kOmega * kOmega * (x(4) * u(1, j));
      T rhs2 = kQ2.inverse() * (z(1) * z(j)) + kQ1 * (z(5 - j) * z(1));
      r.require(gb.normal_form(lhs2 - rhs2).is_zero(), "u1" + std::to_string(j) + " x4 exchange");
    }
  });
}

CheckReport Checks::dual_iso() {
  return timed_check("dual braided vector space", [&](CheckReport& r) {
    const auto& V = ctx_->V;
    auto W = dual_space(V);
    r.require(same_braiding(V, W), "x_i -> f_i is an isomorphism of braided vector spaces");
    // Expected action of inverse generators on the dual basis.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Scalar c;
        int t;
        if (i < 3 && j < 3) {
          c = -Scalar::one();
          t = kThirdIndex[static_cast<size_t>(i)][static_cast<size_t>(j)];
        } else if (i < 3) {
          c = kQ1;
          t = 3;
        } else if (j < 3) {
          c = kQ2;
          t = j;
        } else {
          c = -(kOmega * kOmega);
          t = 3;
        }
        r.require(W.coeff(i, j) == c && W.target(i, j) == t,
                  "dual action entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
  });
}

namespace {

CheckReport sub_algebra(const std::string& name, const Presentation<Scalar>& p, int cap, int64_t dim,
                        const std::vector<int64_t>& series) {
  return timed_check(name, [&](CheckReport& r) {
    GB gb = complete(p, cap);
    r.require(gb.finite_certified(), "finiteness certificate");
    if (!gb.finite_certified()) return;
    auto h = gb.hilbert(gb.completed_through());
    r.hilbert = h;
    r.require(*h.total == dim, "dimension " + std::to_string(dim), *h.total);
    size_t n = std::max(h.coefficients.size(), series.size());
    r.require(padded(h.coefficients, n) == padded(series, n), "Hilbert series", series_json(h.coefficients));
  });
}

}  // namespace

CheckReport Checks::fk3() { return sub_algebra("Fomin-Kirillov algebra on three letters", v1_presentation(), 10, 12, fk3_series()); }
CheckReport Checks::v2() { return sub_algebra("Nichols algebra of x4", v2_presentation(), 10, 6, std::vector<int64_t>(6, 1)); }
CheckReport Checks::v12() {
  CheckReport r = sub_algebra("Nichols algebra of the z span", v12_presentation(), 12, 12, stretch(fk3_series(), 2));
  const auto& V = ctx_->V;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      T lhs = V.act_by_word(make_word({i - 1, 3}), z(j));
      r.require(lhs == -z(wrap3(2 * i - j)), "braiding of z" + std::to_string(i) + " past z" + std::to_string(j));
    }
  return r;
}
CheckReport Checks::v112() {
  auto series = poly_mul(poly_mul({1, 0, 0, 1}, {1, 0, 0, 1}), stretch({1, 1, 1}, 6));
  CheckReport r = sub_algebra("Nichols algebra of the u span", v112_presentation(), 24, 12, series);
  const auto& V = ctx_->V;
  const Scalar m[2][2] = {{-Scalar::one(), -(kOmega * kOmega)}, {-(kOmega * kOmega), -Scalar::one()}};
  for (int a = 2; a <= 3; ++a)
    for (int b = 2; b <= 3; ++b) {
      T moved = V.act_by_word(make_word({0, a - 1, 3}), u(1, b));
      r.require(ctx_->oracle.member(moved - m[a - 2][b - 2] * u(1, b)),
                "diagonal braiding entry (u1" + std::to_string(a) + ", u1" + std::to_string(b) + ")");
    }
  return r;
}

CheckReport Checks::sub_nichols() {
  CheckReport r;
  r.check = "sub-Nichols algebras";
  r.status = Status::Pass;
  for (auto part : {fk3(), v2(), v12(), v112()}) {
    r.require(part.passed(), part.check, part.to_json());
    r.runtime += part.runtime;
  }
  return r;
}

}  // namespace nichols::hv1
