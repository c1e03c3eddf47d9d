#include "nichols/engine.hpp"

#include "nichols/braided_parse.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <thread>

namespace nichols {

// ---------------------------------------------------------------- orders

std::vector<int> MonomialOrder::identity(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

MonomialOrder::MonomialOrder(std::vector<int> weights, const std::vector<int>& precedence)
    : weight_(std::move(weights)), rank_(weight_.size(), -1) {
  if (precedence.size() != weight_.size()) throw std::invalid_argument("letter precedence must list every letter once");
  for (size_t r = 0; r < precedence.size(); ++r) {
    int l = precedence[r];
    if (l < 0 || static_cast<size_t>(l) >= rank_.size() || rank_[static_cast<size_t>(l)] != -1)
      throw std::invalid_argument("letter precedence must be a permutation of the letters");
    rank_[static_cast<size_t>(l)] = static_cast<int>(r);
  }
  for (int w : weight_)
    if (w <= 0) throw std::invalid_argument("letter weights must be positive");
}

int MonomialOrder::weight(const Word& w) const {
  int s = 0;
  for (size_t i = 0; i < w.size(); ++i) s += weight(letter_at(w, i));
  return s;
}

int MonomialOrder::max_weight() const {
  int m = 1;
  for (int w : weight_) m = std::max(m, w);
  return m;
}

bool MonomialOrder::less(const Word& a, const Word& b) const {
  int wa = weight(a), wb = weight(b);
  if (wa != wb) return wa < wb;
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ra = rank(letter_at(a, i)), rb = rank(letter_at(b, i));
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::string MonomialOrder::describe(const std::vector<std::string>& names) const {
  std::vector<int> by_rank(rank_.size());
  for (size_t l = 0; l < rank_.size(); ++l) by_rank[static_cast<size_t>(rank_[l])] = static_cast<int>(l);
  std::string out = "weight, length, lex with ";
  for (size_t r = 0; r < by_rank.size(); ++r) {
    if (r) out += " < ";
    size_t l = static_cast<size_t>(by_rank[r]);
    out += l < names.size() ? names[l] : "x" + std::to_string(l + 1);
  }
  return out;
}

Grading Grading::enveloping(std::vector<int> letter_kind, int a_mod, int c_mod, bool drop_nu) {
  if (a_mod < 0 || c_mod < 0 || (a_mod > 0 && a_mod % 2 != 0))
    throw std::invalid_argument("enveloping grading needs an even gamma modulus");
  Grading g;
  g.name = "enveloping(a mod " + std::to_string(a_mod) + ", c mod " + std::to_string(c_mod) +
           (drop_nu ? ", nu dropped)" : ")");
  // key = b | a << 2 | c << 32
  g.step = [kinds = std::move(letter_kind), a_mod, c_mod, drop_nu](uint64_t key, int letter) -> uint64_t {
    uint64_t b = key & 3u, a = (key >> 2) & 0x3fffffffu, c = key >> 32;
    int kind = kinds.at(static_cast<size_t>(letter));
    if (kind >= 0 && kind < 3) {
      uint64_t b2 = static_cast<uint64_t>((2 * kind) % 3);
      b = drop_nu ? 0 : (b + ((a % 2 == 0) ? b2 : 2 * b2)) % 3;
      a += 1;
      if (a_mod > 0) a %= static_cast<uint64_t>(a_mod);
    } else if (kind == 3) {
      c += 1;
      if (c_mod > 0) c %= static_cast<uint64_t>(c_mod);
    } else {
      throw std::invalid_argument("enveloping grading: letter kind must be 0..3");
    }
    return b | (a << 2) | (c << 32);
  };
  return g;
}

// ---------------------------------------------------------------- relations

template <class K>
Relation<K> Relation<K>::element(std::string name, const Tensor<K>& t, const MonomialOrder& order) {
  int top = -1;
  for (const auto& [w, c] : t.terms()) top = std::max(top, order.weight(w));
  Tensor<K> hi, lo;
  for (const auto& [w, c] : t.terms()) (order.weight(w) == top ? hi : lo).add_term(w, c);
  Relation r;
  r.name = std::move(name);
  if (!hi.is_zero()) r.products.push_back({k_one<K>(), {hi}});
  r.lower = lo;
  return r;
}

template <class K>
Relation<K> Relation<K>::product(std::string name, std::vector<Tensor<K>> factors, Tensor<K> lower) {
  Relation r;
  r.name = std::move(name);
  r.products.push_back({k_one<K>(), std::move(factors)});
  r.lower = std::move(lower);
  return r;
}

template <class K>
int Relation<K>::weight(const MonomialOrder& order) const {
  if (products.empty()) return -1;
  int s = 0;
  for (const auto& f : products.front().second) {
    int m = -1;
    for (const auto& [w, c] : f.terms()) m = std::max(m, order.weight(w));
    if (m < 0) return -1;
    s += m;
  }
  return s;
}

template <class K>
Word Relation<K>::representative() const {
  if (products.empty()) return {};
  Word w;
  for (const auto& f : products.front().second) {
    if (f.is_zero()) return {};
    w += f.terms().begin()->first;
  }
  return w;
}

template <class K>
Tensor<K> Relation<K>::top() const {
  Tensor<K> out;
  for (const auto& [c, factors] : products) {
    Tensor<K> p = Tensor<K>::one();
    for (const auto& f : factors) p = p * f;
    out = out + c * p;
  }
  return out;
}

template <class K>
Presentation<K> Presentation<K>::make(int letters, std::vector<Relation<K>> relations, std::vector<std::string> names) {
  Presentation p;
  p.letters = letters;
  p.names = names.empty() ? default_letter_names(letters) : std::move(names);
  p.relations = std::move(relations);
  p.order = MonomialOrder::natural(letters);
  return p;
}

template <class K>
bool Presentation<K>::is_homogeneous() const {
  for (const auto& r : relations)
    if (!r.lower.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- reports

int64_t HilbertSeries::partial_sum() const { return std::accumulate(coefficients.begin(), coefficients.end(), int64_t{0}); }

nlohmann::json HilbertSeries::to_json() const {
  nlohmann::json j;
  j["coefficients"] = coefficients;
  j["total"] = total ? nlohmann::json(*total) : nlohmann::json(nullptr);
  return j;
}

std::string HilbertSeries::table() const {
  std::ostringstream os;
  os << "degree  dimension\n";
  for (size_t d = 0; d < coefficients.size(); ++d) os << d << "  " << coefficients[d] << "\n";
  os << "total  " << (total ? std::to_string(*total) : std::to_string(partial_sum()) + " (partial)") << "\n";
  return os.str();
}

std::string Dimension::to_string() const {
  switch (kind) {
    case Kind::Finite: return "finite " + std::to_string(value);
    case Kind::Infinite: return "infinite";
    default: return "unknown (completed through degree " + std::to_string(degree) + ")";
  }
}

// ---------------------------------------------------------------- sparse helpers

namespace {

// Dense scratch with a touched list; reused across calls on one thread.
template <class K>
class Accumulator {
 public:
  using Vec = std::vector<std::pair<uint32_t, K>>;

  void add(uint32_t id, const K& c) {
    if (c.is_zero()) return;
    if (id >= flag_.size()) {
      size_t n = std::max<size_t>(id + 1, flag_.size() * 2);
      flag_.resize(n, 0);
      val_.resize(n);
    }
    if (!flag_[id]) {
      flag_[id] = 1;
      touched_.push_back(id);
      val_[id] = c;
    } else {
      val_[id] += c;
    }
  }
  void add_scaled(const Vec& v, const K& c) {
    for (const auto& [id, x] : v) add(id, c * x);
  }
  Vec take() {
    std::sort(touched_.begin(), touched_.end());
    Vec out;
    out.reserve(touched_.size());
    for (uint32_t id : touched_) {
      if (!val_[id].is_zero()) out.emplace_back(id, std::move(val_[id]));
      val_[id] = K();
      flag_[id] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<char> flag_;
  std::vector<K> val_;
  std::vector<uint32_t> touched_;
};

// Nested calls on one thread lease distinct accumulators.
template <class K>
class AccLease {
 public:
  AccLease() {
    auto& pool = stack();
    auto& depth = level();
    if (depth == pool.size()) pool.push_back(std::make_unique<Accumulator<K>>());
    acc_ = pool[depth++].get();
  }
  ~AccLease() { --level(); }
  AccLease(const AccLease&) = delete;
  AccLease& operator=(const AccLease&) = delete;
  Accumulator<K>& operator*() { return *acc_; }
  Accumulator<K>* operator->() { return acc_; }

 private:
  static std::vector<std::unique_ptr<Accumulator<K>>>& stack() {
    static thread_local std::vector<std::unique_ptr<Accumulator<K>>> s;
    return s;
  }
  static size_t& level() {
    static thread_local size_t d = 0;
    return d;
  }
  Accumulator<K>* acc_;
};

// a - c * b for sorted sparse vectors.
template <class K, class Idx>
std::vector<std::pair<Idx, K>> axpy(const std::vector<std::pair<Idx, K>>& a, const K& c,
                                    const std::vector<std::pair<Idx, K>>& b) {
  std::vector<std::pair<Idx, K>> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -(c * b[j].second));
      ++j;
    } else {
      K v = a[i].second - c * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class K>
K checked_inverse(const K& c) {
  if (!FieldTraits<K>::is_unit(c))
    throw CoefficientNotInvertible("pivot coefficient " + to_string(c) + " is not invertible in " +
                                   FieldTraits<K>::name());
  return c.inverse();
}

// Echelon form keyed by leading (smallest) column index.
template <class K>
struct Row {
  std::vector<std::pair<uint32_t, K>> top;
  std::vector<std::pair<uint32_t, K>> low;
};

template <class K>
class Echelon {
 public:
  explicit Echelon(size_t columns) : pivot_(columns) {}
  size_t rank() const { return rank_; }
  size_t columns() const { return pivot_.size(); }
  bool full() const { return rank_ == pivot_.size(); }
  // Returns false when the row reduces to zero; sets collapse if only its
  // lower part survives.
  bool insert(Row<K> r, bool& collapse) {
    while (!r.top.empty()) {
      uint32_t lead = r.top.front().first;
      auto& p = pivot_[lead];
      if (!p) break;
      K c = r.top.front().second;
      r.top = axpy(r.top, c, p->top);
      r.low = axpy(r.low, c, p->low);
    }
    if (r.top.empty()) {
      if (!r.low.empty()) collapse = true;
      return false;
    }
    K inv = checked_inverse(r.top.front().second);
    for (auto& [i, v] : r.top) v = v * inv;
    for (auto& [i, v] : r.low) v = v * inv;
    uint32_t lead = r.top.front().first;
    pivot_[lead] = std::move(r);
    ++rank_;
    return true;
  }
  // Reduces every pivot row against the later pivots.
  void back_substitute() {
    for (size_t col = pivot_.size(); col-- > 0;) {
      if (!pivot_[col]) continue;
      Row<K>& r = *pivot_[col];
      for (size_t k = 1; k < r.top.size();) {
        uint32_t j = r.top[k].first;
        if (pivot_[j]) {
          K c = r.top[k].second;
          r.top = axpy(r.top, c, pivot_[j]->top);
          r.low = axpy(r.low, c, pivot_[j]->low);
        } else {
          ++k;
        }
      }
    }
  }
  const std::optional<Row<K>>& pivot(size_t col) const { return pivot_[col]; }

 private:
  std::vector<std::optional<Row<K>>> pivot_;
  size_t rank_ = 0;
};

}  // namespace

// ---------------------------------------------------------------- basis queries

template <class K>
size_t GroebnerBasis<K>::normal_word_count(int degree) const {
  if (degree < 0) return 0;
  if (degree > completed_) {
    if (finished_) return 0;
    throw CapTooSmall("degree " + std::to_string(degree) + " beyond completed degree " + std::to_string(completed_));
  }
  return start_[static_cast<size_t>(degree) + 1] - start_[static_cast<size_t>(degree)];
}

template <class K>
std::optional<uint32_t> GroebnerBasis<K>::id_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

template <class K>
std::vector<Word> GroebnerBasis<K>::normal_words(int degree) const {
  size_t n = normal_word_count(degree);
  std::vector<Word> out;
  if (n == 0) return out;
  for (uint32_t id = start_[static_cast<size_t>(degree)]; id < start_[static_cast<size_t>(degree) + 1]; ++id)
    out.push_back(words_[id]);
  return out;
}

template <class K>
bool GroebnerBasis<K>::is_normal(const Word& w) const {
  if (order_.weight(w) > completed_ && !finished_)
    throw CapTooSmall("word beyond completed degree " + std::to_string(completed_));
  return index_.count(w) > 0;
}

template <class K>
const typename GroebnerBasis<K>::Vec& GroebnerBasis<K>::right_mul(uint32_t id, int letter) const {
  size_t k = static_cast<size_t>(id) * static_cast<size_t>(n_) + static_cast<size_t>(letter);
  if (k >= rm_ready_.size() || !rm_ready_[k]) {
    static const Vec empty;
    if (finished_) return empty;
    throw CapTooSmall("product reaches beyond completed degree " + std::to_string(completed_));
  }
  return rm_[k];
}

template <class K>
typename GroebnerBasis<K>::Vec GroebnerBasis<K>::mul_letter(const Vec& v, int letter) const {
  AccLease<K> acc;
  for (const auto& [id, c] : v)
    for (const auto& [j, d] : right_mul(id, letter)) acc->add(j, c * d);
  return acc->take();
}

template <class K>
typename GroebnerBasis<K>::Vec GroebnerBasis<K>::mul_tensor(const Vec& v, const Tensor<K>& t) const {
  // Words arrive in lexicographic order, so prefixes are shared via a stack.
  AccLease<K> acc;
  std::vector<Vec> stack{v};
  const Word* prev = nullptr;
  for (const auto& [w, c] : t.terms()) {
    size_t common = 0;
    if (prev)
      while (common < prev->size() && common < w.size() && (*prev)[common] == w[common]) ++common;
    stack.resize(common + 1);
    for (size_t k = common; k < w.size(); ++k) stack.push_back(mul_letter(stack.back(), letter_at(w, k)));
    acc->add_scaled(stack.back(), c);
    prev = &w;
  }
  return acc->take();
}

template <class K>
typename GroebnerBasis<K>::Vec GroebnerBasis<K>::to_vec(const Tensor<K>& a) const {
  return mul_tensor(unit(0), a);
}

template <class K>
Tensor<K> GroebnerBasis<K>::to_tensor(const Vec& v) const {
  Tensor<K> t;
  for (const auto& [id, c] : v) t.add_term(words_[id], c);
  return t;
}

template <class K>
Tensor<K> GroebnerBasis<K>::normal_form(const Tensor<K>& a) const {
  return to_tensor(to_vec(a));
}

template <class K>
Tensor<K> GroebnerBasis<K>::normal_form_product(const std::vector<Tensor<K>>& factors) const {
  Vec v = unit(0);
  for (const auto& f : factors) {
    v = mul_tensor(v, f);
    if (v.empty()) break;
  }
  return to_tensor(v);
}

template <class K>
Tensor<K> GroebnerBasis<K>::reduce_by_rules(const Tensor<K>& a, RewriteStrategy s) const {
  auto cmp = [this](const Word& x, const Word& y) { return order_.less(x, y); };
  std::map<Word, K, decltype(cmp)> work(cmp);
  for (const auto& [w, c] : a.terms()) {
    if (order_.weight(w) > completed_ && !finished_)
      throw CapTooSmall("rewriting beyond completed degree " + std::to_string(completed_));
    work.emplace(w, c);
  }
  size_t max_lead = 0;
  for (const auto& r : rules_) max_lead = std::max(max_lead, r.lead.size());
  Tensor<K> out;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Word w = it->first;
    K c = it->second;
    work.erase(it);
    std::optional<std::pair<size_t, const RewriteRule<K>*>> hit;
    auto try_at = [&](size_t i) {
      for (size_t len = 1; len <= max_lead && i + len <= w.size(); ++len) {
        auto r = rule_index_.find(w.substr(i, len));
        if (r != rule_index_.end()) {
          hit = {i, &rules_[r->second]};
          return true;
        }
      }
      return false;
    };
    if (s == RewriteStrategy::Leftmost) {
      for (size_t i = 0; i < w.size() && !try_at(i); ++i) {
      }
    } else {
      for (size_t i = w.size(); i-- > 0 && !try_at(i);) {
      }
    }
    if (!hit) {
      out.add_term(w, c);
      continue;
    }
    auto [pos, rule] = *hit;
    Word left = w.substr(0, pos), right = w.substr(pos + rule->lead.size());
    for (const auto& [tw, tc] : rule->tail.terms()) {
      Word nw = left + tw + right;
      K nc = c * tc;
      auto [jt, inserted] = work.try_emplace(nw, nc);
      if (!inserted) {
        jt->second += nc;
        if (jt->second.is_zero()) work.erase(jt);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- automaton

namespace {

struct LeadAutomaton {
  std::vector<std::vector<int>> next;
  std::vector<char> dead;

  LeadAutomaton(const std::vector<Word>& leads, int n) {
    next.push_back(std::vector<int>(static_cast<size_t>(n), -1));
    dead.push_back(0);
    for (const auto& w : leads) {
      int s = 0;
      for (size_t i = 0; i < w.size(); ++i) {
        int x = letter_at(w, i);
        if (next[static_cast<size_t>(s)][static_cast<size_t>(x)] < 0) {
          next[static_cast<size_t>(s)][static_cast<size_t>(x)] = static_cast<int>(next.size());
          next.push_back(std::vector<int>(static_cast<size_t>(n), -1));
          dead.push_back(0);
        }
        s = next[static_cast<size_t>(s)][static_cast<size_t>(x)];
      }
      dead[static_cast<size_t>(s)] = 1;
    }
    std::vector<int> fail(next.size(), 0), queue;
    for (int x = 0; x < n; ++x) {
      int& t = next[0][static_cast<size_t>(x)];
      if (t < 0) t = 0;
      else queue.push_back(t);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int s = queue[qi];
      dead[static_cast<size_t>(s)] |= dead[static_cast<size_t>(fail[static_cast<size_t>(s)])];
      for (int x = 0; x < n; ++x) {
        int& t = next[static_cast<size_t>(s)][static_cast<size_t>(x)];
        int f = next[static_cast<size_t>(fail[static_cast<size_t>(s)])][static_cast<size_t>(x)];
        if (t < 0) {
          t = f;
        } else {
          fail[static_cast<size_t>(t)] = f;
          queue.push_back(t);
        }
      }
    }
  }

  bool has_live_cycle() const {
    std::vector<char> color(next.size(), 0);
    std::vector<std::pair<int, int>> st{{0, 0}};
    color[0] = 1;
    while (!st.empty()) {
      auto& [s, x] = st.back();
      if (x == static_cast<int>(next[static_cast<size_t>(s)].size())) {
        color[static_cast<size_t>(s)] = 2;
        st.pop_back();
        continue;
      }
      int t = next[static_cast<size_t>(s)][static_cast<size_t>(x++)];
      if (dead[static_cast<size_t>(t)]) continue;
      if (color[static_cast<size_t>(t)] == 1) return true;
      if (color[static_cast<size_t>(t)] == 0) {
        color[static_cast<size_t>(t)] = 1;
        st.push_back({t, 0});
      }
    }
    return false;
  }
};

}  // namespace

template <class K>
std::vector<int64_t> GroebnerBasis<K>::hilbert_by_automaton(int up_to) const {
  std::vector<Word> leads;
  for (const auto& r : rules_) leads.push_back(r.lead);
  LeadAutomaton a(leads, n_);
  std::vector<std::vector<int64_t>> count(static_cast<size_t>(up_to) + 1, std::vector<int64_t>(a.next.size(), 0));
  count[0][0] = 1;
  std::vector<int64_t> out(static_cast<size_t>(up_to) + 1, 0);
  for (int d = 0; d <= up_to; ++d) {
    for (size_t s = 0; s < a.next.size(); ++s) {
      int64_t c = count[static_cast<size_t>(d)][s];
      if (c == 0) continue;
      out[static_cast<size_t>(d)] += c;
      for (int x = 0; x < n_; ++x) {
        int e = d + order_.weight(x);
        int t = a.next[s][static_cast<size_t>(x)];
        if (e > up_to || a.dead[static_cast<size_t>(t)]) continue;
        count[static_cast<size_t>(e)][static_cast<size_t>(t)] += c;
      }
    }
  }
  return out;
}

template <class K>
bool GroebnerBasis<K>::rules_complete_for_all_degrees() const {
  if (finished_) return true;
  if (!homogeneous_) return false;
  int max_lead = 0;
  for (const auto& r : rules_) max_lead = std::max(max_lead, order_.weight(r.lead));
  return completed_ >= std::max(2 * max_lead - 1, max_relation_weight_);
}

template <class K>
HilbertSeries GroebnerBasis<K>::hilbert(int up_to) const {
  HilbertSeries h;
  for (int d = 0; d <= up_to; ++d) h.coefficients.push_back(static_cast<int64_t>(normal_word_count(d)));
  if (finished_) h.total = static_cast<int64_t>(words_.size());
  return h;
}

template <class K>
Dimension GroebnerBasis<K>::dimension() const {
  Dimension dim;
  dim.degree = completed_;
  if (finished_) {
    dim.kind = Dimension::Kind::Finite;
    dim.value = static_cast<int64_t>(words_.size());
    return dim;
  }
  if (rules_complete_for_all_degrees()) {
    std::vector<Word> leads;
    for (const auto& r : rules_) leads.push_back(r.lead);
    if (LeadAutomaton(leads, n_).has_live_cycle()) {
      dim.kind = Dimension::Kind::Infinite;
    } else {
      int bound = static_cast<int>(LeadAutomaton(leads, n_).next.size()) * order_.max_weight();
      auto h = hilbert_by_automaton(bound);
      dim.kind = Dimension::Kind::Finite;
      dim.value = std::accumulate(h.begin(), h.end(), int64_t{0});
    }
  }
  return dim;
}

// ---------------------------------------------------------------- completion

template <class K>
class Completion {
 public:
  using Vec = typename GroebnerBasis<K>::Vec;

  Completion(const Presentation<K>& p, int cap, const CompletionOptions& o) : p_(p), cap_(cap), opt_(o) {
    gb_.n_ = p.letters;
    gb_.names_ = p.names.empty() ? default_letter_names(p.letters) : p.names;
    gb_.order_ = p.order.letters() == p.letters ? p.order : MonomialOrder::natural(p.letters);
    gb_.grading_ = p.grading;
    gb_.homogeneous_ = p.is_homogeneous();
    for (const auto& r : p.relations) prepare(r);
  }

  GroebnerBasis<K> run() {
    auto t0 = std::chrono::steady_clock::now();
    GroebnerBasis<K>& g = gb_;
    g.words_.push_back(Word());
    g.wdeg_.push_back(0);
    g.key_.push_back(g.grading_.identity);
    g.index_.emplace(Word(), 0);
    g.start_ = {0, 1};
    g.rm_.resize(static_cast<size_t>(g.n_));
    g.rm_ready_.assign(static_cast<size_t>(g.n_), 0);
    g.completed_ = 0;
    int empty_run = 0;
    int last_nonempty = 0;
    for (int d = 1; d <= cap_; ++d) {
      if (opt_.deadline && std::chrono::steady_clock::now() > *opt_.deadline) {
        g.stats_.budget_exhausted = true;
        break;
      }
      if (!degree(d)) {
        g.stats_.budget_exhausted = true;
        break;
      }
      g.completed_ = d;
      if (g.normal_word_count(d) == 0) {
        if (++empty_run >= g.order_.max_weight()) {
          // Filtered relations: every row b * r must still be seen to reduce to zero,
          // and the heaviest such row lives in degree last_nonempty + max relation weight.
          bool all_rows = g.homogeneous_ || d >= last_nonempty + g.max_relation_weight_;
          g.finished_ = all_rows && !g.stats_.collapse_detected;
          if (opt_.stop_when_finite && all_rows) break;
        }
      } else {
        empty_run = 0;
        last_nonempty = d;
      }
    }
    for (size_t i = 0; i < g.rules_.size(); ++i) g.rule_index_.emplace(g.rules_[i].lead, i);
    g.stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return std::move(gb_);
  }

 private:
  struct FactorOp {
    Tensor<K> f;
    bool memo = false;
    mutable std::shared_mutex m;
    mutable std::unordered_map<uint32_t, std::shared_ptr<const Vec>> full;
  };
  struct Term {
    K coeff;
    std::vector<size_t> ops;
  };
  struct Prepared {
    int weight;
    Word rep;
    std::vector<Term> terms;
    Tensor<K> lower;
  };

  size_t op_for(const Tensor<K>& f, bool memo) {
    for (size_t i = 0; i < ops_.size(); ++i)
      if (ops_[i]->f == f) {
        ops_[i]->memo = ops_[i]->memo || memo;
        return i;
      }
    ops_.push_back(std::make_unique<FactorOp>());
    ops_.back()->f = f;
    ops_.back()->memo = memo;
    return ops_.size() - 1;
  }

  void prepare(const Relation<K>& r) {
    const MonomialOrder& ord = gb_.order_;
    Prepared pr;
    pr.weight = r.weight(ord);
    if (pr.weight <= 0) {
      if (!r.lower.is_zero() || pr.weight == 0)
        throw std::invalid_argument("relation '" + r.name + "' has no part of positive weight");
      return;  // zero relation
    }
    pr.rep = r.representative();
    uint64_t key = gb_.grading_.key(pr.rep);
    for (const auto& [c, factors] : r.products) {
      int w = 0;
      Word rep;
      for (const auto& f : factors) {
        int fw = -1;
        for (const auto& [word, coef] : f.terms()) {
          int ww = ord.weight(word);
          if (fw >= 0 && ww != fw)
            throw std::invalid_argument("relation '" + r.name + "' has an inhomogeneous factor");
          fw = ww;
        }
        if (fw < 0) fw = 0;
        w += fw;
        if (!f.is_zero()) rep += f.terms().begin()->first;
      }
      if (w != pr.weight) throw std::invalid_argument("relation '" + r.name + "' mixes products of different weights");
      Term t{c, {}};
      bool memo = factors.size() >= 2;
      for (const auto& f : factors) t.ops.push_back(op_for(f, memo));
      pr.terms.push_back(std::move(t));
    }
    auto check_key = [&](const Word& w) {
      if (gb_.grading_.key(w) != key)
        throw std::invalid_argument("grading '" + gb_.grading_.name + "' does not make relation '" + r.name +
                                    "' homogeneous");
    };
    for (const auto& [c, factors] : r.products) {
      // Each factor must be key-homogeneous for products of keys to be well defined.
      for (const auto& f : factors) {
        std::optional<uint64_t> fk;
        for (const auto& [word, coef] : f.terms()) {
          uint64_t k = gb_.grading_.key(word);
          if (fk && *fk != k)
            throw std::invalid_argument("grading '" + gb_.grading_.name + "' does not make a factor of '" + r.name +
                                        "' homogeneous");
          fk = k;
        }
      }
    }
    check_key(pr.rep);
    for (const auto& [word, coef] : r.lower.terms()) {
      check_key(word);
      if (ord.weight(word) >= pr.weight)
        throw std::invalid_argument("relation '" + r.name + "' lower part is not of lower weight");
    }
    pr.lower = r.lower;
    gb_.max_relation_weight_ = std::max(gb_.max_relation_weight_, pr.weight);
    rels_.push_back(std::move(pr));
  }

  // v * F, memoized per normal word when the factor is reused.
  Vec apply(const Vec& v, size_t op) const {
    const FactorOp& f = *ops_[op];
    if (!f.memo) return gb_.mul_tensor(v, f.f);
    AccLease<K> acc;
    for (const auto& [id, c] : v) {
      std::shared_ptr<const Vec> hit;
      {
        std::shared_lock lock(f.m);
        auto it = f.full.find(id);
        if (it != f.full.end()) hit = it->second;
      }
      if (!hit) {
        hit = std::make_shared<const Vec>(gb_.mul_tensor(gb_.unit(id), f.f));
        std::unique_lock lock(f.m);
        f.full.emplace(id, hit);
      }
      acc->add_scaled(*hit, c);
    }
    return acc->take();
  }

  struct Column {
    uint32_t id;
    int letter;
  };
  struct Block {
    uint64_t key;
    std::vector<Column> cols;  // sorted by word, largest first
    std::vector<std::pair<size_t, uint32_t>> tasks;  // (relation, normal word id)
  };
  struct BlockResult {
    std::vector<uint32_t> free_cols;
    std::vector<std::pair<uint32_t, Row<K>>> pivots;
    size_t generated = 0, skipped = 0;
    bool collapse = false;
  };

  // Row of e_b * r: top over local columns of the block, rest as lower part.
  Row<K> make_row(int d, uint32_t b, const Prepared& r, const std::unordered_map<uint64_t, uint32_t>& local) const {
    const GroebnerBasis<K>& g = gb_;
    AccLease<K> top, low;
    for (const Term& t : r.terms) {
      Vec v = g.unit(b);
      for (size_t k = 0; k + 1 < t.ops.size() && !v.empty(); ++k) v = apply(v, t.ops[k]);
      if (v.empty()) continue;
      // Last factor: the final letter goes to columns.
      const Tensor<K>& last = ops_[t.ops.back()]->f;
      std::vector<Vec> stack{v};
      const Word* prev = nullptr;
      for (const auto& [w, c] : last.terms()) {
        size_t pre = w.size() - 1;
        size_t common = 0;
        if (prev)
          while (common < prev->size() - 1 && common < pre && (*prev)[common] == w[common]) ++common;
        stack.resize(common + 1);
        for (size_t k = common; k < pre; ++k) stack.push_back(g.mul_letter(stack.back(), letter_at(w, k)));
        int x = letter_at(w, pre);
        int target = d - g.order_.weight(x);
        K cc = t.coeff * c;
        for (const auto& [id, val] : stack.back()) {
          if (g.wdeg_[id] == target) {
            auto it = local.find(static_cast<uint64_t>(id) * static_cast<uint64_t>(g.n_) + static_cast<uint64_t>(x));
            if (it == local.end()) throw std::logic_error("relation term outside its grading block");
            top->add(it->second, cc * val);
          } else {
            low->add_scaled(g.right_mul(id, x), cc * val);
          }
        }
        prev = &w;
      }
    }
    if (!r.lower.is_zero()) low->add_scaled(g.mul_tensor(g.unit(b), r.lower), k_one<K>());
    Row<K> row;
    row.top = top->take();
    row.low = low->take();
    return row;
  }

  BlockResult process(int d, const Block& blk) const {
    std::unordered_map<uint64_t, uint32_t> local;
    for (uint32_t i = 0; i < blk.cols.size(); ++i)
      local.emplace(static_cast<uint64_t>(blk.cols[i].id) * static_cast<uint64_t>(gb_.n_) +
                        static_cast<uint64_t>(blk.cols[i].letter),
                    i);
    Echelon<K> ech(blk.cols.size());
    BlockResult res;
    for (size_t t = 0; t < blk.tasks.size(); ++t) {
      // With lower parts every row must be reduced: a dependent top can hide a live lower part.
      if (gb_.homogeneous_ && ech.full()) {
        res.skipped = blk.tasks.size() - t;
        break;
      }
      const auto& [ri, b] = blk.tasks[t];
      ++res.generated;
      ech.insert(make_row(d, b, rels_[ri], local), res.collapse);
    }
    ech.back_substitute();
    for (uint32_t i = 0; i < blk.cols.size(); ++i) {
      if (ech.pivot(i)) res.pivots.emplace_back(i, *ech.pivot(i));
      else res.free_cols.push_back(i);
    }
    return res;
  }

  bool degree(int d) {
    GroebnerBasis<K>& g = gb_;
    const MonomialOrder& ord = g.order_;
    // Columns b*x with wt(b) + wt(x) = d, grouped by key.
    std::vector<Block> blocks;
    std::unordered_map<uint64_t, size_t> block_of;
    for (int x = 0; x < g.n_; ++x) {
      int pd = d - ord.weight(x);
      if (pd < 0 || pd > g.completed_) continue;
      for (uint32_t b = g.start_[static_cast<size_t>(pd)]; b < g.start_[static_cast<size_t>(pd) + 1]; ++b) {
        uint64_t key = g.grading_.step(g.key_[b], x);
        auto [it, inserted] = block_of.try_emplace(key, blocks.size());
        if (inserted) blocks.push_back(Block{key, {}, {}});
        blocks[it->second].cols.push_back(Column{b, x});
      }
    }
    for (auto& blk : blocks)
      std::sort(blk.cols.begin(), blk.cols.end(), [&](const Column& a, const Column& b) {
        return ord.less(g.words_[b.id] + static_cast<char>(b.letter), g.words_[a.id] + static_cast<char>(a.letter));
      });
    // Row tasks, cheapest relations first.
    std::vector<size_t> rel_order(rels_.size());
    std::iota(rel_order.begin(), rel_order.end(), 0);
    std::stable_sort(rel_order.begin(), rel_order.end(),
                     [&](size_t a, size_t b) { return rels_[a].weight < rels_[b].weight; });
    for (size_t ri : rel_order) {
      int pd = d - rels_[ri].weight;
      if (pd < 0) continue;
      for (uint32_t b = g.start_[static_cast<size_t>(pd)]; b < g.start_[static_cast<size_t>(pd) + 1]; ++b) {
        auto it = block_of.find(g.grading_.key(g.key_[b], rels_[ri].rep));
        if (it == block_of.end()) {
          // No columns: only a lower part can survive, and it must vanish.
          if (!g.homogeneous_ && !g.stats_.collapse_detected &&
              !make_row(d, b, rels_[ri], {}).low.empty())
            g.stats_.collapse_detected = true;
          continue;
        }
        blocks[it->second].tasks.emplace_back(ri, b);
      }
    }

    std::vector<BlockResult> results(blocks.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> out_of_time{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (size_t i; (i = next.fetch_add(1)) < blocks.size();) {
        if (opt_.deadline && std::chrono::steady_clock::now() > *opt_.deadline) {
          out_of_time = true;
          return;
        }
        try {
          results[i] = process(d, blocks[i]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = blocks.size();
        }
      }
    };
    int jobs = std::max(1, opt_.jobs);
    if (jobs == 1 || blocks.size() < 2) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < std::min<int>(jobs, static_cast<int>(blocks.size())); ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    if (out_of_time) return false;

    // New normal words in increasing order.
    std::vector<std::pair<size_t, uint32_t>> fresh;
    for (size_t bi = 0; bi < blocks.size(); ++bi)
      for (uint32_t c : results[bi].free_cols) fresh.emplace_back(bi, c);
    auto word_of = [&](size_t bi, uint32_t c) {
      const Column& col = blocks[bi].cols[c];
      return g.words_[col.id] + static_cast<char>(col.letter);
    };
    std::sort(fresh.begin(), fresh.end(),
              [&](const auto& a, const auto& b) { return ord.less(word_of(a.first, a.second), word_of(b.first, b.second)); });
    std::vector<std::unordered_map<uint32_t, uint32_t>> new_id(blocks.size());
    for (const auto& [bi, c] : fresh) {
      uint32_t id = static_cast<uint32_t>(g.words_.size());
      Word w = word_of(bi, c);
      new_id[bi].emplace(c, id);
      g.index_.emplace(w, id);
      g.words_.push_back(std::move(w));
      g.wdeg_.push_back(d);
      g.key_.push_back(blocks[bi].key);
    }
    g.start_.push_back(static_cast<uint32_t>(g.words_.size()));
    g.rm_.resize(g.words_.size() * static_cast<size_t>(g.n_));
    g.rm_ready_.resize(g.words_.size() * static_cast<size_t>(g.n_), 0);

    auto set_rm = [&](const Column& col, Vec v) {
      size_t k = static_cast<size_t>(col.id) * static_cast<size_t>(g.n_) + static_cast<size_t>(col.letter);
      g.rm_[k] = std::move(v);
      g.rm_ready_[k] = 1;
    };
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      BlockResult& res = results[bi];
      g.stats_.rows_generated += res.generated;
      g.stats_.rows_skipped += res.skipped;
      g.stats_.collapse_detected = g.stats_.collapse_detected || res.collapse;
      ++g.stats_.blocks;
      for (uint32_t c : res.free_cols) set_rm(blocks[bi].cols[c], g.unit(new_id[bi].at(c)));
      for (auto& [c, row] : res.pivots) {
        Vec v;
        for (size_t k = 1; k < row.top.size(); ++k) v.emplace_back(new_id[bi].at(row.top[k].first), -row.top[k].second);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [id, val] : row.low) v.emplace_back(id, -val);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        const Column& col = blocks[bi].cols[c];
        Word lead = g.words_[col.id] + static_cast<char>(col.letter);
        bool minimal = g.index_.count(lead.substr(1)) > 0;
        if (minimal) g.rules_.push_back(RewriteRule<K>{lead, g.to_tensor(v)});
        set_rm(col, std::move(v));
      }
    }
    // Deterministic rule order.
    std::sort(g.rules_.begin(), g.rules_.end(),
              [&](const RewriteRule<K>& a, const RewriteRule<K>& b) { return ord.less(a.lead, b.lead); });
    return true;
  }

  const Presentation<K>& p_;
  int cap_;
  CompletionOptions opt_;
  GroebnerBasis<K> gb_;
  std::vector<std::unique_ptr<FactorOp>> ops_;
  std::vector<Prepared> rels_;
};

template <class K>
GroebnerBasis<K> complete(const Presentation<K>& p, int degree_cap, const CompletionOptions& options) {
  Completion<K> c(p, degree_cap, options);
  return c.run();
}

template <class K>
bool ideal_membership(const Tensor<K>& a, const Presentation<K>& p) {
  if (a.is_zero()) return true;
  MonomialOrder ord = p.order.letters() == p.letters ? p.order : MonomialOrder::natural(p.letters);
  int top = 0;
  for (const auto& [w, c] : a.terms()) top = std::max(top, ord.weight(w));
  return complete(p, top).normal_form(a).is_zero();
}

// ---------------------------------------------------------------- oracle

template <class K>
std::vector<int64_t> brute_force_dimensions(const Presentation<K>& p, int up_to) {
  if (!p.is_homogeneous()) throw std::invalid_argument("brute-force oracle needs a homogeneous presentation");
  MonomialOrder ord = p.order.letters() == p.letters ? p.order : MonomialOrder::natural(p.letters);
  std::vector<std::vector<Word>> words(static_cast<size_t>(up_to) + 1);
  words[0].push_back(Word());
  for (int d = 1; d <= up_to; ++d)
    for (int x = 0; x < p.letters; ++x) {
      int pd = d - ord.weight(x);
      if (pd < 0) continue;
      for (const auto& w : words[static_cast<size_t>(pd)]) words[static_cast<size_t>(d)].push_back(w + static_cast<char>(x));
    }
  std::vector<std::pair<int, Tensor<K>>> rels;
  for (const auto& r : p.relations) {
    int w = r.weight(ord);
    if (w > 0 && w <= up_to) rels.emplace_back(w, r.top());
  }
  std::vector<int64_t> dims;
  for (int d = 0; d <= up_to; ++d) {
    const auto& ws = words[static_cast<size_t>(d)];
    std::unordered_map<Word, uint32_t> col;
    for (uint32_t i = 0; i < ws.size(); ++i) col.emplace(ws[i], i);
    Echelon<K> ech(ws.size());
    bool collapse = false;
    for (const auto& [m, r] : rels)
      for (int i = 0; i <= d - m && !ech.full(); ++i)
        for (const auto& u : words[static_cast<size_t>(i)])
          for (const auto& v : words[static_cast<size_t>(d - m - i)]) {
            Row<K> row;
            for (const auto& [w, c] : r.terms()) row.top.emplace_back(col.at(u + w + v), c);
            std::sort(row.top.begin(), row.top.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            ech.insert(std::move(row), collapse);
          }
    dims.push_back(static_cast<int64_t>(ws.size() - ech.rank()));
  }
  return dims;
}

// ---------------------------------------------------------------- json

template <class K>
nlohmann::json presentation_to_json(const Presentation<K>& p) {
  MonomialOrder ord = p.order.letters() == p.letters ? p.order : MonomialOrder::natural(p.letters);
  std::vector<std::string> names = p.names.empty() ? default_letter_names(p.letters) : p.names;
  nlohmann::json j;
  j["letters"] = p.letters;
  j["names"] = names;
  j["weights"] = ord.weights();
  std::vector<int> prec(static_cast<size_t>(p.letters));
  for (int l = 0; l < p.letters; ++l) prec[static_cast<size_t>(ord.rank(l))] = l;
  j["precedence"] = prec;
  j["grading"] = p.grading.name;
  j["relations"] = nlohmann::json::array();
  for (const auto& r : p.relations) {
    nlohmann::json jr;
    jr["name"] = r.name;
    jr["products"] = nlohmann::json::array();
    for (const auto& [c, factors] : r.products) {
      nlohmann::json jp;
      jp["coefficient"] = to_string(c);
      for (const auto& f : factors) jp["factors"].push_back(f.to_string(names));
      jr["products"].push_back(jp);
    }
    jr["lower"] = r.lower.to_string(names);
    j["relations"].push_back(jr);
  }
  return j;
}

template <class K>
Presentation<K> presentation_from_json(const nlohmann::json& j) {
  Presentation<K> p;
  p.letters = j.at("letters").get<int>();
  p.names = j.value("names", default_letter_names(p.letters));
  std::vector<int> weights = j.value("weights", std::vector<int>(static_cast<size_t>(p.letters), 1));
  std::vector<int> prec = j.value("precedence", MonomialOrder::identity(p.letters));
  p.order = MonomialOrder(weights, prec);
  std::map<std::string, Tensor<K>> none;
  for (const auto& jr : j.at("relations")) {
    Relation<K> r;
    r.name = jr.value("name", "");
    if (jr.contains("products")) {
      for (const auto& jp : jr.at("products")) {
        K c = FieldTraits<K>::from_rational(Rational(1));
        if (jp.contains("coefficient")) c = parse_tensor<K>(jp.at("coefficient").get<std::string>(), {}, none).coefficient(Word());
        std::vector<Tensor<K>> fs;
        for (const auto& f : jp.at("factors")) fs.push_back(parse_tensor<K>(f.get<std::string>(), p.names, none));
        r.products.push_back({c, fs});
      }
      std::string lower = jr.value("lower", "0");
      r.lower = parse_tensor<K>(lower, p.names, none);
    } else {
      r = Relation<K>::element(r.name, parse_tensor<K>(jr.at("element").get<std::string>(), p.names, none), p.order);
    }
    p.relations.push_back(std::move(r));
  }
  return p;
}

#define NICHOLS_INSTANTIATE_ENGINE(K)                                                          \
  template struct Relation<K>;                                                                 \
  template struct Presentation<K>;                                                             \
  template class GroebnerBasis<K>;                                                             \
  template GroebnerBasis<K> complete(const Presentation<K>&, int, const CompletionOptions&);    \
  template bool ideal_membership(const Tensor<K>&, const Presentation<K>&);                    \
  template std::vector<int64_t> brute_force_dimensions(const Presentation<K>&, int);           \
  template nlohmann::json presentation_to_json(const Presentation<K>&);                        \
  template Presentation<K> presentation_from_json(const nlohmann::json&);

NICHOLS_INSTANTIATE_ENGINE(Scalar)
NICHOLS_INSTANTIATE_ENGINE(CyclotomicNumber)

}  // namespace nichols
