#include "nichols/properties.hpp"

#include "nichols/braided.hpp"
#include "nichols/hv1.hpp"

#include <random>
#include <tuple>

namespace nichols::properties {

namespace {

using T = Tensor<Scalar>;

std::vector<Word> all_words(int n, int len) {
  std::vector<Word> out{Word()};
  for (int l = 0; l < len; ++l) {
    std::vector<Word> next;
    for (const auto& u : out)
      for (int i = 0; i < n; ++i) next.push_back(u + static_cast<char>(i));
    out = std::move(next);
  }
  return out;
}

T random_element(std::mt19937_64& rng, int max_len, int terms, int letters = 4) {
  std::uniform_int_distribution<int> len(0, max_len), letter(0, letters - 1), coef(-2, 2), e(-2, 2);
  T t;
  for (int k = 0; k < terms; ++k) {
    Word u;
    for (int l = len(rng); l > 0; --l) u.push_back(static_cast<char>(letter(rng)));
    t.add_term(u, Scalar::monomial(QOmega(coef(rng), coef(rng)), e(rng)));
  }
  return t;
}

}  // namespace

CheckReport braid_equation() {
  return timed_check("braid equation on all letter triples", [](CheckReport& r) {
    const auto V = hv1_space();
    int bad = 0, total = 0;
    for (int i = 0; i < V.size(); ++i)
      for (int j = 0; j < V.size(); ++j)
        for (int k = 0; k < V.size(); ++k) {
          auto [l, rr] = V.braid_sides(i, j, k);
          ++total;
          if (!(l == rr)) ++bad;
        }
    r.require(bad == 0, "both sides agree on " + std::to_string(total) + " triples", bad);
  });
}

CheckReport coassociativity(int max_length) {
  return timed_check("coassociativity of the braided coproduct", [&](CheckReport& r) {
    const auto V = hv1_space();
    using Triple = std::map<std::tuple<Word, Word, Word>, Scalar>;
    auto add = [](Triple& t, const Word& a, const Word& b, const Word& c, const Scalar& v) {
      auto& slot = t[{a, b, c}];
      slot += v;
      if (slot.is_zero()) t.erase({a, b, c});
    };
    int checked = 0, bad = 0;
    for (int len = 0; len <= max_length; ++len)
      for (const Word& u : all_words(V.size(), len)) {
        const auto d = coproduct_word(V, u);
        Triple left, right;
        for (const auto& [k, c] : d.terms()) {
          const auto dl = coproduct_word(V, k.first);
          const auto dr = coproduct_word(V, k.second);
          for (const auto& [k2, c2] : dl.terms()) add(left, k2.first, k2.second, k.second, c * c2);
          for (const auto& [k2, c2] : dr.terms()) add(right, k.first, k2.first, k2.second, c * c2);
        }
        ++checked;
        if (left != right) ++bad;
      }
    r.require(bad == 0, "all " + std::to_string(checked) + " words through length " + std::to_string(max_length), bad);
  });
}

CheckReport twisted_leibniz(int pairs, uint64_t seed) {
  return timed_check("twisted Leibniz rule of the skew derivations", [&](CheckReport& r) {
    const auto V = hv1_space();
    std::mt19937_64 rng(seed);
    int bad = 0;
    for (int k = 0; k < pairs; ++k) {
      const T a = random_element(rng, 4, 3), b = random_element(rng, 4, 3);
      for (int i = 0; i < V.size(); ++i)
        if (!(skew_derivation(V, i, a * b) == a * skew_derivation(V, i, b) + skew_derivation(V, i, a) * V.act(i, b))) ++bad;
    }
    r.require(bad == 0, std::to_string(pairs) + " random pairs, every derivation", bad);
    r.witness["seed"] = seed;
  });
}

CheckReport rewrite_confluence(int elements, uint64_t seed, int cap) {
  return timed_check("confluence of rewriting at the cap", [&](CheckReport& r) {
    CompletionOptions co;
    co.stop_when_finite = false;
    // Truncated: only degrees <= cap are meaningful. The finite algebra is
    // certified complete, so rewriting must agree in every degree.
    const auto truncated = complete(hv1::presentation(hv1::relations().minimal), cap, co);
    const auto finite = complete(hv1::v1_presentation(), 3 * cap);
    r.require(finite.finite_certified() && finite.rules_complete_for_all_degrees(),
              "Fomin-Kirillov rules are complete in every degree");
    std::mt19937_64 rng(seed);
    auto agree = [](const auto& gb, const T& a) {
      const T nf = gb.normal_form(a);
      return gb.reduce_by_rules(a, RewriteStrategy::Leftmost) == nf &&
             gb.reduce_by_rules(a, RewriteStrategy::Rightmost) == nf && gb.normal_form(nf) == nf;
    };
    int bad_truncated = 0, bad_finite = 0;
    for (int k = 0; k < elements; ++k) {
      if (!agree(truncated, random_element(rng, cap, 4))) ++bad_truncated;
      if (!agree(finite, random_element(rng, 2 * cap, 4, 3))) ++bad_finite;
    }
    r.require(bad_truncated == 0, std::to_string(elements) + " random HV1 elements through degree " + std::to_string(cap),
              bad_truncated);
    r.require(bad_finite == 0, std::to_string(elements) + " random Fomin-Kirillov elements through degree " +
                                   std::to_string(2 * cap), bad_finite);
    r.witness["seed"] = seed;
  });
}

CheckReport dimension_oracles(int through) {
  return timed_check("word counts against brute-force linear algebra", [&](CheckReport& r) {
    const auto R = hv1::relations();
    const std::vector<std::pair<std::string, Presentation<Scalar>>> cases = {
        {"Fomin-Kirillov algebra", hv1::v1_presentation()},
        {"HV1 minimal relations", hv1::presentation(R.minimal)},
        {"HV1 distinguished relations", hv1::presentation(R.distinguished)},
    };
    CompletionOptions co;
    co.stop_when_finite = false;
    for (const auto& [name, p] : cases) {
      const auto gb = complete(p, through, co);
      const auto table = gb.hilbert(through).coefficients;
      const auto automaton = gb.hilbert_by_automaton(through);
      const auto brute = brute_force_dimensions(p, through);
      r.require(table == automaton && table == brute, name + " through degree " + std::to_string(through),
                {{"tables", table}, {"automaton", automaton}, {"brute_force", brute}});
    }
  });
}

}  // namespace nichols::properties
