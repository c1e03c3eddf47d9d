#include "cli.hpp"

#include "nichols/hv1.hpp"
#include "nichols/liftings.hpp"
#include "nichols/properties.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace nichols::cli {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string>& verify_targets() {
  static const std::vector<std::string> t = {"fk3",     "v2",         "v12",    "v112",     "hv1-dim",
                                             "hv1-relations", "hv1-pbw", "hv1-minimality", "prenichols",
                                             "center",  "dual-iso",   "properties", "strata"};
  return t;
}

const std::vector<std::string>& lifting_kinds() {
  static const std::vector<std::string> k = {"report", "fk3", "cleft", "top", "strata", "admissible"};
  return k;
}

std::optional<Clock::time_point> deadline_of(const RunConfig& c) {
  if (!c.time_limit) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(*c.time_limit));
}

Specialization specialization_of(const RunConfig& c) {
  if (!c.specialize) return Specialization::parse(c.q1);
  const std::string& s = *c.specialize;
  if (s.rfind("q1=", 0) != 0) throw ConfigError("--specialize expects q1=<root>, got '" + s + "'");
  return Specialization::parse(s.substr(3));
}

// ---------------------------------------------------------------- verify

std::vector<std::function<CheckReport()>> verify_tasks(const RunConfig& c) {
  hv1::CheckOptions o;
  o.jobs = c.jobs;
  if (c.max_degree >= 0) o.max_degree = c.max_degree;
  o.deadline = deadline_of(c);
  auto checks = std::make_shared<hv1::Checks>(o);

  std::vector<std::string> targets;
  for (const auto& t : c.targets.empty() ? std::vector<std::string>{"hv1-dim"} : c.targets) {
    if (t == "all") {
      targets.insert(targets.end(), verify_targets().begin(), verify_targets().end());
    } else if (std::find(verify_targets().begin(), verify_targets().end(), t) == verify_targets().end()) {
      throw ConfigError("unknown verify target '" + t + "'");
    } else {
      targets.push_back(t);
    }
  }
  std::set<std::string> seen;
  std::vector<std::function<CheckReport()>> tasks;
  auto add = [&](auto f) { tasks.push_back([checks, f] { return f(*checks); }); };
  for (const auto& t : targets) {
    if (!seen.insert(t).second) continue;
    if (t == "fk3") add([](hv1::Checks& k) { return k.fk3(); });
    if (t == "v2") add([](hv1::Checks& k) { return k.v2(); });
    if (t == "v12") add([](hv1::Checks& k) { return k.v12(); });
    if (t == "v112") add([](hv1::Checks& k) { return k.v112(); });
    if (t == "hv1-dim") add([](hv1::Checks& k) { return k.dimension(); });
    if (t == "hv1-relations") {
      add([](hv1::Checks& k) { return k.relation_table(); });
      add([](hv1::Checks& k) { return k.relations_in_nichols(); });
    }
    if (t == "hv1-pbw") add([](hv1::Checks& k) { return k.pbw(); });
    if (t == "hv1-minimality") add([](hv1::Checks& k) { return k.minimality(); });
    if (t == "prenichols") add([](hv1::Checks& k) { return k.prenichols(); });
    if (t == "center") add([](hv1::Checks& k) { return k.center(); });
    if (t == "dual-iso") add([](hv1::Checks& k) { return k.dual_iso(); });
    if (t == "properties") {
      const uint64_t seed = c.seed;
      tasks.push_back([] { return properties::braid_equation(); });
      tasks.push_back([] { return properties::coassociativity(5); });
      tasks.push_back([seed] { return properties::twisted_leibniz(500, seed); });
      tasks.push_back([seed] { return properties::rewrite_confluence(200, seed); });
      tasks.push_back([] { return properties::dimension_oracles(6); });
    }
    if (t == "strata") {
      const int jobs = c.jobs;
      tasks.push_back([jobs] {
        liftings::StrataOptions so;
        so.jobs = jobs;
        return liftings::strata_report(so);
      });
    }
  }
  return tasks;
}

// ---------------------------------------------------------------- hilbert and basis

struct Algebra {
  Presentation<Scalar> presentation;
  std::optional<std::vector<int64_t>> expected;  // independent series, when known
  bool finite = false;
};

std::vector<int64_t> prenichols_expected(int up_to) {
  // Hilb(B) / ((1 - t^6)(1 - t^18)) as two running sums.
  auto s = hv1::factorized_series();
  s.resize(static_cast<size_t>(up_to) + 1, 0);
  for (int step : {6, 18})
    for (size_t d = static_cast<size_t>(step); d < s.size(); ++d) s[d] += s[d - static_cast<size_t>(step)];
  return s;
}

Algebra algebra_of(const std::string& name, int up_to) {
  if (name.rfind("free", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(name.substr(4));
    } catch (const std::exception&) {
      throw ConfigError("free algebras are named free<n>, got '" + name + "'");
    }
    if (n < 1 || n > 16) throw ConfigError("free algebra needs 1 to 16 letters");
    std::vector<int64_t> e{1};
    for (int d = 1; d <= up_to; ++d) e.push_back(e.back() * n);
    return {Presentation<Scalar>::make(n), e, false};
  }
  if (name == "fk3") return {hv1::v1_presentation(), hv1::fk3_series(), true};
  if (name == "v2") return {hv1::v2_presentation(), std::vector<int64_t>(6, 1), true};
  if (name == "v12") return {hv1::v12_presentation(), hv1::stretch(hv1::fk3_series(), 2), true};
  if (name == "v112") {
    const std::vector<int64_t> a{1, 0, 0, 1}, b{1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1};
    return {hv1::v112_presentation(), hv1::poly_mul(hv1::poly_mul(a, a), b), true};
  }
  if (name == "hv1") return {hv1::presentation(hv1::relations().minimal), hv1::factorized_series(), true};
  if (name == "prenichols")
    return {hv1::presentation(hv1::relations().distinguished), prenichols_expected(up_to), false};
  throw ConfigError("unknown algebra '" + name + "'");
}

std::vector<int64_t> padded(std::vector<int64_t> v, int up_to) {
  v.resize(static_cast<size_t>(up_to) + 1, 0);
  return v;
}

CheckReport hilbert_report(const RunConfig& c) {
  const int up_to = c.max_degree >= 0 ? c.max_degree : 12;
  Algebra a = algebra_of(c.algebra, up_to);
  return timed_check("graded dimensions of " + c.algebra, [&](CheckReport& r) {
    CompletionOptions co;
    co.jobs = c.jobs;
    co.deadline = deadline_of(c);
    const auto gb = complete(a.presentation, up_to, co);
    if (gb.completed_through() < up_to && !gb.finite_certified())
      throw CapTooSmall("completion reached degree " + std::to_string(gb.completed_through()));
    r.hilbert = gb.hilbert(up_to);
    if (a.expected)
      r.require(r.hilbert->coefficients == padded(*a.expected, up_to), "coefficients match the closed form",
                padded(*a.expected, up_to));
  });
}

CheckReport basis_report(const RunConfig& c, nlohmann::json& extra) {
  const bool bounded = c.max_degree >= 0;
  Algebra a = algebra_of(c.algebra, bounded ? c.max_degree : 0);
  if (!a.finite && !bounded) throw ConfigError("algebra '" + c.algebra + "' is infinite; pass --max-degree");
  return timed_check("normal words of " + c.algebra, [&](CheckReport& r) {
    CompletionOptions co;
    co.jobs = c.jobs;
    co.deadline = deadline_of(c);
    const int cap = bounded ? c.max_degree : 64;
    const auto gb = complete(a.presentation, cap, co);
    if (!gb.finite_certified() && gb.completed_through() < cap)
      throw CapTooSmall("completion reached degree " + std::to_string(gb.completed_through()));
    if (!bounded && !gb.finite_certified()) throw CapTooSmall("no finiteness certificate through degree 64");
    const int top = bounded ? c.max_degree : gb.completed_through();
    nlohmann::json words = nlohmann::json::array();
    int64_t total = 0;
    for (int d = 0; d <= top; ++d)
      for (const Word& w : gb.normal_words(d)) {
        words.push_back(w.empty() ? std::string("1") : word_to_string(w, a.presentation.names));
        ++total;
      }
    extra["words"] = std::move(words);
    r.hilbert = gb.hilbert(top);
    r.witness["count"] = total;
    if (c.algebra == "hv1") r.require(total == hv1::Checks::pbw_count(), "count equals the PBW enumeration");
    if (a.expected && !bounded) {
      int64_t expected = 0;
      for (auto v : *a.expected) expected += v;
      r.require(total == expected, "count equals the closed-form dimension", expected);
    }
  });
}

// ---------------------------------------------------------------- lifting

void mark_specialized(CheckReport& r, const Specialization& s) {
  r.notes.push_back("computed over the cyclotomic field of order " + std::to_string(s.n()) + " with q1 -> " +
                    s.image_of_q1().to_string());
}

std::vector<std::function<CheckReport()>> lifting_tasks(const RunConfig& c) {
  const std::string kind = c.targets.empty() ? "report" : c.targets.front();
  if (c.targets.size() > 1) throw ConfigError("lifting takes a single kind");
  if (std::find(lifting_kinds().begin(), lifting_kinds().end(), kind) == lifting_kinds().end())
    throw ConfigError("unknown lifting kind '" + kind + "'");

  if (kind == "strata") {
    const int jobs = c.jobs;
    return {[jobs] {
      liftings::StrataOptions so;
      so.jobs = jobs;
      return liftings::strata_report(so);
    }};
  }

  if (kind == "fk3") {
    if (c.group != "s3") throw ConfigError("FK3 liftings are realized over --group s3 only");
    const auto l = liftings::DeformationParameters::parse(c.lambda);
    if (l.nonzero(2) || l.nonzero(3)) throw ConfigError("FK3 liftings take two parameters");
    auto r = std::make_shared<const FiniteRealization>(fk3_realization_s3());
    const int jobs = c.jobs;
    // Fails fast on inadmissible input, before the pool starts.
    const auto support = fk3_lambda_support(*r);
    for (int k = 0; k < 2; ++k)
      if (l.nonzero(k) && !support[static_cast<size_t>(k)])
        throw liftings::NotAdmissible("lambda_" + std::to_string(k + 1) + " must vanish over s3");
    return {[l, r, jobs] { return liftings::fk3_lifting_report({l.lambda[0], l.lambda[1]}, r, jobs); }};
  }

  const Specialization spec = specialization_of(c);
  auto model = std::make_shared<const liftings::Hv1Model>(liftings::model_from_descriptor(c.group, spec));
  const auto l = liftings::DeformationParameters::parse(c.lambda);
  const RunConfig cfg = c;

  if (kind == "admissible") {
    return {[l, model] {
      return timed_check("admissibility of " + l.to_string() + " over " + model->name, [&](CheckReport& r) {
        const auto slots = liftings::admissible_slots(l, *model->realization);
        const auto support = lambda_support_predicates(*model->realization);
        for (int k = 0; k < 4; ++k)
          r.witness["slots"].push_back({{"lambda", l.lambda[static_cast<size_t>(k)].to_string()},
                                        {"may_be_nonzero", support[static_cast<size_t>(k)]},
                                        {"admissible", slots[static_cast<size_t>(k)]}});
        r.witness["admissible"] = liftings::admissible(l, *model->realization);
      });
    }};
  }
  if (!liftings::admissible(l, *model->realization))
    throw liftings::NotAdmissible("lambda " + l.to_string() + " is not admissible over " + model->name);

  if (kind == "cleft") {
    return {[l, model, cfg, spec] {
      liftings::CleftOptions o;
      o.jobs = cfg.jobs;
      if (cfg.max_degree >= 0) o.cap = cfg.max_degree;
      o.deadline = deadline_of(cfg);
      auto r = liftings::cleft_report(l, *model, o);
      mark_specialized(r, spec);
      return r;
    }};
  }
  if (kind == "top") {
    return {[l, model, cfg, spec] {
      liftings::A124134Budget b;
      b.seconds = cfg.budget;
      b.jobs = cfg.jobs;
      auto res = liftings::compute_a124134(l, *model, b);
      res.report.witness["outcome"] = res.status == liftings::A124134Result::Status::Computed ? "computed" : "unfinished";
      mark_specialized(res.report, spec);
      return res.report;
    }};
  }
  return {[l, model, cfg, spec] {
    liftings::LiftingOptions o;
    o.a_degree = cfg.a_degree;
    o.jobs = cfg.jobs;
    o.deadline = deadline_of(cfg);
    auto r = liftings::lifting_report(l, *model, o);
    mark_specialized(r, spec);
    return r;
  }};
}

std::string status_word(int code) {
  switch (code) {
    case kPass: return "pass";
    case kFail: return "fail";
    default: return "unknown";
  }
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["targets"] = targets;
  if (!algebra.empty()) j["algebra"] = algebra;
  j["group"] = group;
  j["q1"] = q1;
  j["specialized"] = specialize.has_value();
  if (specialize) j["specialize"] = *specialize;
  j["max_degree"] = max_degree;
  j["a_degree"] = a_degree;
  j["jobs"] = jobs;
  j["seed"] = seed;
  j["lambda"] = lambda;
  j["budget_seconds"] = budget;
  if (time_limit) j["time_limit_seconds"] = *time_limit;
  return j;
}

int exit_code(const std::vector<CheckReport>& reports) {
  bool unknown = false;
  for (const auto& r : reports) {
    if (r.status == Status::Fail) return kFail;
    if (r.status == Status::Unknown) unknown = true;
  }
  return unknown ? kResourceLimit : kPass;
}

nlohmann::json document(const RunConfig& config, const RunResult& result) {
  nlohmann::json d;
  d["schema_version"] = kSchemaVersion;
  d["command"] = config.command;
  d["config"] = config.to_json();
  d["reports"] = nlohmann::json::array();
  for (const auto& r : result.reports) {
    auto j = r.to_json();
    if (!config.timings) j.erase("runtime");
    d["reports"].push_back(std::move(j));
  }
  if (!result.extra.is_null()) d["result"] = result.extra;
  const int code = exit_code(result.reports);
  d["status"] = status_word(code);
  d["exit_code"] = code;
  return d;
}

std::string text_table(const RunConfig& config, const RunResult& result) {
  size_t width = 5;
  for (const auto& r : result.reports) width = std::max(width, r.check.size());
  std::ostringstream s;
  s << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(8) << "status";
  if (config.timings) s << "seconds";
  s << "\n" << std::string(width + 10 + (config.timings ? 8 : 0), '-') << "\n";
  for (const auto& r : result.reports) {
    s << std::setw(static_cast<int>(width) + 2) << r.check << std::setw(8) << to_string(r.status);
    if (config.timings) s << std::fixed << std::setprecision(3) << r.runtime;
    s << "\n";
    if (r.status == Status::Fail && r.witness.contains("items"))
      for (const auto& item : r.witness["items"])
        if (!item.value("ok", true)) s << "    failed: " << item.value("item", std::string()) << "\n";
    for (const auto& n : r.notes) s << "    note: " << n << "\n";
    if (r.hilbert && config.command != "verify") s << r.hilbert->table() << "\n";
  }
  if (result.extra.contains("words"))
    for (const auto& w : result.extra["words"]) s << w.get<std::string>() << "\n";
  s << "overall: " << status_word(exit_code(result.reports)) << "\n";
  return s.str();
}

std::vector<CheckReport> run_pool(const std::vector<std::function<CheckReport()>>& tasks, int jobs) {
  std::vector<CheckReport> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      try {
        out[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t n = std::min(tasks.size(), static_cast<size_t>(std::max(1, jobs)));
  std::vector<std::thread> pool;
  for (size_t k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

RunResult execute(const RunConfig& c) {
  if (c.jobs < 1) throw ConfigError("--jobs must be positive");
  RunResult res;
  if (c.command == "verify") {
    res.reports = run_pool(verify_tasks(c), c.jobs);
  } else if (c.command == "hilbert") {
    res.reports.push_back(hilbert_report(c));
  } else if (c.command == "basis") {
    res.reports.push_back(basis_report(c, res.extra));
  } else if (c.command == "lifting") {
    res.reports = run_pool(lifting_tasks(c), c.jobs);
  } else {
    throw ConfigError("unknown command '" + c.command + "'");
  }
  return res;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Verification of the Nichols algebra HV1, its pre-Nichols quotient and its liftings"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--group", c.group, "Realization: env:N,M, table:<file>, or s3 for FK3 liftings");
  app.add_option("--q1", c.q1, "Image of q1 for finite models (cyclotomic expression)");
  app.add_option("--specialize", c.specialize, "Explicit specialization q1=<root>; marks results specialized");
  app.add_option("--max-degree", c.max_degree, "Degree cap (command-specific default)");
  app.add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed of the randomized property suites");
  app.add_option("--lambda", c.lambda, "Deformation parameters l1,l2,l3,l4");
  app.add_option("--a-degree", c.a_degree, "Truncation of lifting counts by number of a-letters");
  app.add_option("--budget", c.budget, "Seconds allowed for the top primitive element");
  app.add_option("--time-limit", c.time_limit, "Wall-clock limit; exceeded checks report a resource limit");
  app.add_option("--out", c.out, "Write the JSON document to this file");
  app.add_flag("--json", c.json, "Print the JSON document instead of the table");
  app.add_flag("--timings", c.timings, "Keep runtimes (output is then not byte-identical)");

  auto* verify = app.add_subcommand("verify", "Run verification targets (or 'all')");
  verify->add_option("targets", c.targets, "Targets")->check(CLI::IsMember([] {
    auto t = verify_targets();
    t.push_back("all");
    return t;
  }()));
  auto* hilbert = app.add_subcommand("hilbert", "Graded dimensions of an algebra");
  hilbert->add_option("--algebra", c.algebra, "free<n>, fk3, v2, v12, v112, hv1 or prenichols")->required();
  auto* basis = app.add_subcommand("basis", "Normal-word basis of an algebra");
  basis->add_option("--algebra", c.algebra, "free<n>, fk3, v2, v12, v112, hv1 or prenichols")->required();
  auto* lifting = app.add_subcommand("lifting", "Liftings, cleft objects and the strata of the relations");
  lifting->add_option("kind", c.targets, "report, fk3, cleft, top, strata or admissible")
      ->check(CLI::IsMember(lifting_kinds()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }
  for (auto* s : {verify, hilbert, basis, lifting})
    if (s->parsed()) c.command = s->get_name();

  RunResult res;
  try {
    res = execute(c);
  } catch (const liftings::NotAdmissible& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParseError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const CapTooSmall& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  }

  const auto doc = document(c, res);
  if (c.json) out << doc.dump(2) << "\n";
  else out << text_table(c, res);
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) {
      err << "configuration error: cannot write " << c.out << "\n";
      return kConfigError;
    }
    f << doc.dump(2) << "\n";
  }
  return exit_code(res.reports);
}

}  // namespace nichols::cli
