#include "coprime_lab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "coprime_lab/errors.hpp"
#include "coprime_lab/series.hpp"

namespace cplab {

bool CheckReport::failed() const {
  if (!errors.empty()) return true;
  return std::any_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.status == CheckStatus::Fail; });
}

const CheckEntry* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool SuiteResult::failed() const {
  return std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.failed(); });
}

int default_derived_index(std::uint32_t k) {
  int d = 0;
  while ((1u << (d + 1)) + 2 <= k) ++d;
  return d;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs fn, which returns a CheckResult, and appends it under `name`.
template <typename Fn>
void timed(CheckReport& report, std::string name, Fn&& fn) {
  const auto start = Clock::now();
  CheckResult r = fn();
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report.checks.push_back({std::move(name), r.status, std::move(r.detail), secs});
}

CheckResult from_bool(bool ok, const std::string& why) { return ok ? CheckResult::pass() : CheckResult::fail(why); }

CheckReport blank_report(const ActionSetup& setup) {
  CheckReport r;
  r.p = setup.p();
  r.k = setup.k();
  r.order = setup.group().order();
  return r;
}

// Max class of term(C_G(a)) over a in A^#; nullopt if one of them is not nilpotent.
template <typename Term>
std::optional<int> centralizer_hypothesis(const ActionSetup& setup, Term term, std::string& detail) {
  int c = 1;
  for (const auto& a : setup.nonidentity_elements()) {
    const Group cg = fixed_subgroup(setup, cyclic_subgroup(a, setup.p()));
    const auto cls = nilpotency_class(term(cg));
    if (!cls) {
      std::ostringstream os;
      os << "term of C_G(a) is not nilpotent for a = (";
      for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
      os << ")";
      detail = os.str();
      return std::nullopt;
    }
    c = std::max(c, *cls);
  }
  return c;
}

struct Pipeline {
  std::string prefix;
  SpecialKind kind;
  int degree;
  Group target;
};

// The parts shared by the two theorem pipelines.
void run_pipeline(CheckReport& report, const ActionSetup& setup, const Pipeline& pl, std::optional<int> c,
                  const std::string& hyp_detail, const SpecialLattice& lattice) {
  TheoremSummary summary;
  summary.kind = pl.kind == SpecialKind::ASpecial ? "derived" : "gamma";
  summary.degree = pl.degree;
  summary.hypothesis_c = c;
  summary.family_count = lattice.at_degree(pl.degree).members.size();

  report.checks.push_back({pl.prefix + ".hypothesis",
                           c ? CheckStatus::Pass : CheckStatus::HypothesisNotMet,
                           c ? "c = " + std::to_string(*c) : hyp_detail, 0.0});

  std::optional<int> cls;
  timed(report, pl.prefix + ".nilpotent", [&] {
    cls = nilpotency_class(pl.target);
    if (cls) return CheckResult::pass();
    if (!c) return CheckResult{CheckStatus::HypothesisNotMet, "target not nilpotent, hypothesis not met"};
    return CheckResult::fail("target of order " + std::to_string(pl.target.order()) + " is not nilpotent");
  });
  summary.conclusion_class = cls;

  timed(report, pl.prefix + ".containment",
        [&] { return from_bool(check_aspecial_containment(lattice), "a member is not inside any lower-degree member"); });
  timed(report, pl.prefix + ".generation", [&] {
    return from_bool(check_aspecial_generation(setup, lattice), "members do not generate the series term");
  });
  timed(report, pl.prefix + ".degree_bound", [&] { return check_aspecial_degree_bound(setup, lattice).result; });

  if (pl.kind == SpecialKind::ASpecial) {
    if (pl.target.is_trivial()) {
      report.checks.push_back({pl.prefix + ".sylow", CheckStatus::NotApplicable, "G^(d) is trivial", 0.0});
    } else {
      for (auto r : prime_divisors(pl.target.order()))
        timed(report, pl.prefix + ".sylow.r" + std::to_string(r), [&] {
          return from_bool(check_sylow_generation(setup, lattice, pl.degree, r),
                           "Sylow subgroup not generated by its intersections with the members");
        });
    }
  }

  timed(report, pl.prefix + ".key_relation", [&] {
    if (!c) return CheckResult{CheckStatus::HypothesisNotMet, "c undefined"};
    CommutatorMode mode{pl.kind, pl.degree};
    return from_bool(check_key_commutator_relation(setup, lattice, *c, mode),
                     "[C_G(A_j), H, ..., H] with c + 1 copies of H is not trivial");
  });

  timed(report, pl.prefix + ".lie_class", [&] {
    if (!cls) return CheckResult::not_applicable("target not nilpotent");
    const auto ring = lie_ring_of(pl.target);
    return from_bool(check_class_transfer(ring, pl.target),
                     "Lie class " + std::to_string(lie_class(ring)) + " vs group class " + std::to_string(*cls));
  });

  timed(report, pl.prefix + ".ceiling", [&] {
    if (!c || !cls) return CheckResult::not_applicable("no class to compare");
    const auto bound = 2 * static_cast<std::size_t>(*c + 1) * summary.family_count;
    return from_bool(static_cast<std::size_t>(*cls) <= bound,
                     "class " + std::to_string(*cls) + " exceeds 2(c+1)*family = " + std::to_string(bound));
  });

  report.theorems.push_back(summary);
}

}  // namespace

CheckReport verify_derived_theorem(const ActionSetup& setup, int d, const VerifyOptions& options) {
  const auto k = setup.k();
  if (k < 3 || d < 0 || d > 20 || (1u << d) + 2 > k)
    throw PreconditionError("verify_derived_theorem: needs k >= 3 and 2^d + 2 <= k (k = " + std::to_string(k) +
                            ", d = " + std::to_string(d) + ")");
  CheckReport report = blank_report(setup);
  std::string why;
  const auto c = centralizer_hypothesis(setup, [d](const Group& h) { return derived_series(h).at(d); }, why);
  const Group target = derived_series(setup.group()).at(d);
  const auto lattice = a_special_lattice(setup, d + std::max(0, options.extra_degrees));
  run_pipeline(report, setup, {"derived", SpecialKind::ASpecial, d, target}, c, why, lattice);
  return report;
}

CheckReport verify_gamma_theorem(const ActionSetup& setup, const VerifyOptions& options) {
  const int k = static_cast<int>(setup.k());
  if (k < 3) throw PreconditionError("verify_gamma_theorem: needs k >= 3 (k = " + std::to_string(k) + ")");
  CheckReport report = blank_report(setup);
  std::string why;
  const auto c =
      centralizer_hypothesis(setup, [k](const Group& h) { return lower_central_series(h).at(k - 2); }, why);
  const Group target = lower_central_series(setup.group()).at(k - 2);
  // the degree bound looks at degrees up to k - 1
  const auto lattice = gamma_a_special_lattice(setup, k - 1 + std::max(0, options.extra_degrees));
  run_pipeline(report, setup, {"gamma", SpecialKind::GammaASpecial, k - 2, target}, c, why, lattice);
  return report;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Orbit of x under A.
std::vector<Perm> a_orbit(const ActionSetup& setup, const Perm& x) {
  std::vector<Perm> out;
  for (std::uint32_t u = 0; u < setup.a_order(); ++u) {
    Perm y = setup.phi_at(u)(x);
    if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(std::move(y));
  }
  return out;
}

const Perm& random_element(const Group& g, std::mt19937_64& rng) {
  const auto& els = g.elements();
  return els[rng() % els.size()];
}

void add_unique(std::vector<Group>& into, Group g) {
  for (const auto& h : into)
    if (h == g) return;
  into.push_back(std::move(g));
}

}  // namespace

std::vector<Group> invariant_normal_subgroups(const ActionSetup& setup, std::uint64_t seed) {
  const Group& g = setup.group();
  std::vector<Group> out;
  add_unique(out, Group(g.degree()));
  add_unique(out, g);
  for (const auto& t : lower_central_series(g).terms) add_unique(out, t);
  for (const auto& t : derived_series(g).terms) add_unique(out, t);
  for (const auto& t : upper_central_series(g).terms) add_unique(out, t);
  add_unique(out, fitting_subgroup(g));
  for (auto r : prime_divisors(g.order())) add_unique(out, largest_normal_r_subgroup(g, r));

  std::mt19937_64 rng(seed);
  for (int i = 0; i < 6 && !g.is_trivial(); ++i) {
    const auto orbit = a_orbit(setup, random_element(g, rng));
    add_unique(out, normal_closure(orbit, g));
  }
  // products of pairs found so far
  const std::size_t base = out.size();
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = i + 1; j < base; ++j) add_unique(out, join(out[i], out[j]));

  for (const auto& n : out)
    if (!n.is_normal_in(g) || !is_a_invariant(setup, n))
      throw InternalError("invariant_normal_subgroups produced a subgroup that is not A-invariant and normal");
  return out;
}

CheckReport run_lemma_checks(const ActionSetup& setup, const LemmaOptions& options) {
  CheckReport report = blank_report(setup);
  const Group& g = setup.group();
  const auto maximal = maximal_subgroups(setup);

  timed(report, "lemma.fg1", [&] {
    const auto normals = invariant_normal_subgroups(setup, options.seed);
    auto bs = maximal;
    bs.push_back(whole_a(setup.k()));
    std::size_t tried = 0;
    for (const auto& n : normals)
      for (const auto& b : bs) {
        ++tried;
        if (!check_fg1_quotient(setup, n, b))
          return CheckResult::fail("C_{G/N}(B) != C_G(B)N/N for |N| = " + std::to_string(n.order()));
      }
    return CheckResult{CheckStatus::Pass, std::to_string(normals.size()) + " normal subgroups, " +
                                              std::to_string(tried) + " pairs"};
  });

  timed(report, "lemma.fg2", [&] {
    if (setup.k() < 2) return CheckResult::not_applicable("needs k >= 2");
    if (!check_fg2_generation(setup, g)) return CheckResult::fail("G is not generated by the C_G(A_j)");
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
    for (std::size_t i = 0; i < options.random_subgroups; ++i) {
      std::vector<Perm> gens = a_orbit(setup, random_element(g, rng));
      if (i % 2 == 1) {
        auto more = a_orbit(setup, random_element(g, rng));
        gens.insert(gens.end(), more.begin(), more.end());
      }
      const Group h = subgroup_from_elements(g.degree(), gens);
      if (!check_fg2_generation(setup, h))
        return CheckResult::fail("an A-invariant subgroup of order " + std::to_string(h.order()) +
                                 " is not generated by its centralizers");
    }
    return CheckResult::pass();
  });

  // Lie checks run on G, or on F(G) with the restricted action.
  const bool nilpotent = is_nilpotent(g);
  const Group target = nilpotent ? g : fitting_subgroup(g);
  const ActionSetup target_setup = nilpotent ? setup : restrict_action(setup, target);
  LieRingOptions lopts;
  lopts.mutation = options.lie_mutation;
  lopts.allow_invalid = true;
  const auto ring = lie_ring_of(target, lopts);
  const std::string where = nilpotent ? "G" : "F(G)";

  timed(report, "lie.axioms", [&] {
    const auto& ax = ring.axioms();
    if (ax.ok()) return CheckResult{CheckStatus::Pass, "L(" + where + ")"};
    std::string why = "L(" + where + "):";
    for (std::size_t i = 0; i < ax.failures.size() && i < 3; ++i) why += " " + ax.failures[i] + ";";
    return CheckResult::fail(why);
  });
  timed(report, "lie.class_transfer",
        [&] { return from_bool(check_class_transfer(ring, target), "class of L(" + where + ") differs"); });

  const LieAction action(ring, target_setup);
  timed(report, "lemma.centralizer_transfer", [&] {
    for (std::size_t j = 0; j < maximal.size(); ++j)
      if (!check_centralizer_transfer(action, target_setup, maximal[j]))
        return CheckResult::fail("C_L(A_" + std::to_string(j + 1) + ") != L(" + where + ", C(A_j))");
    return CheckResult::pass();
  });

  std::vector<LieSubspace> family;
  for (const auto& b : maximal) family.push_back(action.fixed_subspace(b));
  timed(report, "lemma.span_pairwise", [&] { return check_span_lemma(action, family, SpanMode::Pairwise); });
  timed(report, "lemma.span_gamma", [&] { return check_span_lemma(action, family, SpanMode::Gamma); });
  return report;
}

namespace {

void absorb(CheckReport& into, CheckReport&& part) {
  for (auto& t : part.theorems) into.theorems.push_back(std::move(t));
  for (auto& c : part.checks) into.checks.push_back(std::move(c));
  for (auto& e : part.errors) into.errors.push_back(std::move(e));
}

template <typename Fn>
void guarded(CheckReport& report, const std::string& stage, Fn&& fn) {
  try {
    absorb(report, fn());
  } catch (const std::exception& e) {
    report.errors.push_back(stage + ": " + e.what());
  }
}

}  // namespace

CheckReport run_instance(const Instance& instance, const SuiteOptions& options) {
  const ActionSetup& setup = instance.setup;
  CheckReport report = blank_report(setup);
  report.instance_id = instance.id;
  const int k = static_cast<int>(setup.k());
  VerifyOptions vopts;
  vopts.extra_degrees = options.extra_degrees;

  if (options.mode != TheoremMode::Gamma) {
    const int d = options.d.value_or(instance.d.value_or(default_derived_index(setup.k())));
    if (k < 3 || d < 0 || d > 20 || (1 << d) + 2 > k)
      report.checks.push_back({"derived", CheckStatus::NotApplicable,
                               "needs k >= 3 and 2^d + 2 <= k (d = " + std::to_string(d) + ")", 0.0});
    else
      guarded(report, "derived", [&] { return verify_derived_theorem(setup, d, vopts); });
  }
  if (options.mode != TheoremMode::Derived) {
    if (k < 3)
      report.checks.push_back({"gamma", CheckStatus::NotApplicable, "needs k >= 3", 0.0});
    else
      guarded(report, "gamma", [&] { return verify_gamma_theorem(setup, vopts); });
  }
  if (options.lemmas) {
    LemmaOptions lopts;
    lopts.seed = fnv1a(instance.id) ^ options.seed;
    lopts.lie_mutation = options.lie_mutation;
    guarded(report, "lemmas", [&] { return run_lemma_checks(setup, lopts); });
  }
  return report;
}

SuiteResult run_suite(const std::vector<Instance>& instances, const SuiteOptions& options) {
  SuiteResult result;
  result.reports.resize(instances.size());
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, instances.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        result.reports[i] = run_instance(instances[i], options);
      } catch (const std::exception& e) {
        // run_instance already guards each stage; this is only reached on allocation failures and the like
        result.reports[i].instance_id = instances[i].id;
        result.reports[i].errors.push_back(e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& r : result.reports) add_to_summary(result.summary, r);
  return result;
}

void add_to_summary(Summary& summary, const CheckReport& report) {
  for (const auto& t : report.theorems) {
    if (!t.hypothesis_c || !t.conclusion_class) continue;
    const int c = *t.hypothesis_c;
    auto& row = summary[{t.kind, c, report.k, report.p}];
    row.kind = t.kind;
    row.c = c;
    row.k = report.k;
    row.p = report.p;
    ++row.instances;
    row.max_conclusion_class = std::max(row.max_conclusion_class, *t.conclusion_class);
    row.max_family_count = std::max(row.max_family_count, t.family_count);
    if (static_cast<std::size_t>(*t.conclusion_class) > 2 * static_cast<std::size_t>(c + 1) * t.family_count)
      row.ceiling_ok = false;
  }
}

void merge_summary(Summary& into, const Summary& other) {
  for (const auto& [key, row] : other) {
    auto it = into.find(key);
    if (it == into.end()) {
      into.emplace(key, row);
      continue;
    }
    auto& mine = it->second;
    mine.instances += row.instances;
    mine.max_conclusion_class = std::max(mine.max_conclusion_class, row.max_conclusion_class);
    mine.max_family_count = std::max(mine.max_family_count, row.max_family_count);
    mine.ceiling_ok = mine.ceiling_ok && row.ceiling_ok;
  }
}

nlohmann::json report_to_json(const CheckReport& report, bool with_timing) {
  using nlohmann::json;
  json doc;
  doc["schema"] = kReportSchema;
  doc["instance"] = report.instance_id;
  doc["parameters"] = {{"p", report.p}, {"k", report.k}, {"order", report.order}};
  json theorems = json::array();
  for (const auto& t : report.theorems) {
    json j;
    j["kind"] = t.kind;
    j["degree"] = t.degree;
    j["hypothesis_c"] = t.hypothesis_c ? json(*t.hypothesis_c) : json(nullptr);
    j["hypothesis_met"] = t.hypothesis_met();
    j["conclusion_class"] = t.conclusion_class ? json(*t.conclusion_class) : json(nullptr);
    j["family_count"] = t.family_count;
    theorems.push_back(std::move(j));
  }
  doc["theorems"] = std::move(theorems);
  json checks = json::array();
  for (const auto& c : report.checks) {
    json j{{"name", c.name}, {"status", std::string(to_string(c.status))}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (with_timing) j["seconds"] = c.seconds;
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  doc["errors"] = report.errors;
  doc["failed"] = report.failed();
  return doc;
}

namespace {
constexpr const char* kCsvHeader = "kind,c,k,p,instances,max_conclusion_class,max_family_count,ceiling_ok";
}

std::string summary_to_csv(const Summary& summary) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& [key, r] : summary)
    os << r.kind << ',' << r.c << ',' << r.k << ',' << r.p << ',' << r.instances << ',' << r.max_conclusion_class
       << ',' << r.max_family_count << ',' << (r.ceiling_ok ? "true" : "false") << '\n';
  return os.str();
}

Summary summary_from_csv(const std::string& text) {
  Summary out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != kCsvHeader) throw ValidationError("summary csv: unexpected header on line " + std::to_string(lineno));
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (cells.size() != 8) throw ValidationError("summary csv: line " + std::to_string(lineno) + " needs 8 fields");
    SummaryRow r;
    try {
      r.kind = cells[0];
      r.c = std::stoi(cells[1]);
      r.k = static_cast<std::uint32_t>(std::stoul(cells[2]));
      r.p = static_cast<std::uint32_t>(std::stoul(cells[3]));
      r.instances = std::stoull(cells[4]);
      r.max_conclusion_class = std::stoi(cells[5]);
      r.max_family_count = std::stoull(cells[6]);
    } catch (const std::exception&) {
      throw ValidationError("summary csv: bad number on line " + std::to_string(lineno));
    }
    if (cells[7] != "true" && cells[7] != "false")
      throw ValidationError("summary csv: ceiling_ok must be true or false on line " + std::to_string(lineno));
    r.ceiling_ok = cells[7] == "true";
    Summary one;
    one.emplace(SummaryKey{r.kind, r.c, r.k, r.p}, r);
    merge_summary(out, one);
  }
  if (!header) throw ValidationError("summary csv: empty input");
  return out;
}

nlohmann::json lattice_to_json(const SpecialLattice& lattice) {
  using nlohmann::json;
  json doc;
  doc["kind"] = lattice.kind == SpecialKind::ASpecial ? "a-special" : "gamma-a-special";
  json cents = json::array();
  for (const auto& c : lattice.centralizers) cents.push_back(c.order());
  doc["centralizer_orders"] = std::move(cents);
  json families = json::array();
  for (const auto& f : lattice.families) {
    json members = json::array();
    for (std::size_t i = 0; i < f.members.size(); ++i) {
      const auto& r = f.provenance[i];
      json gens = json::array();
      for (const auto& g : f.members[i].generators())
        gens.push_back(std::vector<Perm::Point>(g.images().begin(), g.images().end()));
      json m{{"order", f.members[i].order()},
             {"generators", std::move(gens)},
             {"centralizer", r.centralizer},
             {"multiplicity", r.multiplicity}};
      if (r.left) m["left"] = *r.left;
      if (r.right) m["right"] = *r.right;
      if (r.inner) m["inner"] = *r.inner;
      members.push_back(std::move(m));
    }
    families.push_back({{"degree", f.degree}, {"members", std::move(members)}});
  }
  doc["families"] = std::move(families);
  return doc;
}

nlohmann::json ring_to_json(const GradedLieRing& ring) {
  using nlohmann::json;
  json doc;
  json comps = json::array();
  for (int i = 1; i <= ring.component_count(); ++i) comps.push_back(ring.component(i).orders());
  doc["components"] = std::move(comps);
  json table = json::array();
  for (int i = 1; i <= ring.component_count(); ++i)
    for (int j = 1; i + j <= ring.component_count(); ++j)
      for (std::size_t a = 0; a < ring.dim(i); ++a)
        for (std::size_t b = 0; b < ring.dim(j); ++b) {
          const auto& v = ring.structure_constant(i, a, j, b);
          if (ring.is_zero(v)) continue;
          table.push_back({{"i", i}, {"a", a}, {"j", j}, {"b", b}, {"value", v}});
        }
  doc["structure_constants"] = std::move(table);
  return doc;
}

}  // namespace cplab
