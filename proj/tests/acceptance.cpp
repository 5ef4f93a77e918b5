// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--cli <path to coprime_lab>] [--work <scratch dir>]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coprime_lab/errors.hpp"
#include "coprime_lab/harness.hpp"
#include "coprime_lab/instance_io.hpp"
#include "coprime_lab/series.hpp"
#include "oracle/table_oracle.hpp"

namespace fs = std::filesystem;
using namespace cplab;

namespace {

// Pinned thresholds.  Every comparison below is exact; these only fix sizes.
constexpr std::size_t kMinNilpotentGroups = 20;
constexpr std::uint64_t kNilpotentMinOrder = 27;
constexpr std::uint64_t kNilpotentMaxOrder = 2187;
constexpr std::size_t kMinLemmaSetups = 30;
constexpr std::uint64_t kOracleMaxOrder = 5000;
const std::vector<std::uint64_t> kSeeds{1, 2};
constexpr std::uint64_t kShippedSeed = 1;
// Antisymmetry-breaking change to [b_0, b_1] in component 2.
constexpr StructureMutation kMutation{1, 0, 1, 1, 0, 1};

struct Outcome {
  bool pass = false;
  std::string note;
};

std::vector<Instance> all_instances(std::uint64_t seed) { return preset("all", seed); }

// ---- criterion 1 --------------------------------------------------------

std::vector<std::pair<std::string, Group>> nilpotent_samples() {
  std::vector<std::pair<std::string, Group>> out;
  auto consider = [&](const std::string& name, const Group& g) {
    if (g.order() < kNilpotentMinOrder || g.order() > kNilpotentMaxOrder || !is_nilpotent(g)) return;
    for (const auto& [n, h] : out)
      if (h == g) return;
    out.emplace_back(name, g);
  };
  for (auto seed : kSeeds)
    for (const auto& inst : all_instances(seed)) {
      const Group& g = inst.setup.group();
      consider(inst.id, g);
      if (!is_nilpotent(g)) consider("F(" + inst.id + ")", fitting_subgroup(g));
    }
  return out;
}

Outcome criterion_axioms(std::optional<StructureMutation> mutation) {
  const auto samples = nilpotent_samples();
  std::size_t bad = 0, mutated = 0;
  std::string first;
  for (const auto& [name, g] : samples) {
    LieRingOptions opts;
    opts.allow_invalid = true;
    if (mutation) {
      // only rings the mutation actually addresses
      const auto plain = lie_ring_of(g);
      if (plain.component_count() < mutation->i + mutation->j || plain.dim(mutation->i) <= mutation->a ||
          plain.dim(mutation->j) <= mutation->b)
        continue;
      opts.mutation = mutation;
      ++mutated;
    }
    const auto ring = lie_ring_of(g, opts);
    const auto ax = check_axioms(ring, 200, 0x5eed);
    const bool ok = ax.jacobi && ax.bilinear && ax.alternating && ax.graded && ax.matches_group &&
                    check_class_transfer(ring, g);
    if (!ok) {
      ++bad;
      if (first.empty()) first = name;
    }
  }
  std::ostringstream note;
  note << samples.size() << " nilpotent groups of order " << kNilpotentMinOrder << ".." << kNilpotentMaxOrder;
  if (mutation) note << ", " << mutated << " mutated";
  note << ", " << bad << " failing";
  if (!first.empty()) note << " (first: " << first << ")";
  return {samples.size() >= kMinNilpotentGroups && bad == 0, note.str()};
}

// ---- criteria 2, 3, 4 share one suite run -----------------------------

struct SuiteRun {
  std::vector<Instance> instances;
  SuiteResult result;
};

SuiteRun run_presets(std::optional<StructureMutation> mutation) {
  SuiteRun run;
  for (auto seed : kSeeds)
    for (auto& inst : all_instances(seed)) run.instances.push_back(std::move(inst));
  SuiteOptions opts;
  opts.lie_mutation = mutation;
  run.result = run_suite(run.instances, opts);
  return run;
}

bool status_is(const CheckReport& r, const std::string& name, CheckStatus want) {
  const auto* c = r.find(name);
  return c && c->status == want;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

Outcome criterion_lemmas(const SuiteRun& run) {
  std::set<std::string> presets;
  std::size_t setups = 0, bad = 0;
  std::string first;
  for (std::size_t i = 0; i < run.instances.size(); ++i) {
    const auto& r = run.result.reports[i];
    presets.insert(run.instances[i].id.substr(0, 4));
    ++setups;
    bool ok = r.errors.empty();
    for (const auto* name : {"lemma.fg1", "lemma.fg2", "lemma.centralizer_transfer"})
      ok = ok && status_is(r, name, CheckStatus::Pass);
    if (!ok) {
      ++bad;
      if (first.empty()) first = r.instance_id;
    }
  }
  std::ostringstream note;
  note << setups << " setups over " << presets.size() << " presets, " << bad << " failing";
  if (!first.empty()) note << " (first: " << first << ")";
  return {setups >= kMinLemmaSetups && presets.size() == 3 && bad == 0, note.str()};
}

Outcome criterion_special(const SuiteRun& run) {
  std::size_t checks = 0, bad = 0;
  std::string first;
  for (const auto& r : run.result.reports) {
    bool ok = r.errors.empty();
    for (const auto& prefix : {std::string("derived."), std::string("gamma.")}) {
      bool saw_sylow = false, trivial_target = false;
      for (const auto* part : {"containment", "generation", "degree_bound"}) {
        ++checks;
        ok = ok && status_is(r, prefix + part, CheckStatus::Pass);
      }
      if (prefix == "derived.") {
        for (const auto& c : r.checks) {
          if (starts_with(c.name, "derived.sylow.r")) {
            saw_sylow = true;
            ++checks;
            ok = ok && c.status == CheckStatus::Pass;
          }
          if (c.name == "derived.sylow") trivial_target = c.status == CheckStatus::NotApplicable;
        }
        ok = ok && (saw_sylow || trivial_target);
      }
    }
    if (!ok) {
      ++bad;
      if (first.empty()) first = r.instance_id;
    }
  }
  std::ostringstream note;
  note << run.result.reports.size() << " instances, " << checks << " lattice checks, " << bad << " failing instances";
  if (!first.empty()) note << " (first: " << first << ")";
  return {bad == 0, note.str()};
}

Outcome criterion_theorems(const SuiteRun& run) {
  std::size_t met = 0, not_met = 0, bad = 0;
  std::string first;
  for (std::size_t i = 0; i < run.instances.size(); ++i) {
    const auto& r = run.result.reports[i];
    const auto& inst = run.instances[i];
    bool ok = r.errors.empty();
    std::size_t seen = 0;
    for (const auto& t : r.theorems) {
      ++seen;
      const std::string prefix = t.kind + ".";
      if (t.kind == "derived") ok = ok && t.degree == (inst.setup.k() == 3 ? 0 : 1) && inst.d == t.degree;
      if (!t.hypothesis_met()) {
        ++not_met;
        continue;
      }
      ++met;
      ok = ok && status_is(r, prefix + "nilpotent", CheckStatus::Pass) && t.conclusion_class.has_value() &&
           status_is(r, prefix + "key_relation", CheckStatus::Pass) &&
           status_is(r, prefix + "lie_class", CheckStatus::Pass) && status_is(r, prefix + "ceiling", CheckStatus::Pass);
    }
    ok = ok && seen == 2;
    if (!ok) {
      ++bad;
      if (first.empty()) first = r.instance_id;
    }
  }
  // Sanity ceiling over the shipped presets.
  Summary shipped;
  for (std::size_t i = 0; i < run.instances.size(); ++i)
    if (run.instances[i].id.find("-s" + std::to_string(kShippedSeed)) != std::string::npos)
      add_to_summary(shipped, run.result.reports[i]);
  bool ceiling = !shipped.empty();
  for (const auto& [key, row] : shipped) ceiling = ceiling && row.ceiling_ok;

  std::ostringstream note;
  note << met << " theorem runs with hypothesis met, " << not_met << " outside hypothesis, " << bad
       << " failing instances, ceiling " << (ceiling ? "holds" : "violated") << " on " << shipped.size() << " cells";
  if (!first.empty()) note << " (first: " << first << ")";
  std::cout << "    table (shipped presets, seed " << kShippedSeed << "):\n";
  std::istringstream csv(summary_to_csv(shipped));
  for (std::string line; std::getline(csv, line);) std::cout << "      " << line << '\n';
  return {bad == 0 && ceiling && met > 0, note.str()};
}

// ---- criterion 5 --------------------------------------------------------

Outcome criterion_oracle() {
  std::size_t instances = 0, compared = 0, bad = 0;
  std::string first;
  for (const auto& inst : all_instances(kShippedSeed)) {
    const auto& setup = inst.setup;
    const Group& g = setup.group();
    if (g.order() > kOracleMaxOrder) continue;
    ++instances;
    const oracle::TableGroup t(setup);
    std::size_t mismatches = 0;
    auto same = [&](const Group& h, const oracle::Mask& m) {
      ++compared;
      if (t.mask_of(h) != m) ++mismatches;
    };

    const auto lc = lower_central_series(g);
    const auto olc = t.lower_central();
    if (lc.terms.size() != olc.size()) ++mismatches;
    for (std::size_t i = 0; i < std::min(lc.terms.size(), olc.size()); ++i) same(lc.terms[i], olc[i]);
    const auto ds = derived_series(g);
    const auto ods = t.derived();
    if (ds.terms.size() != ods.size()) ++mismatches;
    for (std::size_t i = 0; i < std::min(ds.terms.size(), ods.size()); ++i) same(ds.terms[i], ods[i]);
    same(center(g), t.center());

    const auto maximal = maximal_subgroups(setup);
    std::vector<Group> cents;
    std::vector<oracle::Mask> ocents;
    for (const auto& b : maximal) {
      cents.push_back(fixed_subgroup(setup, b));
      ocents.push_back(t.fixed(b));
      same(cents.back(), ocents.back());
    }
    for (const auto& a : setup.nonidentity_elements()) {
      const auto b = cyclic_subgroup(a, setup.p());
      same(fixed_subgroup(setup, b), t.fixed(b));
    }
    const auto whole = whole_a(setup.k());
    same(fixed_subgroup(setup, whole), t.fixed(whole));

    for (std::size_t i = 0; i < cents.size(); ++i)
      for (std::size_t j = i; j < cents.size(); ++j) {
        same(commutator_subgroup(cents[i], cents[j], g), t.commutator(ocents[i], ocents[j]));
        if (i == 0) same(commutator_subgroup(cents[j], g, g), t.commutator(ocents[j], t.all()));
      }

    if (mismatches) {
      bad += mismatches;
      if (first.empty()) first = inst.id;
    }
  }
  std::ostringstream note;
  note << instances << " instances with |G| <= " << kOracleMaxOrder << ", " << compared << " subgroups compared, "
       << bad << " mismatches";
  if (!first.empty()) note << " (first: " << first << ")";
  return {instances > 0 && bad == 0, note.str()};
}

// ---- criterion 6 --------------------------------------------------------

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Sorted listing of file name -> content for every regular file in dir.
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir, bool strip_timing) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string text = read_file(e.path());
    if (strip_timing && e.path().extension() == ".json") {
      auto doc = nlohmann::json::parse(text);
      for (auto& c : doc["checks"]) c.erase("seconds");
      text = doc.dump(2);
    }
    out.emplace_back(e.path().filename().string(), std::move(text));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int run(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

Outcome criterion_determinism(const std::string& cli, const fs::path& work) {
  std::ostringstream note;
  bool ok = true;

  // in-process round trip of every generated setup
  std::size_t roundtrips = 0;
  for (const auto& inst : all_instances(kShippedSeed)) {
    const fs::path path = work / ("rt-" + inst.id + ".json");
    save_instance(path, inst.setup);
    const auto back = load_instance(path);
    bool same = back.group() == inst.setup.group() && back.p() == inst.setup.p() && back.k() == inst.setup.k() &&
                instance_to_json(back) == instance_to_json(inst.setup);
    for (const auto& b : maximal_subgroups(inst.setup))
      same = same && fixed_subgroup(back, b).order() == fixed_subgroup(inst.setup, b).order();
    ok = ok && same;
    ++roundtrips;
    fs::remove(path);
  }
  note << roundtrips << " instance files round-tripped";

  if (cli.empty()) {
    note << "; no CLI path given, gen/check comparison skipped";
    return {false, note.str()};
  }
  const std::string seed = std::to_string(kShippedSeed);
  std::vector<std::vector<std::pair<std::string, std::string>>> gens, reports;
  for (int pass = 0; pass < 2; ++pass) {
    const fs::path inst_dir = work / ("inst" + std::to_string(pass));
    const fs::path rep_dir = work / ("rep" + std::to_string(pass));
    fs::remove_all(inst_dir);
    fs::remove_all(rep_dir);
    if (run(cli + " gen --preset all --seed " + seed + " --out " + inst_dir.string()) != 0) {
      note << "; gen failed";
      return {false, note.str()};
    }
    std::string files;
    for (const auto& e : fs::directory_iterator(inst_dir)) files += " " + e.path().string();
    const int rc = run(cli + " check --seed " + seed + " --format both --out " + rep_dir.string() + " --instances" +
                       files);
    if (rc != 0) {
      note << "; check exited with status " << rc;
      ok = false;
    }
    gens.push_back(snapshot(inst_dir, false));
    reports.push_back(snapshot(rep_dir, true));
  }
  const bool gen_same = gens[0] == gens[1] && !gens[0].empty();
  const bool rep_same = reports[0] == reports[1] && !reports[0].empty();
  note << "; gen " << (gen_same ? "identical" : "DIFFERS") << " (" << gens[0].size() << " files), reports "
       << (rep_same ? "identical" : "DIFFER") << " (" << reports[0].size() << " files, timing stripped)";
  return {ok && gen_same && rep_same, note.str()};
}

// ---- criterion 7 --------------------------------------------------------

Outcome criterion_sensitivity() {
  const auto c1 = criterion_axioms(kMutation);
  const auto mutated = run_presets(kMutation);
  const auto c2 = criterion_lemmas(mutated);
  std::size_t lie_fails = 0;
  for (const auto& r : mutated.result.reports)
    for (const auto& c : r.checks)
      if (starts_with(c.name, "lie.") && c.status == CheckStatus::Fail) ++lie_fails;
  std::ostringstream note;
  note << "with [b_0,b_1] in component 1 shifted: criterion 1 " << (c1.pass ? "still passes" : "fails") << " ("
       << c1.note << "); suite records " << lie_fails << " failing Lie checks, criterion 2 "
       << (c2.pass ? "still passes" : "fails");
  return {!c1.pass || !c2.pass || lie_fails > 0, note.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path work = fs::temp_directory_path() / "coprime_lab_acceptance";
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli")
      cli = argv[i + 1];
    else if (flag == "--work")
      work = argv[i + 1];
  }
  fs::create_directories(work);

  const auto start = std::chrono::steady_clock::now();
  bool all = true;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::printf("criterion %d %-28s %s  %s [%.1fs]\n", n, title, o.pass ? "PASS" : "FAIL", o.note.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, "(Lie ring axioms)", [] { return criterion_axioms(std::nullopt); });
  std::optional<SuiteRun> suite;
  auto get_suite = [&]() -> const SuiteRun& {
    if (!suite) suite = run_presets(std::nullopt);
    return *suite;
  };
  report(2, "(coprime lemmas)", [&] { return criterion_lemmas(get_suite()); });
  report(3, "(special subgroups)", [&] { return criterion_special(get_suite()); });
  report(4, "(theorem conclusions)", [&] { return criterion_theorems(get_suite()); });
  report(5, "(oracle equivalence)", [] { return criterion_oracle(); });
  report(6, "(determinism, round trip)", [&] { return criterion_determinism(cli, work); });
  report(7, "(fault sensitivity)", [] { return criterion_sensitivity(); });

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s in %.1fs\n", all ? "all criteria pass" : "some criteria FAIL", total);
  return all ? 0 : 1;
}
