#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coprime_lab/config.hpp"
#include "coprime_lab/errors.hpp"
#include "coprime_lab/harness.hpp"
#include "coprime_lab/instance_io.hpp"

namespace fs = std::filesystem;
using namespace cplab;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

StructureMutation parse_mutation(const std::string& text) {
  std::vector<long> v;
  std::istringstream in(text);
  for (std::string cell; std::getline(in, cell, ',');) v.push_back(std::stol(cell));
  if (v.size() != 6) throw ValidationError("--mutate-lie wants i,a,j,b,coord,delta");
  return {static_cast<int>(v[0]), static_cast<std::size_t>(v[1]), static_cast<int>(v[2]),
          static_cast<std::size_t>(v[3]), static_cast<std::size_t>(v[4]), static_cast<int>(v[5])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coprime action lab: generate instances and check them"};
  app.require_subcommand(1);

  std::uint64_t cap = 0;
  app.add_option("--cap", cap, "Enumeration cap on group orders (overrides COPRIME_LAB_CAP)");

  // gen
  auto* gen = app.add_subcommand("gen", "Write instance files for a preset");
  std::string gen_preset;
  std::uint64_t gen_seed = 1;
  std::string gen_out = ".";
  gen->add_option("--preset", gen_preset, "Preset name")->required();
  gen->add_option("--seed", gen_seed, "Generation seed");
  gen->add_option("--out", gen_out, "Output directory");

  // check
  auto* check = app.add_subcommand("check", "Run the verification suite");
  std::vector<std::string> inst_paths;
  std::string check_preset;
  std::uint64_t check_seed = 1;
  int max_degree = 1;
  std::string mode = "both";
  std::optional<int> d;
  std::string check_out;
  unsigned jobs = 0;
  std::string format = "both";
  std::string mutate;
  check->add_option("--instances", inst_paths, "Instance files")->check(CLI::ExistingFile);
  check->add_option("--preset", check_preset, "Preset name (generated in memory)");
  check->add_option("--seed", check_seed, "Seed for presets and random subgroup choices");
  check->add_option("--max-degree", max_degree, "Lattice degrees computed beyond the theorem degree")
      ->check(CLI::Range(0, 8));
  check->add_option("--mode", mode, "Theorem pipelines to run")->check(CLI::IsMember({"derived", "gamma", "both"}));
  check->add_option("--d", d, "Derived-series index (default: largest d with 2^d + 2 <= k)");
  check->add_option("--out", check_out, "Directory for reports and summary.csv");
  check->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "both"}));
  check->add_option("--mutate-lie", mutate, "Fault injection i,a,j,b,coord,delta")->group("");

  // report
  auto* report = app.add_subcommand("report", "Merge summary CSV files");
  std::vector<std::string> csvs;
  std::string report_out;
  report->add_option("csv", csvs, "Summary CSV files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "Merged CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cap) set_enumeration_cap(cap);

    if (*gen) {
      fs::create_directories(gen_out);
      for (const auto& inst : preset(gen_preset, gen_seed)) {
        const fs::path path = fs::path(gen_out) / (inst.id + ".json");
        save_instance(path, inst.setup);
        std::cout << path.string() << '\n';
      }
      return 0;
    }

    if (*check) {
      std::vector<Instance> instances;
      if (!check_preset.empty()) instances = preset(check_preset, check_seed);
      for (const auto& p : inst_paths)
        instances.push_back({fs::path(p).stem().string(), "file", load_instance(p), std::nullopt});

      SuiteOptions opts;
      opts.mode = mode == "derived" ? TheoremMode::Derived : mode == "gamma" ? TheoremMode::Gamma : TheoremMode::Both;
      opts.d = d;
      opts.extra_degrees = max_degree;
      opts.jobs = jobs;
      opts.seed = check_seed;
      if (!mutate.empty()) opts.lie_mutation = parse_mutation(mutate);

      const auto result = run_suite(instances, opts);
      const bool want_json = format != "csv";
      const bool want_csv = format != "json";
      if (!check_out.empty()) fs::create_directories(check_out);
      for (const auto& r : result.reports) {
        std::cerr << (r.failed() ? "FAIL " : "ok   ") << r.instance_id << '\n';
        for (const auto& c : r.checks)
          if (c.status == CheckStatus::Fail) std::cerr << "       " << c.name << ": " << c.detail << '\n';
        for (const auto& e : r.errors) std::cerr << "       error: " << e << '\n';
        if (want_json && !check_out.empty())
          write_text(fs::path(check_out) / (r.instance_id + ".report.json"), report_to_json(r).dump(2) + "\n");
      }
      const std::string csv = summary_to_csv(result.summary);
      if (want_csv) {
        if (check_out.empty())
          std::cout << csv;
        else
          write_text(fs::path(check_out) / "summary.csv", csv);
      }
      if (want_json && check_out.empty())
        for (const auto& r : result.reports) std::cout << report_to_json(r).dump() << '\n';
      return result.failed() ? 1 : 0;
    }

    if (*report) {
      Summary merged;
      for (const auto& path : csvs) merge_summary(merged, summary_from_csv(read_text(path)));
      const std::string csv = summary_to_csv(merged);
      if (report_out.empty())
        std::cout << csv;
      else
        write_text(report_out, csv);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "coprime_lab: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
