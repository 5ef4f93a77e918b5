#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "coprime_lab/check_status.hpp"
#include "coprime_lab/instance_gen.hpp"
#include "coprime_lab/lie_ring.hpp"
#include "coprime_lab/special_subgroups.hpp"

namespace cplab {

inline constexpr int kReportSchema = 1;

struct CheckEntry {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  double seconds = 0.0;
};

/// Outcome of one of the two theorem pipelines on one instance.
struct TheoremSummary {
  std::string kind;  // "derived" or "gamma"
  /// d for the derived case, k - 2 for the gamma case.
  int degree = 0;
  /// Largest class of C_G(a)^(d) (resp. gamma_{k-2}(C_G(a))) over a in A^#,
  /// absent when one of them is not nilpotent.
  std::optional<int> hypothesis_c;
  std::optional<int> conclusion_class;
  std::size_t family_count = 0;
  bool hypothesis_met() const noexcept { return hypothesis_c.has_value(); }
};

struct CheckReport {
  std::string instance_id;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint64_t order = 0;
  std::vector<TheoremSummary> theorems;
  std::vector<CheckEntry> checks;
  std::vector<std::string> errors;

  bool failed() const;
  const CheckEntry* find(const std::string& name) const;
};

struct VerifyOptions {
  /// Extra lattice degrees beyond what the theorem needs.
  int extra_degrees = 1;
};

/// Theorem pipeline for G^(d).  PreconditionError unless k >= 3 and 2^d + 2 <= k.
CheckReport verify_derived_theorem(const ActionSetup& setup, int d, const VerifyOptions& options = {});
/// Theorem pipeline for gamma_{k-2}(G).  PreconditionError unless k >= 3.
CheckReport verify_gamma_theorem(const ActionSetup& setup, const VerifyOptions& options = {});

struct LemmaOptions {
  std::size_t random_subgroups = 5;
  std::uint64_t seed = 1;
  std::optional<StructureMutation> lie_mutation;
};

/// FG1 on every A-invariant normal subgroup found by search, FG2 on G and
/// random A-invariant subgroups, centralizer transfer, class transfer and the
/// span lemma on L(T) for T = G, or T = F(G) when G is not nilpotent.
CheckReport run_lemma_checks(const ActionSetup& setup, const LemmaOptions& options = {});

/// The A-invariant normal subgroups used for FG1.
std::vector<Group> invariant_normal_subgroups(const ActionSetup& setup, std::uint64_t seed);

enum class TheoremMode { Derived, Gamma, Both };

struct SuiteOptions {
  TheoremMode mode = TheoremMode::Both;
  /// Overrides each instance's own d.
  std::optional<int> d;
  int extra_degrees = 1;
  bool lemmas = true;
  unsigned jobs = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
  std::optional<StructureMutation> lie_mutation;
};

/// One row of the (kind, c, k, p) table.
struct SummaryRow {
  std::string kind;
  int c = 0;
  std::uint32_t k = 0;
  std::uint32_t p = 0;
  std::size_t instances = 0;
  int max_conclusion_class = 0;
  std::size_t max_family_count = 0;
  /// conclusion class <= 2 (c + 1) family_count on every instance in the cell.
  bool ceiling_ok = true;
};

using SummaryKey = std::tuple<std::string, int, std::uint32_t, std::uint32_t>;
using Summary = std::map<SummaryKey, SummaryRow>;

struct SuiteResult {
  std::vector<CheckReport> reports;  // in input order
  Summary summary;
  bool failed() const;
};

/// Default d for an instance: the largest d with 2^d + 2 <= k (0 below k = 3).
int default_derived_index(std::uint32_t k);

/// Runs both theorem pipelines where their hypotheses on k apply, plus the
/// lemma checks.  Per-instance exceptions are recorded in the report.
CheckReport run_instance(const Instance& instance, const SuiteOptions& options);
SuiteResult run_suite(const std::vector<Instance>& instances, const SuiteOptions& options);

void add_to_summary(Summary& summary, const CheckReport& report);
void merge_summary(Summary& into, const Summary& other);

nlohmann::json report_to_json(const CheckReport& report, bool with_timing = true);
std::string summary_to_csv(const Summary& summary);
/// Throws ValidationError on a malformed table.
Summary summary_from_csv(const std::string& text);

nlohmann::json lattice_to_json(const SpecialLattice& lattice);
nlohmann::json ring_to_json(const GradedLieRing& ring);

}  // namespace cplab
