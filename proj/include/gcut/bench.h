#ifndef GCUT_BENCH_H_
#define GCUT_BENCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcut/graph.h"
#include "gcut/instance.h"

namespace gcut {

struct Variant {
  std::string label;  // "N.H.", "C.H.", "A.H."; binding variants end in "b"
  HybridisationConfig config;
};

// N.H., C.H. and A.H. with non-binding POCs.
std::vector<Variant> standard_variants();
Variant variant_from_label(const std::string& label);

struct NamedInstance {
  std::string name;
  Instance instance;
};

enum class BackendKind { kStatsOnly, kCommand, kSearch };

struct BenchOptions {
  Formulation formulation = Formulation::kBba;
  BackendKind backend = BackendKind::kStatsOnly;
  std::string command;  // used with kCommand
  double time_limit = 60.0;
  std::string work_dir;  // MPS scratch space; temp dir when empty
  EnumerationOptions enumeration;
};

struct RunRecord {
  std::string instance;
  std::string variant;
  int seed = 0;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
  std::string status;  // optimal, feasible, infeasible, timeout, error, skipped
  std::optional<double> objective;
  int64_t extractions = 0;
  int64_t cuts = 0;
  int64_t hybridised = 0;
  int64_t single_residual = 0;
  int64_t plates = 0;
  double hybridised_pct = 0.0;
  double single_residual_pct = 0.0;
  bool differs_from_nh = false;
  std::string error;
};

struct RunReport {
  std::vector<std::string> variants;  // in matrix order
  std::vector<RunRecord> records;
  bool stats_only = true;
  double time_limit = 0.0;
};

RunReport run_matrix(const std::vector<NamedInstance>& instances,
                     const std::vector<Variant>& variants,
                     const std::vector<int>& seeds, const BenchOptions& options);

inline constexpr const char* kReportSchema = "gcut-report/1";

// Deterministic CSV; timings are left blank in stats-only reports so the
// bytes depend only on the inputs.
std::string to_csv(const RunReport& report);

struct VariantSummary {
  std::string variant;
  double total_time = 0.0;      // T. T.
  double delta_best_time = 0.0; // Δ B. T.
  int best_count = 0;           // #b
  int64_t extractions = 0;
  int64_t cuts = 0;
  double hybridised_pct = 0.0;
  double single_residual_pct = 0.0;
  int64_t plates = 0;
};

struct VariationRow {
  std::string instance;
  std::string variant;
  double mean = 0.0;
  double stddev = 0.0;
  double cv = 0.0;  // stddev / mean, 0 when the mean is 0
};

// Per-variant aggregates. Failed or timed-out runs count as taking the time
// limit. Ties for the best mean go to the variant listed first.
std::vector<VariantSummary> aggregate(const RunReport& report);
std::vector<VariationRow> variation(const RunReport& report);

// Markdown tables: the variant summary followed by per-instance variation.
std::string summarize(const RunReport& report);

}  // namespace gcut

#endif  // GCUT_BENCH_H_
