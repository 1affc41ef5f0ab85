#include "gcut/bench.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "gcut/model.h"
#include "gcut/solve.h"

namespace gcut {

std::vector<Variant> standard_variants() {
  return {{"N.H.", {HybridMode::kNone, false}},
          {"C.H.", {HybridMode::kConservative, false}},
          {"A.H.", {HybridMode::kAggressive, false}}};
}

Variant variant_from_label(const std::string& label) {
  std::string base = label;
  bool binding = false;
  if (!base.empty() && base.back() == 'b') {
    binding = true;
    base.pop_back();
  }
  if (base == "N.H." && !binding) return {label, {HybridMode::kNone, false}};
  if (base == "C.H.") return {label, {HybridMode::kConservative, binding}};
  if (base == "A.H.") return {label, {HybridMode::kAggressive, binding}};
  throw std::invalid_argument("unknown variant '" + label +
                              "' (expected N.H., C.H., A.H., C.H.b or A.H.b)");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

std::string number(double v, int precision) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << v;
  return out.str();
}

std::string objective_text(const std::optional<double>& v) {
  if (!v) return "";
  if (std::abs(*v - std::round(*v)) < 1e-9)
    return std::to_string(static_cast<int64_t>(std::llround(*v)));
  return number(*v, 6);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

RunReport run_matrix(const std::vector<NamedInstance>& instances,
                     const std::vector<Variant>& variants,
                     const std::vector<int>& seeds,
                     const BenchOptions& options) {
  namespace fs = std::filesystem;
  RunReport report;
  report.stats_only = options.backend == BackendKind::kStatsOnly;
  report.time_limit = options.time_limit;
  for (const Variant& v : variants) report.variants.push_back(v.label);
  const fs::path work = options.work_dir.empty()
                            ? fs::temp_directory_path() / "gcut_bench"
                            : fs::path(options.work_dir);
  if (options.backend == BackendKind::kCommand) fs::create_directories(work);

  for (const NamedInstance& named : instances) {
    for (const Variant& variant : variants) {
      RunRecord base;
      base.instance = named.name;
      base.variant = variant.label;
      std::optional<PlateGraph> graph;
      std::optional<MilpModel> model;
      const auto start = Clock::now();
      try {
        graph = build_graph(named.instance, options.formulation, variant.config,
                            options.enumeration);
        model = build_model(*graph, named.instance, variant.config);
        const ModelStats stats = model_stats(*model, *graph);
        base.extractions = stats.extractions;
        base.cuts = stats.cuts;
        base.plates = stats.plates;
        base.hybridised = graph->stats.hybridised;
        base.single_residual = graph->stats.single_residual;
        base.hybridised_pct = stats.hybridised_pct;
        base.single_residual_pct = stats.single_residual_pct;
      } catch (const std::exception& e) {
        base.status = "error";
        base.error = e.what();
      }
      base.build_seconds = seconds_since(start);

      for (int seed : seeds) {
        RunRecord rec = base;
        rec.seed = seed;
        if (!rec.error.empty() || !model) {
          report.records.push_back(rec);
          continue;
        }
        if (options.backend == BackendKind::kStatsOnly) {
          rec.status = "skipped";
          report.records.push_back(rec);
          continue;
        }
        const auto solve_start = Clock::now();
        try {
          VarAssignment a;
          if (options.backend == BackendKind::kSearch) {
            a = search_model(*graph, named.instance, *model);
          } else {
            const fs::path mps =
                work / (sanitize(named.name) + "_" + sanitize(variant.label) +
                        "_" + std::to_string(seed) + ".mps");
            write_mps(*model, mps.string());
            SolveRequest req;
            req.mps_path = mps.string();
            req.backend = options.command;
            req.time_limit = options.time_limit;
            req.seed = seed;
            req.model = &*model;
            a = external_solve(req);
          }
          rec.status = to_string(a.status);
          if (a.status != SolveStatus::kInfeasible) rec.objective = a.objective;
        } catch (const SolveError& e) {
          rec.status =
              e.kind() == SolveError::Kind::kTimeout ? "timeout" : "error";
          rec.error = e.what();
        } catch (const std::exception& e) {
          rec.status = "error";
          rec.error = e.what();
        }
        rec.solve_seconds = seconds_since(solve_start);
        report.records.push_back(rec);
      }
    }
  }

  std::map<std::pair<std::string, int>, std::optional<double>> reference;
  for (const RunRecord& r : report.records)
    if (r.variant == "N.H.") reference[{r.instance, r.seed}] = r.objective;
  for (RunRecord& r : report.records) {
    auto it = reference.find({r.instance, r.seed});
    if (r.variant == "N.H." || it == reference.end()) continue;
    if (r.objective && it->second)
      r.differs_from_nh = std::abs(*r.objective - *it->second) > 1e-6;
  }
  return report;
}

std::string to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "# " << kReportSchema << '\n';
  out << "instance,variant,seed,build_s,solve_s,status,objective,extr,cuts,"
         "hybridised,single_residual,plates,h_pct,k_pct,differs_from_nh,error\n";
  for (const RunRecord& r : report.records) {
    out << csv_field(r.instance) << ',' << csv_field(r.variant) << ','
        << r.seed << ',';
    if (!report.stats_only)
      out << number(r.build_seconds, 6) << ',' << number(r.solve_seconds, 6);
    else
      out << ',';
    out << ',' << r.status << ',' << objective_text(r.objective) << ','
        << r.extractions << ',' << r.cuts << ',' << r.hybridised << ','
        << r.single_residual << ',' << r.plates << ','
        << number(r.hybridised_pct, 2) << ','
        << number(r.single_residual_pct, 2) << ','
        << (r.differs_from_nh ? 1 : 0) << ',' << csv_field(r.error) << '\n';
  }
  return out.str();
}

namespace {

double effective_time(const RunReport& report, const RunRecord& r) {
  if (report.stats_only) return 0.0;
  if (r.status == "optimal" || r.status == "feasible" ||
      r.status == "infeasible")
    return std::min(r.solve_seconds, report.time_limit);
  return report.time_limit;
}

// instance -> variant -> times, both in first-seen order.
struct Grouped {
  std::vector<std::string> instances;
  std::map<std::string, std::map<std::string, std::vector<double>>> times;
  std::map<std::string, std::map<std::string, const RunRecord*>> first;
};

Grouped group(const RunReport& report) {
  Grouped g;
  for (const RunRecord& r : report.records) {
    if (!g.times.count(r.instance)) g.instances.push_back(r.instance);
    g.times[r.instance][r.variant].push_back(effective_time(report, r));
    g.first[r.instance].emplace(r.variant, &r);
  }
  return g;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::vector<VariantSummary> aggregate(const RunReport& report) {
  const Grouped g = group(report);
  std::vector<VariantSummary> out;
  std::map<std::string, int64_t> hybridised, single;
  for (const std::string& v : report.variants) out.push_back({v});
  for (const std::string& inst : g.instances) {
    const auto& per = g.times.at(inst);
    double best = 0.0;
    int best_idx = -1;
    for (std::size_t k = 0; k < report.variants.size(); ++k) {
      auto it = per.find(report.variants[k]);
      if (it == per.end()) continue;
      const double m = mean(it->second);
      if (best_idx < 0 || m < best) {
        best = m;
        best_idx = static_cast<int>(k);
      }
    }
    for (std::size_t k = 0; k < report.variants.size(); ++k) {
      auto it = per.find(report.variants[k]);
      if (it == per.end()) continue;
      const double m = mean(it->second);
      VariantSummary& s = out[k];
      s.total_time += m;
      s.delta_best_time += m - best;
      if (static_cast<int>(k) == best_idx) ++s.best_count;
      const RunRecord* r = g.first.at(inst).at(report.variants[k]);
      s.extractions += r->extractions;
      s.cuts += r->cuts;
      s.plates += r->plates;
      hybridised[s.variant] += r->hybridised;
      single[s.variant] += r->single_residual;
    }
  }
  for (VariantSummary& s : out) {
    if (s.cuts > 0) {
      s.hybridised_pct = 100.0 * hybridised[s.variant] / s.cuts;
      s.single_residual_pct = 100.0 * single[s.variant] / s.cuts;
    }
  }
  return out;
}

std::vector<VariationRow> variation(const RunReport& report) {
  const Grouped g = group(report);
  std::vector<VariationRow> rows;
  for (const std::string& inst : g.instances) {
    for (const std::string& v : report.variants) {
      auto it = g.times.at(inst).find(v);
      if (it == g.times.at(inst).end()) continue;
      VariationRow row{inst, v, mean(it->second)};
      double ss = 0.0;
      for (double x : it->second) ss += (x - row.mean) * (x - row.mean);
      row.stddev = std::sqrt(ss / static_cast<double>(it->second.size()));
      row.cv = row.mean > 0.0 ? row.stddev / row.mean : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string summarize(const RunReport& report) {
  std::ostringstream out;
  out << "| Variant | T. T. | Δ B. T. | #b | #extr. | #cuts | h % | k % | #plates |\n"
      << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const VariantSummary& s : aggregate(report))
    out << "| " << s.variant << " | " << number(s.total_time, 2) << " | "
        << number(s.delta_best_time, 2) << " | " << s.best_count << " | "
        << s.extractions << " | " << s.cuts << " | "
        << number(s.hybridised_pct, 2) << " | "
        << number(s.single_residual_pct, 2) << " | " << s.plates << " |\n";
  if (report.stats_only) return out.str();
  out << "\n| Instance | Variant | mean (s) | std. dev. | CV |\n"
      << "|---|---|---:|---:|---:|\n";
  for (const VariationRow& r : variation(report))
    out << "| " << r.instance << " | " << r.variant << " | "
        << number(r.mean, 3) << " | " << number(r.stddev, 3) << " | "
        << number(r.cv, 3) << " |\n";
  return out.str();
}

}  // namespace gcut
