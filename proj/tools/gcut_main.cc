// Command-line front end for the guillotine cutting model toolkit.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcut/bench.h"
#include "gcut/discretize.h"
#include "gcut/graph.h"
#include "gcut/instance.h"
#include "gcut/model.h"
#include "gcut/oracle.h"
#include "gcut/solve.h"
#include "gcut/verify.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Common {
  std::string instance_path;
  std::string format = "classic";
  std::string formulation = "bba";
  std::string hybrid = "none";
  bool binding = false;
  bool rotation = false;
  bool unweighted = false;
  int64_t max_variables = 5'000'000;
};

void add_instance_options(CLI::App* cmd, Common& c, bool model_flags) {
  cmd->add_option("instance", c.instance_path, "Instance file")->required();
  cmd->add_option("--format", c.format, "Instance layout")
      ->check(CLI::IsMember({"classic", "extended"}));
  cmd->add_flag("--rotation", c.rotation, "Allow 90 degree piece rotation");
  cmd->add_flag("--unweighted", c.unweighted, "Use piece area as profit");
  if (!model_flags) return;
  cmd->add_option("--formulation", c.formulation, "Flow formulation")
      ->check(CLI::IsMember({"fmt", "bba"}));
  cmd->add_option("--hybrid", c.hybrid, "Hybridisation mode")
      ->check(CLI::IsMember({"none", "conservative", "aggressive"}));
  cmd->add_flag("--binding", c.binding, "Piece-outlining cuts must sell");
  cmd->add_option("--max-variables", c.max_variables,
                  "Enumeration cap on plates, cuts and extractions");
}

gcut::Instance load(const Common& c) {
  const auto format = c.format == "extended" ? gcut::InstanceFormat::kExtended
                                             : gcut::InstanceFormat::kClassic;
  gcut::Instance inst = gcut::parse_instance(c.instance_path, format, c.rotation);
  if (c.unweighted) inst = gcut::make_unweighted(std::move(inst));
  return gcut::expand_rotation(inst);
}

gcut::HybridisationConfig hybrid_config(const Common& c) {
  gcut::HybridisationConfig cfg;
  if (c.hybrid == "conservative") cfg.mode = gcut::HybridMode::kConservative;
  if (c.hybrid == "aggressive") cfg.mode = gcut::HybridMode::kAggressive;
  cfg.binding = c.binding;
  return cfg;
}

gcut::Formulation formulation(const Common& c) {
  return c.formulation == "fmt" ? gcut::Formulation::kFmt
                                : gcut::Formulation::kBba;
}

json instance_json(const gcut::Instance& inst) {
  json j;
  j["plate_length"] = inst.plate_length;
  j["plate_width"] = inst.plate_width;
  j["rotation_allowed"] = inst.rotation_allowed;
  j["constrained"] = inst.constrained;
  j["pieces"] = json::array();
  for (const gcut::PieceType& p : inst.pieces) {
    json pj{{"id", p.id},         {"length", p.length}, {"width", p.width},
            {"profit", p.profit}, {"demand", p.demand}};
    if (p.twin_of) pj["twin_of"] = *p.twin_of;
    j["pieces"].push_back(pj);
  }
  return j;
}

json stats_json(const gcut::ModelStats& s) {
  return json{{"#extr.", s.extractions},
              {"#cuts", s.cuts},
              {"#plates", s.plates},
              {"h%", s.hybridised_pct},
              {"k%", s.single_residual_pct},
              {"variables", s.variables},
              {"constraints", s.constraints}};
}

json report_json(const gcut::SolutionReport& r) {
  return json{{"ok", r.ok}, {"value", r.value}, {"violations", r.violations}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guillotine cutting flow-model compiler, oracle and verifier"};
  app.require_subcommand(1);

  Common c;
  std::string mps_out, backend_cmd, sol_in, svg_out, placement_in, report_csv;
  std::string variants = "N.H.,C.H.,A.H.";
  std::string seeds_text = "0";
  int seed = 0;
  double time_limit = 60.0;
  bool mps_strict = false, lp = false, no_solve = false;

  auto* parse = app.add_subcommand("parse", "Validate and print an instance");
  add_instance_options(parse, c, false);

  auto* discretize = app.add_subcommand(
      "discretize", "Print cut positions of the original plate as JSON");
  add_instance_options(discretize, c, false);

  auto* enumerate = app.add_subcommand("enumerate", "Print graph statistics");
  add_instance_options(enumerate, c, true);

  auto* build = app.add_subcommand("build", "Build the model and write MPS");
  add_instance_options(build, c, true);
  build->add_option("--mps-out", mps_out, "MPS output path")->required();
  build->add_flag("--mps-strict", mps_strict, "Eight-character names");
  build->add_flag("--lp", lp, "Omit integrality markers");

  auto* solve = app.add_subcommand(
      "solve", "Build, solve through a backend, decode and verify");
  add_instance_options(solve, c, true);
  solve->add_option("--backend-cmd", backend_cmd,
                    "Command template with {mps} and {sol}, or 'search'");
  solve->add_option("--time-limit", time_limit, "Seconds");
  solve->add_option("--seed", seed, "Solver seed");
  solve->add_option("--mps-out", mps_out, "Keep the MPS file here");
  solve->add_option("--svg-out", svg_out, "Render the decoded tree");
  solve->add_flag("--lp", lp, "Solve the LP relaxation only");

  auto* verify = app.add_subcommand(
      "verify", "Decode a solution file against the model and check it");
  add_instance_options(verify, c, true);
  verify->add_option("--solution", sol_in, "Solution file")->required();
  verify->add_option("--svg-out", svg_out, "Render the decoded tree");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum");
  add_instance_options(oracle, c, false);
  int64_t max_demand = 10;
  oracle->add_option("--max-demand", max_demand, "Total demand bound");

  auto* audit = app.add_subcommand("audit-guillotine",
                                   "Check a placement for guillotinability");
  audit->add_option("placement", placement_in, "Placement file")->required();

  auto* render = app.add_subcommand("render", "Render a placement as SVG");
  render->add_option("placement", placement_in, "Placement file")->required();
  render->add_option("--svg-out", svg_out, "SVG output")->required();

  auto* bench = app.add_subcommand("bench", "Run a variant matrix");
  std::vector<std::string> bench_files;
  bench->add_option("instances", bench_files, "Instance files")->required();
  bench->add_option("--format", c.format, "Instance layout")->check(CLI::IsMember({"classic", "extended"}));
  bench->add_flag("--rotation", c.rotation, "Allow 90 degree piece rotation");
  bench->add_flag("--unweighted", c.unweighted, "Use piece area as profit");
  bench->add_option("--formulation", c.formulation)
      ->check(CLI::IsMember({"fmt", "bba"}));
  bench->add_option("--variants", variants, "Comma-separated variant labels");
  bench->add_option("--seed", seeds_text, "Comma-separated seeds");
  bench->add_option("--backend-cmd", backend_cmd,
                    "Command template, or 'search'");
  bench->add_option("--time-limit", time_limit, "Seconds per run");
  bench->add_option("--report-csv", report_csv, "CSV output path");
  bench->add_option("--mps-out", mps_out, "Directory for MPS files");
  bench->add_flag("--no-solve", no_solve, "Model statistics only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse) {
      std::cout << instance_json(load(c)).dump(2) << '\n';
    } else if (*discretize) {
      const gcut::Instance inst = load(c);
      json out;
      for (auto o : {gcut::Orientation::kHorizontal, gcut::Orientation::kVertical}) {
        const int64_t dim = o == gcut::Orientation::kHorizontal ? inst.plate_length
                                                                : inst.plate_width;
        const auto caps = gcut::fitting_caps(inst.plate_length, inst.plate_width,
                                             inst.pieces, o);
        const auto positions = gcut::cut_positions(dim, caps, o);
        const auto restricted = gcut::restricted_positions(
            inst.plate_length, inst.plate_width, inst.pieces, o);
        out[o == gcut::Orientation::kHorizontal ? "horizontal" : "vertical"] = {
            {"dimension", dim},
            {"positions", positions.positions},
            {"restricted", restricted.positions},
            {"normalized", gcut::normalize_dim(dim, caps)}};
      }
      std::cout << out.dump(2) << '\n';
    } else if (*enumerate || *build) {
      const gcut::Instance inst = load(c);
      const auto cfg = hybrid_config(c);
      const auto g = gcut::build_graph(inst, formulation(c), cfg,
                                       {c.max_variables});
      const auto m = gcut::build_model(g, inst, cfg);
      if (*build) gcut::write_mps(m, mps_out, {mps_strict, lp});
      std::cout << stats_json(gcut::model_stats(m, g)).dump(2) << '\n';
    } else if (*solve || *verify) {
      const gcut::Instance inst = load(c);
      const auto cfg = hybrid_config(c);
      const auto g = gcut::build_graph(inst, formulation(c), cfg,
                                       {c.max_variables});
      const auto m = gcut::build_model(g, inst, cfg);
      gcut::VarAssignment a;
      if (*verify) {
        a = gcut::parse_solution_text(read_file(sol_in), gcut::SolveMode::kMip, &m);
      } else if (backend_cmd == "search") {
        a = gcut::search_model(g, inst, m);
      } else {
        if (backend_cmd.empty()) backend_cmd = gcut::default_backend();
        if (backend_cmd.empty())
          throw std::runtime_error("no backend: pass --backend-cmd or set GCUT_BACKEND_CMD");
        std::string path = mps_out;
        if (path.empty())
          path = (std::filesystem::temp_directory_path() /
                  ("gcut_solve_" + std::to_string(::getpid()) + ".mps")).string();
        gcut::write_mps(m, path, {false, lp});
        gcut::SolveRequest req;
        req.mps_path = path;
        req.backend = backend_cmd;
        req.mode = lp ? gcut::SolveMode::kLp : gcut::SolveMode::kMip;
        req.time_limit = time_limit;
        req.seed = seed;
        req.model = &m;
        a = gcut::external_solve(req);
        if (mps_out.empty()) std::filesystem::remove(path);
      }
      json out{{"status", gcut::to_string(a.status)}, {"objective", a.objective}};
      if (!lp && a.status != gcut::SolveStatus::kInfeasible) {
        const auto tree = gcut::decode(a, m, g, inst);
        const auto report = gcut::check_solution(
            tree, inst, static_cast<int64_t>(std::llround(a.objective)));
        out["check"] = report_json(report);
        out["guillotinable"] = gcut::is_guillotinable(gcut::to_placement(tree));
        if (!svg_out.empty())
          gcut::write_text_file(svg_out, gcut::render_svg(tree, &inst));
        std::cout << out.dump(2) << '\n';
        return report.ok ? 0 : 1;
      }
      std::cout << out.dump(2) << '\n';
    } else if (*oracle) {
      gcut::OracleOptions opts;
      opts.max_total_demand = max_demand;
      std::cout << json{{"optimum", gcut::oracle_optimal(load(c), opts)}}.dump(2)
                << '\n';
    } else if (*audit) {
      const auto p = gcut::parse_placement(placement_in);
      const auto problems = gcut::placement_violations(p);
      json out{{"valid", problems.empty()}, {"violations", problems}};
      if (problems.empty()) out["guillotinable"] = gcut::is_guillotinable(p);
      std::cout << out.dump(2) << '\n';
      return problems.empty() ? 0 : 1;
    } else if (*render) {
      gcut::write_text_file(svg_out,
                            gcut::render_svg(gcut::parse_placement(placement_in)));
    } else if (*bench) {
      std::vector<gcut::NamedInstance> instances;
      for (const std::string& f : bench_files) {
        Common one = c;
        one.instance_path = f;
        instances.push_back({std::filesystem::path(f).stem().string(), load(one)});
      }
      std::vector<gcut::Variant> vs;
      for (const std::string& label : split_list(variants))
        vs.push_back(gcut::variant_from_label(label));
      std::vector<int> seeds;
      for (const std::string& s : split_list(seeds_text)) seeds.push_back(std::stoi(s));
      gcut::BenchOptions opts;
      opts.formulation = formulation(c);
      opts.time_limit = time_limit;
      opts.work_dir = mps_out;
      if (no_solve) {
        opts.backend = gcut::BackendKind::kStatsOnly;
      } else if (backend_cmd == "search") {
        opts.backend = gcut::BackendKind::kSearch;
      } else {
        opts.backend = gcut::BackendKind::kCommand;
        opts.command = backend_cmd.empty() ? gcut::default_backend() : backend_cmd;
        if (opts.command.empty())
          throw std::runtime_error("no backend: pass --backend-cmd, 'search' or --no-solve");
      }
      const auto report = gcut::run_matrix(instances, vs, seeds, opts);
      if (!report_csv.empty()) gcut::write_text_file(report_csv, gcut::to_csv(report));
      std::cout << gcut::summarize(report);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
