#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "gcut/bench.h"
#include "support.h"

namespace gcut {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture(const std::string& rel) {
  return std::string(GCUT_FIXTURE_DIR) + "/" + rel;
}

RunRecord timed(const std::string& inst, const std::string& variant, int seed,
                double seconds, const std::string& status = "optimal") {
  RunRecord r;
  r.instance = inst;
  r.variant = variant;
  r.seed = seed;
  r.solve_seconds = seconds;
  r.status = status;
  r.objective = 1;
  return r;
}

RunReport synthetic() {
  RunReport rep;
  rep.variants = {"N.H.", "C.H.", "A.H."};
  rep.stats_only = false;
  rep.time_limit = 100;
  const double times[2][3][2] = {{{1, 1}, {1, 3}, {50, 50}},
                                 {{6, 6}, {4, 4}, {53, 53}}};
  for (int i = 0; i < 2; ++i)
    for (int v = 0; v < 3; ++v)
      for (int s = 0; s < 2; ++s)
        rep.records.push_back(timed("i" + std::to_string(i + 1),
                                    rep.variants[v], s, times[i][v][s]));
  return rep;
}

struct CliResult {
  int status;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() /
                       ("gcut_cli_test_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string("\"") + GCUT_CLI + "\" " + args + " > " +
                          out.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  CliResult r{WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, read_file(out)};
  fs::remove(out);
  return r;
}

TEST_CASE("standard variants and labels") {
  const auto v = standard_variants();
  REQUIRE(v.size() == 3);
  CHECK(v[0].label == "N.H.");
  CHECK(v[1].config.mode == HybridMode::kConservative);
  CHECK(v[2].config.mode == HybridMode::kAggressive);
  const Variant b = variant_from_label("C.H.b");
  CHECK(b.config.mode == HybridMode::kConservative);
  CHECK(b.config.binding);
  CHECK_THROWS(variant_from_label("X.H."));
}

TEST_CASE("stats-only matrix") {
  const std::vector<NamedInstance> insts{
      {"ex", testing::binding_loss_instance()}};
  const RunReport rep = run_matrix(insts, standard_variants(), {1, 2}, {});
  REQUIRE(rep.records.size() == 6);
  for (const RunRecord& r : rep.records) {
    CHECK(r.status == "skipped");
    CHECK_FALSE(r.objective.has_value());
    for (const RunRecord& o : rep.records)
      if (o.variant == r.variant) {
        CHECK(o.cuts == r.cuts);
        CHECK(o.extractions == r.extractions);
        CHECK(o.plates == r.plates);
        CHECK(o.hybridised_pct == r.hybridised_pct);
      }
  }
  CHECK(rep.records[0].hybridised_pct == 0);
  CHECK(rep.records[2].hybridised_pct == 100);
  const std::string csv = to_csv(rep);
  CHECK(csv.rfind("# gcut-report/1\n", 0) == 0);
  CHECK(csv == to_csv(run_matrix(insts, standard_variants(), {1, 2}, {})));
  const auto agg = aggregate(rep);
  CHECK(agg[0].total_time == 0);
  CHECK(agg[0].cuts == 3);
}

TEST_CASE("search backend on the binding-loss instance") {
  const std::vector<NamedInstance> insts{
      {"ex", testing::binding_loss_instance()}};
  BenchOptions opt;
  opt.backend = BackendKind::kSearch;
  const std::vector<Variant> variants{variant_from_label("N.H."),
                                      variant_from_label("C.H."),
                                      variant_from_label("C.H.b")};
  const RunReport rep = run_matrix(insts, variants, {0}, opt);
  REQUIRE(rep.records.size() == 3);
  CHECK(rep.records[0].objective == 2);
  CHECK(rep.records[1].objective == 2);
  CHECK(rep.records[2].objective == 1);
  CHECK_FALSE(rep.records[1].differs_from_nh);
  CHECK(rep.records[2].differs_from_nh);
}

TEST_CASE("failing backend is recorded and the harness continues") {
  const std::vector<NamedInstance> insts{
      {"a", testing::single_piece_instance()},
      {"b", testing::binding_loss_instance()}};
  BenchOptions opt;
  opt.backend = BackendKind::kCommand;
  opt.command = "exit 1 # {mps} {sol}";
  opt.time_limit = 10;
  const RunReport rep = run_matrix(insts, {variant_from_label("N.H.")}, {0}, opt);
  REQUIRE(rep.records.size() == 2);
  for (const RunRecord& r : rep.records) {
    CHECK(r.status == "error");
    CHECK_FALSE(r.error.empty());
  }
  // Errors count as the time limit.
  CHECK(aggregate(rep)[0].total_time == 20);
}

TEST_CASE("hand-computed aggregates") {
  const RunReport rep = synthetic();
  const auto agg = aggregate(rep);
  REQUIRE(agg.size() == 3);
  CHECK(agg[0].total_time == 7);
  CHECK(agg[1].total_time == 6);
  CHECK(agg[2].total_time == 103);
  CHECK(agg[0].delta_best_time == 2);
  CHECK(agg[1].delta_best_time == 1);
  CHECK(agg[2].delta_best_time == 98);
  CHECK(agg[0].best_count == 1);
  CHECK(agg[1].best_count == 1);
  CHECK(agg[2].best_count == 0);
  const auto var = variation(rep);
  REQUIRE(var.size() == 6);
  CHECK(var[1].instance == "i1");
  CHECK(var[1].variant == "C.H.");
  CHECK(var[1].mean == 2);
  CHECK(var[1].stddev == 1);
  CHECK(var[1].cv == 0.5);
  CHECK(var[0].cv == 0);
  const std::string table = summarize(rep);
  CHECK(table.find("| A.H. | 103.00 | 98.00 | 0 |") != std::string::npos);
  CHECK(table.find("| i1 | C.H. |") != std::string::npos);
}

TEST_CASE("timeouts count as the limit; ties go to the earlier variant") {
  RunReport rep;
  rep.variants = {"N.H.", "C.H."};
  rep.stats_only = false;
  rep.time_limit = 10;
  rep.records = {timed("i", "N.H.", 0, 3), timed("i", "C.H.", 0, 3),
                 timed("j", "N.H.", 0, 0.5, "timeout"),
                 timed("j", "C.H.", 0, 12)};
  const auto agg = aggregate(rep);
  CHECK(agg[0].best_count == 2);
  CHECK(agg[1].best_count == 0);
  CHECK(agg[0].total_time == 13);
  CHECK(agg[1].total_time == 13);
  CHECK(agg[0].delta_best_time == 0);

  RunReport one;
  one.variants = {"A.H."};
  one.stats_only = false;
  one.time_limit = 10;
  one.records = {timed("i", "A.H.", 0, 2), timed("j", "A.H.", 0, 4)};
  const auto single = aggregate(one);
  CHECK(single[0].delta_best_time == 0);
  CHECK(single[0].best_count == 2);
}

TEST_CASE("command-line interface") {
  const std::string ex = fixture("instances/binding_loss.txt");
  SUBCASE("oracle") {
    const CliResult r = run_cli("oracle " + ex);
    CHECK(r.status == 0);
    CHECK(r.out.find('2') != std::string::npos);
  }
  SUBCASE("solve with the search backend and binding POCs") {
    const CliResult r = run_cli("solve " + ex +
                                " --hybrid conservative --binding --backend-cmd search");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"objective\": 1.0") != std::string::npos);
  }
  SUBCASE("MPS written by build equals the frozen file") {
    const fs::path mps = fs::temp_directory_path() /
                         ("gcut_cli_" + std::to_string(::getpid()) + ".mps");
    CHECK(run_cli("build " + ex + " --mps-out " + mps.string()).status == 0);
    CHECK(read_file(mps) == read_file(fixture("golden/binding_loss.mps")));
    fs::remove(mps);
  }
  SUBCASE("pinwheel audit") {
    const fs::path p = fs::temp_directory_path() /
                       ("gcut_pin_" + std::to_string(::getpid()) + ".txt");
    std::ofstream(p) << "plate 3 3\n0 0 0 2 1\n1 2 0 1 2\n0 1 2 2 1\n"
                        "1 0 1 1 2\n2 1 1 1 1\n";
    const CliResult r = run_cli("audit-guillotine " + p.string());
    CHECK(r.out.find("false") != std::string::npos);
    fs::remove(p);
  }
  SUBCASE("stats-only bench report is reproducible") {
    const fs::path a = fs::temp_directory_path() /
                       ("gcut_bench_a_" + std::to_string(::getpid()) + ".csv");
    const fs::path b = fs::temp_directory_path() /
                       ("gcut_bench_b_" + std::to_string(::getpid()) + ".csv");
    const std::string args = "bench " + ex + " " +
                             fixture("instances/single_piece.txt") +
                             " --no-solve --report-csv ";
    CHECK(run_cli(args + a.string()).status == 0);
    CHECK(run_cli(args + b.string()).status == 0);
    const std::string csv = read_file(a);
    CHECK(csv == read_file(b));
    CHECK(csv.find("binding_loss,C.H.") != std::string::npos);
    fs::remove(a);
    fs::remove(b);
  }
  SUBCASE("bad input fails cleanly") {
    const CliResult r = run_cli("parse /nonexistent/file.txt");
    CHECK(r.status != 0);
  }
}

}  // namespace
}  // namespace gcut
