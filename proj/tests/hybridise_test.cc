#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "gcut/graph.h"
#include "gcut/model.h"
#include "gcut/oracle.h"
#include "gcut/solve.h"
#include "support.h"

namespace gcut {
namespace {

Instance shared_length_instance() {
  return parse_instance_text("10 10\n2\n3 4 5 1\n3 7 6 1\n",
                             InstanceFormat::kClassic);
}

std::vector<const Cut*> root_cuts(const PlateGraph& g, Orientation o,
                                  int64_t q) {
  std::vector<const Cut*> out;
  for (const Cut& c : g.cuts)
    if (c.parent == 0 && c.orientation == o && c.position == q)
      out.push_back(&c);
  return out;
}

TEST_CASE("replaceable examples") {
  const Instance ex = testing::binding_loss_instance();
  CHECK(replaceable(100, 100, Orientation::kVertical, 1, ex.pieces) ==
        std::vector<int>{0});
  // 5 is a piece width but also 2 + 3.
  const Instance sum = parse_instance_text(
      "10 10\n3\n10 2 1 1\n10 3 1 1\n10 5 1 1\n", InstanceFormat::kClassic);
  CHECK(replaceable(10, 10, Orientation::kVertical, 5, sum.pieces).empty());
  CHECK(replaceable(10, 10, Orientation::kVertical, 2, sum.pieces) ==
        std::vector<int>{0});
  const Instance shared = shared_length_instance();
  CHECK(replaceable(10, 10, Orientation::kHorizontal, 3, shared.pieces) ==
        std::vector<int>{0, 1});
  // A position matching no piece is never replaceable.
  CHECK(replaceable(10, 10, Orientation::kVertical, 3, shared.pieces).empty());
}

TEST_CASE("conservative rewrite of the binding-loss instance") {
  const Instance inst = testing::binding_loss_instance();
  const PlateGraph g =
      build_graph(inst, Formulation::kBba, {HybridMode::kConservative, false});
  const auto cuts = root_cuts(g, Orientation::kVertical, 1);
  REQUIRE(cuts.size() == 1);
  const Cut& c = *cuts[0];
  CHECK(c.kind == CutKind::kPoc);
  CHECK(c.poc_piece == 0);
  CHECK(c.poc_single_cut);
  CHECK_FALSE(c.first_child.has_value());
  REQUIRE(c.second_child.has_value());
  CHECK(g.plates[*c.second_child].length == 100);
  CHECK(g.plates[*c.second_child].width == 52);
  CHECK(g.stats.hybridised == 3);
  CHECK(g.stats.single_residual == 3);
  CHECK(g.stats.plates == 4);
}

TEST_CASE("shared position: conservative keeps the cut, aggressive splits it") {
  const Instance inst = shared_length_instance();
  const PlateGraph none =
      build_graph(inst, Formulation::kBba, {HybridMode::kNone, false});
  const PlateGraph cons =
      build_graph(inst, Formulation::kBba, {HybridMode::kConservative, false});
  const PlateGraph aggr =
      build_graph(inst, Formulation::kBba, {HybridMode::kAggressive, false});
  const auto n = root_cuts(none, Orientation::kHorizontal, 3);
  const auto c = root_cuts(cons, Orientation::kHorizontal, 3);
  const auto a = root_cuts(aggr, Orientation::kHorizontal, 3);
  REQUIRE(n.size() == 1);
  REQUIRE(c.size() == 1);
  CHECK(c[0]->kind == CutKind::kBgc);
  REQUIRE(a.size() == 2);
  std::set<int> pieces;
  for (const Cut* cut : a) {
    CHECK(cut->kind == CutKind::kPoc);
    pieces.insert(*cut->poc_piece);
  }
  CHECK(pieces == std::set<int>{0, 1});
  CHECK(a[0]->id != a[1]->id);
  CHECK(aggr.stats.cuts > cons.stats.cuts);
}

TEST_CASE("aggressive totals can drop below conservative ones") {
  // The shared-length cut at 2 feeds the 2x4 plate only while it stays a BGC.
  const Instance inst = parse_instance_text(
      "5 4\n3\n2 4 8 1\n2 1 10 2\n3 4 1 2\n", InstanceFormat::kClassic);
  const PlateGraph cons =
      build_graph(inst, Formulation::kBba, {HybridMode::kConservative, false});
  const PlateGraph aggr =
      build_graph(inst, Formulation::kBba, {HybridMode::kAggressive, false});
  CHECK(cons.stats.cuts == 11);
  CHECK(aggr.stats.cuts == 10);
  CHECK(testing::dominates_per_plate(aggr, cons));
}

TEST_CASE("property: POC structure on random instances") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 150; ++k) {
    const Instance inst =
        testing::random_instance(rng, {30, 5, 10, 20, k % 3 == 0});
    const PlateGraph cons =
        build_graph(inst, Formulation::kBba, {HybridMode::kConservative, false});
    const PlateGraph aggr =
        build_graph(inst, Formulation::kBba, {HybridMode::kAggressive, false});
    CHECK(testing::dominates_per_plate(aggr, cons));
    for (const PlateGraph* g : {&cons, &aggr}) {
      int64_t pocs = 0, singles = 0;
      for (const Cut& c : g->cuts) {
        if (c.kind != CutKind::kPoc) continue;
        ++pocs;
        const Plate& parent = g->plates[c.parent];
        REQUIRE(c.poc_piece);
        const PieceType& p = inst.pieces[*c.poc_piece];
        CHECK(fits(p.length, p.width, parent.length, parent.width));
        const bool h = c.orientation == Orientation::kHorizontal;
        CHECK((h ? p.length : p.width) == c.position);
        const auto rep = replaceable(parent.length, parent.width,
                                     c.orientation, c.position, inst.pieces);
        CHECK(std::find(rep.begin(), rep.end(), p.id) != rep.end());
        if (g == &cons) CHECK(rep.size() == 1);
        // Residuals fit inside the regions left around the piece.
        if (c.first_child) {
          const Plate& top = g->plates[*c.first_child];
          CHECK(top.area() <=
                (parent.length - p.length) * (h ? parent.width : p.width));
        }
        if (c.second_child) {
          const Plate& right = g->plates[*c.second_child];
          CHECK(right.area() <=
                (h ? p.length : parent.length) * (parent.width - p.width));
        }
        const int residuals =
            static_cast<int>(c.first_child.has_value()) +
            static_cast<int>(c.second_child.has_value());
        if (residuals == 1) ++singles;
      }
      CHECK(g->stats.hybridised == pocs);
      CHECK(g->stats.single_residual == singles);
    }
  }
}

TEST_CASE("property: non-binding hybridisation preserves the optimum") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 120; ++k) {
    const Instance inst =
        testing::random_instance(rng, {16, 4, 8, 20, k % 4 == 0});
    const int64_t best = oracle_optimal(inst);
    for (HybridMode mode : {HybridMode::kNone, HybridMode::kConservative,
                            HybridMode::kAggressive}) {
      const HybridisationConfig cfg{mode, false};
      const PlateGraph g = build_graph(inst, Formulation::kBba, cfg);
      const MilpModel m = build_model(g, inst, cfg);
      const VarAssignment a = search_model(g, inst, m);
      CHECK(a.objective == doctest::Approx(static_cast<double>(best)));
    }
  }
}

}  // namespace
}  // namespace gcut
