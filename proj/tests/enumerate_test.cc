#include <algorithm>
#include <queue>
#include <random>

#include "doctest.h"
#include "gcut/graph.h"
#include "support.h"

namespace gcut {
namespace {

const Plate* find_plate(const PlateGraph& g, int64_t l, int64_t w) {
  for (const Plate& p : g.plates)
    if (p.length == l && p.width == w) return &p;
  return nullptr;
}

TEST_CASE("extraction_eligible examples") {
  const Instance ex = testing::binding_loss_instance();
  // The thin piece still fits next to the wide one in 100 x 99.
  CHECK_FALSE(extraction_eligible(100, 99, ex.pieces[1], ex.pieces));
  CHECK(extraction_eligible(100, 51, ex.pieces[1], ex.pieces));
  const Instance single = testing::single_piece_instance();
  CHECK(extraction_eligible(10, 10, single.pieces[0], single.pieces));
  // A second copy counts even when demand is one.
  const std::vector<PieceType> one{{0, 3, 5, 1, 1}};
  CHECK_FALSE(extraction_eligible(6, 5, one[0], one));
  CHECK_FALSE(extraction_eligible(2, 5, one[0], one));  // does not fit
}

TEST_CASE("enumerate_bba on the binding-loss instance") {
  const PlateGraph g = enumerate_bba(testing::binding_loss_instance());
  REQUIRE(g.plates[0].is_original);
  CHECK(g.plates[0].length == 100);
  CHECK(g.plates[0].width == 100);
  const auto by_parent = g.cuts_by_parent();
  REQUIRE(by_parent[0].size() == 1);
  const Cut& root_cut = g.cuts[by_parent[0][0]];
  CHECK(root_cut.kind == CutKind::kBgc);
  CHECK(root_cut.orientation == Orientation::kVertical);
  CHECK(root_cut.position == 1);
  REQUIRE(root_cut.first_child);
  REQUIRE(root_cut.second_child);
  CHECK(g.plates[*root_cut.first_child].width == 1);
  CHECK(g.plates[*root_cut.second_child].length == 100);
  CHECK(g.plates[*root_cut.second_child].width == 52);
  // 100x52 -> 100x1 + 100x51; 100x51 -> 100x1 + 100x50 normalized to 100x1.
  const Plate* p51 = find_plate(g, 100, 51);
  REQUIRE(p51);
  const Cut& c51 = g.cuts[by_parent[p51->id][0]];
  REQUIRE(c51.children.size() == 1);
  CHECK(c51.children[0].multiplicity == 2);
  CHECK(g.stats.plates == 4);
  CHECK(g.stats.cuts == 3);
  CHECK(g.stats.extractions == 2);
}

TEST_CASE("enumerate_bba small cases") {
  SUBCASE("piece equal to the plate") {
    const PlateGraph g = enumerate_bba(testing::single_piece_instance());
    CHECK(g.plates.size() == 1);
    CHECK(g.cuts.empty());
    REQUIRE(g.extractions.size() == 1);
    CHECK(g.extractions[0].plate == 0);
  }
  SUBCASE("two copies side by side") {
    const Instance inst =
        parse_instance_text("6 5\n1\n3 5 4 2\n", InstanceFormat::kClassic);
    const PlateGraph g = enumerate_bba(inst);
    REQUIRE(g.plates.size() == 2);
    REQUIRE(g.cuts.size() == 1);
    const Cut& c = g.cuts[0];
    CHECK(c.orientation == Orientation::kHorizontal);
    CHECK(c.position == 3);
    REQUIRE(c.children.size() == 1);
    CHECK(c.children[0].multiplicity == 2);
    CHECK(g.plates[c.children[0].plate].length == 3);
    REQUIRE(g.extractions.size() == 1);
    CHECK(g.extractions[0].plate == c.children[0].plate);
  }
}

TEST_CASE("enumerate_fmt small cases") {
  SUBCASE("piece equal to the plate") {
    const PlateGraph g = enumerate_fmt(testing::single_piece_instance());
    CHECK(g.plates.size() == 1);
    CHECK(g.cuts.empty());
    CHECK(g.extractions.size() == 1);
  }
  SUBCASE("two copies side by side") {
    const Instance inst =
        parse_instance_text("6 5\n1\n3 5 4 2\n", InstanceFormat::kClassic);
    const PlateGraph g = enumerate_fmt(inst);
    REQUIRE(g.cuts.size() == 1);
    CHECK(g.cuts[0].position == 3);
    CHECK(g.plates[g.cuts[0].children[0].plate].length == 3);
  }
  SUBCASE("full-range positions, including past the midplate") {
    const PlateGraph g = enumerate_fmt(testing::binding_loss_instance());
    std::vector<int64_t> vertical;
    for (const Cut& c : g.cuts)
      if (c.parent == 0 && c.orientation == Orientation::kVertical)
        vertical.push_back(c.position);
    CHECK(vertical == std::vector<int64_t>{1, 51, 52});
  }
  SUBCASE("trim cuts keep a single child") {
    const Instance inst =
        parse_instance_text("5 5\n1\n3 3 1 1\n", InstanceFormat::kClassic);
    const PlateGraph g = enumerate_fmt(inst);
    REQUIRE(!g.cuts.empty());
    CHECK(g.cuts[0].children.size() == 1);
    CHECK_FALSE(g.cuts[0].second_child.has_value());
  }
}

TEST_CASE("plate cap fails fast") {
  const Instance inst = testing::binding_loss_instance();
  CHECK_THROWS_AS(enumerate_bba(inst, {3}), ResourceLimitError);
  CHECK_NOTHROW(enumerate_bba(inst, {9}));
}

TEST_CASE("property: graph invariants on random instances") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 150; ++k) {
    const Instance inst =
        testing::random_instance(rng, {40, 5, 10, 20, k % 4 == 0});
    const PlateGraph bba = enumerate_bba(inst);
    const PlateGraph fmt = enumerate_fmt(inst);
    for (const PlateGraph* g : {&bba, &fmt}) {
      CHECK(g->stats.plates == static_cast<int64_t>(g->plates.size()));
      CHECK(g->stats.cuts == static_cast<int64_t>(g->cuts.size()));
      CHECK(g->stats.extractions == static_cast<int64_t>(g->extractions.size()));
      // Reachability from the original plate.
      std::vector<char> seen(g->plates.size(), 0);
      const auto by_parent = g->cuts_by_parent();
      std::queue<int> todo;
      todo.push(0);
      seen[0] = 1;
      while (!todo.empty()) {
        const int j = todo.front();
        todo.pop();
        for (int c : by_parent[j])
          for (const CutChild& ch : g->cuts[c].children) {
            CHECK(g->plates[ch.plate].area() < g->plates[j].area());
            if (!seen[ch.plate]) {
              seen[ch.plate] = 1;
              todo.push(ch.plate);
            }
          }
      }
      CHECK(std::count(seen.begin(), seen.end(), 1) ==
            static_cast<long>(g->plates.size()));
    }
    for (const Plate& p : bba.plates) {
      if (p.is_original) continue;
      const auto lc = fitting_caps(p.length, p.width, inst.pieces,
                                   Orientation::kHorizontal);
      const auto wc = fitting_caps(p.length, p.width, inst.pieces,
                                   Orientation::kVertical);
      CHECK(normalize_dim(p.length, lc) == p.length);
      CHECK(normalize_dim(p.width, wc) == p.width);
    }
    for (const Cut& c : bba.cuts) {
      const Plate& p = bba.plates[c.parent];
      const bool h = c.orientation == Orientation::kHorizontal;
      const int64_t dim = h ? p.length : p.width;
      CHECK(c.position <= dim / 2);
      const auto caps = fitting_caps(p.length, p.width, inst.pieces, c.orientation);
      const auto all = reachable_sums(dim, caps);
      CHECK(std::binary_search(all.begin(), all.end(), c.position));
      REQUIRE(c.first_child);
      const Plate& first = bba.plates[*c.first_child];
      CHECK((h ? first.length : first.width) == c.position);
      int64_t child_area = 0;
      for (const CutChild& ch : c.children)
        child_area += ch.multiplicity * bba.plates[ch.plate].area();
      CHECK(child_area <= p.area());
    }
  }
}

}  // namespace
}  // namespace gcut
