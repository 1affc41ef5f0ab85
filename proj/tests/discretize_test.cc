#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "gcut/discretize.h"
#include "support.h"

namespace gcut {
namespace {

using Positions = std::vector<int64_t>;

// Independent oracle: every demand-bounded combination, enumerated.
Positions brute_sums(int64_t dim, const std::vector<SizeCap>& caps,
                     int min_terms = 1) {
  std::set<int64_t> out;
  std::function<void(std::size_t, int64_t, int64_t)> walk =
      [&](std::size_t i, int64_t sum, int64_t terms) {
        if (sum > dim) return;
        if (i == caps.size()) {
          if (sum > 0 && terms >= min_terms) out.insert(sum);
          return;
        }
        for (int64_t c = 0; c <= caps[i].demand; ++c)
          walk(i + 1, sum + c * caps[i].size, terms + c);
      };
  walk(0, 0, 0);
  return {out.begin(), out.end()};
}

TEST_CASE("cut_positions examples") {
  const std::vector<SizeCap> a{{3, 1}, {5, 2}};
  CHECK(brute_sums(10, a) == Positions{3, 5, 8, 10});
  CHECK(cut_positions(10, a).positions == Positions{3, 5, 8, 10});
  CHECK(cut_positions(10, {}).positions.empty());
  const std::vector<SizeCap> widths{{1, 1}, {51, 1}};
  CHECK(brute_sums(100, widths) == Positions{1, 51, 52});
  CHECK(cut_positions(100, widths).positions == Positions{1, 51, 52});
}

TEST_CASE("normalize_dim examples") {
  CHECK(normalize_dim(99, std::vector<SizeCap>{{1, 1}, {51, 1}}) == 52);
  CHECK(normalize_dim(8, std::vector<SizeCap>{{3, 1}, {5, 2}}) == 8);
  CHECK(normalize_dim(2, std::vector<SizeCap>{{3, 1}}) == 0);
  CHECK(normalize_dim(0, std::vector<SizeCap>{{3, 1}}) == 0);
}

TEST_CASE("restricted_positions examples") {
  const Instance ex = testing::binding_loss_instance();
  CHECK(restricted_positions(100, 100, ex.pieces, Orientation::kVertical)
            .positions == Positions{1, 51});
  const std::vector<PieceType> big{{0, 3, 3, 1, 1}};
  CHECK(restricted_positions(2, 2, big, Orientation::kHorizontal)
            .positions.empty());
  const std::vector<PieceType> two{{0, 3, 4, 1, 1}, {1, 5, 4, 1, 1}};
  CHECK(restricted_positions(10, 10, two, Orientation::kHorizontal)
            .positions == Positions{3, 5});
}

TEST_CASE("multi_term_sums counts repeated copies") {
  const std::vector<SizeCap> caps{{3, 2}, {5, 1}};
  CHECK(brute_sums(20, caps, 2) == Positions{6, 8, 11});
  CHECK(multi_term_sums(20, caps) == Positions{6, 8, 11});
  // 6 is one piece and also 3 + 3.
  const std::vector<SizeCap> both{{3, 2}, {6, 1}};
  CHECK(multi_term_sums(12, both) == Positions{6, 9, 12});
}

TEST_CASE("property: DP matches enumeration up to total demand 12") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n_d(0, 5), size_d(1, 20), dem_d(1, 4),
      dim_d(1, 80);
  for (int k = 0; k < 400; ++k) {
    std::vector<SizeCap> caps;
    int total = 0;
    const int n = n_d(rng);
    for (int i = 0; i < n && total < 12; ++i) {
      const int d = std::min(dem_d(rng), 12 - total);
      caps.push_back({size_d(rng), d});
      total += d;
    }
    const int64_t dim = dim_d(rng);
    REQUIRE(reachable_sums(dim, caps) == brute_sums(dim, caps));
    CHECK(multi_term_sums(dim, caps) == brute_sums(dim, caps, 2));
    const int64_t nd = normalize_dim(dim, caps);
    CHECK(nd <= dim);
    CHECK(normalize_dim(nd, caps) == nd);
  }
}

TEST_CASE("property: restricted positions are cut positions") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = testing::random_instance(rng, {30, 5, 10, 9, false});
    for (Orientation o : {Orientation::kHorizontal, Orientation::kVertical}) {
      const int64_t dim = o == Orientation::kHorizontal ? inst.plate_length
                                                        : inst.plate_width;
      const auto caps =
          fitting_caps(inst.plate_length, inst.plate_width, inst.pieces, o);
      const Positions all = cut_positions(dim, caps, o).positions;
      for (int64_t q : restricted_positions(inst.plate_length, inst.plate_width,
                                            inst.pieces, o)
                           .positions)
        CHECK(std::binary_search(all.begin(), all.end(), q));
    }
  }
}

}  // namespace
}  // namespace gcut
