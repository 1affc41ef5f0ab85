#ifndef GCUT_TESTS_SUPPORT_H_
#define GCUT_TESTS_SUPPORT_H_

#include <map>
#include <random>
#include <string>

#include "gcut/graph.h"
#include "gcut/instance.h"

namespace gcut::testing {

// The two-piece instance where binding POCs lose optimality.
inline Instance binding_loss_instance() {
  return parse_instance_text("100 100\n2\n100 1 1 1\n100 51 1 1\n",
                             InstanceFormat::kClassic);
}

inline Instance single_piece_instance() {
  return parse_instance_text("10 10\n1\n10 10 5 1\n", InstanceFormat::kClassic);
}

struct RandomSpec {
  int64_t max_plate = 20;
  int max_types = 4;
  int64_t max_total_demand = 8;
  int64_t max_profit = 20;
  bool rotation = false;
};

// Small random instance; piece sizes are drawn to fit the plate and the
// total demand never exceeds the bound.
inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  auto pick = [&](int64_t lo, int64_t hi) {
    return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
  };
  Instance inst;
  inst.plate_length = pick(1, spec.max_plate);
  inst.plate_width = pick(1, spec.max_plate);
  inst.rotation_allowed = spec.rotation;
  const int types = static_cast<int>(pick(1, spec.max_types));
  int64_t budget = spec.max_total_demand;
  for (int k = 0; k < types && budget > 0; ++k) {
    PieceType p;
    // Half the draws favour pieces between a quarter and half of the plate,
    // where cut interactions are richest.
    auto side = [&](int64_t dim) {
      if (pick(0, 1) == 0) return pick(1, dim);
      return pick(std::max<int64_t>(1, dim / 4), std::max<int64_t>(1, dim / 2));
    };
    p.length = side(inst.plate_length);
    p.width = side(inst.plate_width);
    if (spec.rotation && pick(0, 1) == 1) std::swap(p.length, p.width);
    if (!fits(p.length, p.width, inst.plate_length, inst.plate_width) &&
        !fits(p.width, p.length, inst.plate_length, inst.plate_width))
      std::swap(p.length, p.width);
    if (!fits(p.length, p.width, inst.plate_length, inst.plate_width) &&
        !(spec.rotation &&
          fits(p.width, p.length, inst.plate_length, inst.plate_width))) {
      p.length = std::min(p.length, inst.plate_length);
      p.width = std::min(p.width, inst.plate_width);
    }
    p.profit = pick(1, spec.max_profit);
    p.demand = pick(1, std::min<int64_t>(3, budget));
    budget -= p.demand;
    inst.pieces.push_back(p);
  }
  return expand_rotation(validate(inst));
}

// Number of cuts on each plate, keyed by plate dimensions.
inline std::map<std::pair<int64_t, int64_t>, int> cuts_per_plate(
    const PlateGraph& g) {
  std::map<std::pair<int64_t, int64_t>, int> out;
  for (const Cut& c : g.cuts)
    ++out[{g.plates[c.parent].length, g.plates[c.parent].width}];
  return out;
}

// True when every plate present in both graphs has at least as many cuts in
// `more` as in `fewer`.
inline bool dominates_per_plate(const PlateGraph& more, const PlateGraph& fewer) {
  const auto a = cuts_per_plate(more);
  for (const auto& [dims, n] : cuts_per_plate(fewer)) {
    bool shared = false;
    for (const Plate& p : more.plates)
      if (p.length == dims.first && p.width == dims.second) shared = true;
    if (!shared) continue;
    auto it = a.find(dims);
    if ((it == a.end() ? 0 : it->second) < n) return false;
  }
  return true;
}

}  // namespace gcut::testing

#endif  // GCUT_TESTS_SUPPORT_H_
