#include "gcut/oracle.h"

#include <algorithm>
#include <map>
#include <set>

#include "demand_lattice.h"
#include "gcut/discretize.h"

namespace gcut {

namespace {

using internal::DemandLattice;

class Oracle {
 public:
  Oracle(const Instance& inst, const OracleOptions& options)
      : inst_(inst), options_(options), lattice_(caps(inst)) {
    for (const PieceType& p : inst.pieces) group_.push_back(group_index(p.id));
  }

  int64_t solve() {
    return value(inst_.plate_length, inst_.plate_width)[lattice_.top()];
  }

 private:
  static std::vector<int64_t> caps(const Instance& inst) {
    std::vector<int64_t> out;
    for (const PieceType& p : inst.pieces)
      if (inst.demand_group(p.id) == p.id) out.push_back(p.demand);
    return out;
  }

  int group_index(int piece) const {
    const int leader = inst_.demand_group(piece);
    int idx = 0;
    for (int k = 0; k < leader; ++k)
      if (inst_.demand_group(k) == k) ++idx;
    return idx;
  }

  // Cut offsets worth trying along one side: every demand-abiding sum s and
  // its mirror dim - s, folded to the lower half since the two children of a
  // cut are interchangeable.
  std::vector<int64_t> offsets(int64_t dim, std::vector<SizeCap> caps) const {
    std::set<int64_t> out;
    for (int64_t s : reachable_sums(dim, caps))
      if (s < dim) out.insert(std::min(s, dim - s));
    return {out.begin(), out.end()};
  }

  const std::vector<int64_t>& value(int64_t length, int64_t width) {
    const auto key = std::make_pair(length, width);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    work_ += lattice_.size();
    if (work_ > options_.node_budget)
      throw BudgetExceeded("oracle exceeded its work budget of " +
                           std::to_string(options_.node_budget));

    std::vector<int64_t> best(lattice_.size(), 0);
    bool any_fit = false;
    for (const PieceType& p : inst_.pieces) {
      if (!fits(p.length, p.width, length, width)) continue;
      any_fit = true;
      const int g = group_[p.id];
      for (int64_t d = 0; d < lattice_.size(); ++d)
        if (lattice_.digit(d, g) > 0) best[d] = std::max(best[d], p.profit);
    }
    if (any_fit) {
      for (int64_t q : offsets(length, fitting_caps(length, width, inst_.pieces,
                                                    Orientation::kHorizontal))) {
        const auto a = value(q, width);
        const auto b = value(length - q, width);
        const auto v = lattice_.max_plus(a, b);
        for (int64_t d = 0; d < lattice_.size(); ++d)
          best[d] = std::max(best[d], v[d]);
      }
      for (int64_t q : offsets(width, fitting_caps(length, width, inst_.pieces,
                                                   Orientation::kVertical))) {
        const auto a = value(length, q);
        const auto b = value(length, width - q);
        const auto v = lattice_.max_plus(a, b);
        for (int64_t d = 0; d < lattice_.size(); ++d)
          best[d] = std::max(best[d], v[d]);
      }
    }
    return memo_.emplace(key, std::move(best)).first->second;
  }

  const Instance& inst_;
  OracleOptions options_;
  DemandLattice lattice_;
  std::vector<int> group_;
  std::map<std::pair<int64_t, int64_t>, std::vector<int64_t>> memo_;
  int64_t work_ = 0;
};

int64_t total_demand(const Instance& inst) {
  int64_t total = 0;
  for (const PieceType& p : inst.pieces)
    if (inst.demand_group(p.id) == p.id) total += p.demand;
  return total;
}

}  // namespace

int64_t oracle_optimal(const Instance& inst, const OracleOptions& options) {
  if (total_demand(inst) > options.max_total_demand)
    throw BudgetExceeded("total demand " + std::to_string(total_demand(inst)) +
                         " exceeds the oracle bound of " +
                         std::to_string(options.max_total_demand));
  return Oracle(inst, options).solve();
}

bool oracle_feasible(const std::vector<PieceType>& pieces, int64_t plate_length,
                     int64_t plate_width, const OracleOptions& options) {
  Instance inst;
  inst.plate_length = plate_length;
  inst.plate_width = plate_width;
  inst.pieces = pieces;
  for (PieceType& p : inst.pieces) p.profit = 1;
  inst.rotation_allowed = std::any_of(
      pieces.begin(), pieces.end(),
      [](const PieceType& p) { return p.twin_of.has_value(); });
  for (const PieceType& p : inst.pieces)
    if (!fits(p.length, p.width, plate_length, plate_width)) return false;
  inst = validate(std::move(inst));
  return oracle_optimal(inst, options) == total_demand(inst);
}

}  // namespace gcut
