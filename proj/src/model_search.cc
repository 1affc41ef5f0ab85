#include <algorithm>
#include <map>

#include "demand_lattice.h"
#include "gcut/solve.h"

namespace gcut {

namespace {

using internal::DemandLattice;
using internal::kNegInf;

class ModelSearch {
 public:
  ModelSearch(const PlateGraph& g, const Instance& inst, const MilpModel& m,
              int64_t max_states)
      : g_(g), inst_(inst), m_(m), lattice_(group_caps(inst)) {
    if (lattice_.size() > max_states)
      throw ResourceLimitError("demand lattice has " +
                               std::to_string(lattice_.size()) +
                               " states, above the limit of " +
                               std::to_string(max_states));
    by_parent_ = g.cuts_by_parent();
    by_plate_ = g.extractions_by_plate();
  }

  VarAssignment run() {
    value_.assign(g_.plates.size(), {});
    for (int j = static_cast<int>(g_.plates.size()) - 1; j >= 0; --j)
      value_[j] = plate_value(j);
    counts_.assign(m_.variables.size(), 0);
    assign_plate(0, lattice_.top());
    VarAssignment a;
    for (std::size_t k = 0; k < m_.variables.size(); ++k)
      a.values[m_.variables[k].name] = static_cast<double>(counts_[k]);
    a.objective = static_cast<double>(value_[0][lattice_.top()]);
    a.status = SolveStatus::kOptimal;
    return a;
  }

 private:
  // Demand groups are indexed by their position among group leaders.
  static std::vector<int64_t> group_caps(const Instance& inst) {
    std::vector<int64_t> caps;
    for (const PieceType& p : inst.pieces)
      if (inst.demand_group(p.id) == p.id) caps.push_back(p.demand);
    return caps;
  }

  int group_index(int piece) const {
    const int leader = inst_.demand_group(piece);
    int idx = 0;
    for (const PieceType& p : inst_.pieces) {
      if (p.id == leader) return idx;
      if (inst_.demand_group(p.id) == p.id) ++idx;
    }
    return idx;
  }

  std::vector<int64_t> residual_value(const Cut& c) const {
    std::vector<int64_t> acc(lattice_.size(), 0);
    for (const CutChild& ch : c.children)
      for (int k = 0; k < ch.multiplicity; ++k)
        acc = lattice_.max_plus(acc, value_[ch.plate]);
    return acc;
  }

  // Value of a cut when the residuals get demand d and the POC sale, if
  // any, is decided here.
  std::vector<int64_t> cut_value(const Cut& c) const {
    std::vector<int64_t> res = residual_value(c);
    if (c.kind != CutKind::kPoc) return res;
    const PieceType& p = inst_.pieces[*c.poc_piece];
    const int g = group_index(p.id);
    std::vector<int64_t> out(lattice_.size(), kNegInf);
    for (int64_t d = 0; d < lattice_.size(); ++d) {
      if (!m_.binding) out[d] = res[d];
      if (lattice_.digit(d, g) > 0 && res[d - lattice_.stride(g)] > kNegInf)
        out[d] = std::max(out[d], p.profit + res[d - lattice_.stride(g)]);
    }
    return out;
  }

  std::vector<int64_t> plate_value(int j) const {
    std::vector<int64_t> best(lattice_.size(), 0);
    for (int k : by_plate_[j]) {
      const PieceType& p = inst_.pieces[g_.extractions[k].piece];
      const int g = group_index(p.id);
      for (int64_t d = 0; d < lattice_.size(); ++d)
        if (lattice_.digit(d, g) > 0) best[d] = std::max(best[d], p.profit);
    }
    for (int c : by_parent_[j]) {
      const std::vector<int64_t> v = cut_value(g_.cuts[c]);
      for (int64_t d = 0; d < lattice_.size(); ++d)
        best[d] = std::max(best[d], v[d]);
    }
    return best;
  }

  void assign_plate(int j, int64_t d) {
    const int64_t target = value_[j][d];
    if (target == 0) return;  // wasted copy
    for (int k : by_plate_[j]) {
      const PieceType& p = inst_.pieces[g_.extractions[k].piece];
      if (lattice_.digit(d, group_index(p.id)) > 0 && p.profit == target) {
        ++counts_[m_.extraction_column[k]];
        return;
      }
    }
    for (int c : by_parent_[j]) {
      const Cut& cut = g_.cuts[c];
      const std::vector<int64_t> v = cut_value(cut);
      if (v[d] != target) continue;
      ++counts_[m_.cut_column[cut.id]];
      int64_t rest = d;
      int64_t need = target;
      std::vector<int64_t> res = residual_value(cut);
      if (cut.kind == CutKind::kPoc) {
        const PieceType& p = inst_.pieces[*cut.poc_piece];
        const int g = group_index(p.id);
        const bool sell =
            m_.binding || res[d] != target;
        if (sell) {
          ++counts_[m_.sale_column[p.id]];
          rest -= lattice_.stride(g);
          need -= p.profit;
        }
      }
      assign_children(cut, rest, need);
      return;
    }
    throw std::logic_error("model search lost track of plate " +
                           std::to_string(j));
  }

  void assign_children(const Cut& cut, int64_t d, int64_t target) {
    std::vector<int> copies;
    for (const CutChild& ch : cut.children)
      for (int k = 0; k < ch.multiplicity; ++k) copies.push_back(ch.plate);
    // prefix[k] combines copies[0..k).
    std::vector<std::vector<int64_t>> prefix{std::vector<int64_t>(lattice_.size(), 0)};
    for (int plate : copies)
      prefix.push_back(lattice_.max_plus(prefix.back(), value_[plate]));
    for (int k = static_cast<int>(copies.size()) - 1; k >= 0; --k) {
      const int64_t d1 =
          lattice_.find_split(prefix[k], value_[copies[k]], d, target);
      if (d1 < 0) throw std::logic_error("model search split not found");
      const int64_t part = value_[copies[k]][d - d1];
      assign_plate(copies[k], d - d1);
      target -= part;
      d = d1;
    }
  }

  const PlateGraph& g_;
  const Instance& inst_;
  const MilpModel& m_;
  DemandLattice lattice_;
  std::vector<std::vector<int>> by_parent_;
  std::vector<std::vector<int>> by_plate_;
  std::vector<std::vector<int64_t>> value_;
  std::vector<int64_t> counts_;
};

}  // namespace

VarAssignment search_model(const PlateGraph& g, const Instance& inst,
                           const MilpModel& m, int64_t max_states) {
  return ModelSearch(g, inst, m, max_states).run();
}

}  // namespace gcut
