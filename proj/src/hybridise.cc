#include <algorithm>

#include "enumerate_internal.h"
#include "gcut/graph.h"

namespace gcut {

std::vector<int> replaceable(int64_t plate_length, int64_t plate_width,
                             Orientation orientation, int64_t q,
                             const std::vector<PieceType>& pieces) {
  std::vector<int> matching;
  for (const PieceType& p : pieces) {
    if (!fits(p.length, p.width, plate_length, plate_width)) continue;
    const int64_t size =
        orientation == Orientation::kHorizontal ? p.length : p.width;
    if (size == q) matching.push_back(p.id);
  }
  if (matching.empty()) return {};
  const std::vector<SizeCap> caps =
      fitting_caps(plate_length, plate_width, pieces, orientation);
  const std::vector<int64_t> multi = multi_term_sums(q, caps);
  if (std::binary_search(multi.begin(), multi.end(), q)) return {};
  return matching;
}

PlateGraph hybridise_graph(const PlateGraph& g, const HybridisationConfig& cfg,
                           const Instance& inst,
                           const EnumerationOptions& options) {
  return internal::enumerate_graph(inst, g.formulation, cfg.mode, options);
}

}  // namespace gcut
