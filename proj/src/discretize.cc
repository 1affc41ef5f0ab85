#include "gcut/discretize.h"

#include <algorithm>
#include <set>

namespace gcut {

namespace {

// layers[k][s]: s is reachable with exactly k terms (k = 2 means two or more).
std::vector<std::vector<char>> term_layers(int64_t dim,
                                           std::span<const SizeCap> caps) {
  std::vector<std::vector<char>> layers(
      3, std::vector<char>(static_cast<std::size_t>(dim) + 1, 0));
  layers[0][0] = 1;
  for (const SizeCap& cap : caps) {
    if (cap.size < 1 || cap.size > dim || cap.demand < 1) continue;
    const int64_t copies = std::min(cap.demand, dim / cap.size);
    for (int64_t c = 0; c < copies; ++c) {
      // Descending sweep adds at most one more copy of this size per pass.
      for (int64_t s = dim; s >= cap.size; --s) {
        for (int k = 2; k >= 0; --k) {
          if (!layers[k][s - cap.size]) continue;
          layers[std::min(k + 1, 2)][s] = 1;
        }
      }
    }
  }
  return layers;
}

}  // namespace

std::vector<int64_t> reachable_sums(int64_t dim,
                                    std::span<const SizeCap> caps) {
  if (dim < 1) return {};
  std::vector<char> reach(static_cast<std::size_t>(dim) + 1, 0);
  reach[0] = 1;
  for (const SizeCap& cap : caps) {
    if (cap.size < 1 || cap.size > dim || cap.demand < 1) continue;
    const int64_t copies = std::min(cap.demand, dim / cap.size);
    for (int64_t c = 0; c < copies; ++c) {
      bool changed = false;
      for (int64_t s = dim; s >= cap.size; --s) {
        if (!reach[s] && reach[s - cap.size]) {
          reach[s] = 1;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
  std::vector<int64_t> out;
  for (int64_t s = 1; s <= dim; ++s)
    if (reach[s]) out.push_back(s);
  return out;
}

std::vector<int64_t> multi_term_sums(int64_t dim,
                                     std::span<const SizeCap> caps) {
  if (dim < 1) return {};
  const auto layers = term_layers(dim, caps);
  std::vector<int64_t> out;
  for (int64_t s = 1; s <= dim; ++s)
    if (layers[2][s]) out.push_back(s);
  return out;
}

PositionSet cut_positions(int64_t dim, std::span<const SizeCap> caps,
                          Orientation orientation) {
  PositionSet set;
  set.orientation = orientation;
  set.positions = reachable_sums(dim, caps);
  return set;
}

int64_t normalize_dim(int64_t dim, std::span<const SizeCap> caps) {
  const std::vector<int64_t> sums = reachable_sums(dim, caps);
  return sums.empty() ? 0 : sums.back();
}

std::vector<SizeCap> fitting_caps(int64_t plate_length, int64_t plate_width,
                                  std::span<const PieceType> pieces,
                                  Orientation orientation) {
  std::vector<SizeCap> caps;
  for (const PieceType& p : pieces) {
    if (!fits(p.length, p.width, plate_length, plate_width)) continue;
    caps.push_back({orientation == Orientation::kHorizontal ? p.length
                                                             : p.width,
                    p.demand});
  }
  return caps;
}

PositionSet restricted_positions(int64_t plate_length, int64_t plate_width,
                                 std::span<const PieceType> pieces,
                                 Orientation orientation) {
  PositionSet set;
  set.orientation = orientation;
  set.plate_length = plate_length;
  set.plate_width = plate_width;
  std::set<int64_t> unique;
  for (const SizeCap& cap :
       fitting_caps(plate_length, plate_width, pieces, orientation))
    unique.insert(cap.size);
  set.positions.assign(unique.begin(), unique.end());
  return set;
}

}  // namespace gcut
