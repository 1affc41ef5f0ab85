#ifndef GCUT_DISCRETIZE_H_
#define GCUT_DISCRETIZE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "gcut/instance.h"

namespace gcut {

enum class Orientation { kHorizontal, kVertical };

inline char orientation_char(Orientation o) {
  return o == Orientation::kHorizontal ? 'h' : 'v';
}

// A piece dimension together with how many times it may be repeated.
struct SizeCap {
  int64_t size = 0;
  int64_t demand = 0;
};

struct PositionSet {
  Orientation orientation = Orientation::kHorizontal;
  int64_t plate_length = 0;
  int64_t plate_width = 0;
  std::vector<int64_t> positions;  // ascending, unique
};

// All q in (0, dim] reachable as sum c_i * size_i with 0 <= c_i <= demand_i.
std::vector<int64_t> reachable_sums(int64_t dim, std::span<const SizeCap> caps);

// Same set, but only sums that need two or more terms (counting repeats of
// one size) to be reached. A size reachable both ways is included.
std::vector<int64_t> multi_term_sums(int64_t dim, std::span<const SizeCap> caps);

PositionSet cut_positions(int64_t dim, std::span<const SizeCap> caps,
                          Orientation orientation = Orientation::kHorizontal);

// Largest demand-abiding sum not above dim, or 0 when nothing fits.
int64_t normalize_dim(int64_t dim, std::span<const SizeCap> caps);

// Caps of pieces fitting the plate, in the dimension cut by `orientation`
// (lengths for horizontal cuts, widths for vertical ones). Pieces sharing a
// demand group (rotation twins) keep separate caps, each with the full
// group demand.
std::vector<SizeCap> fitting_caps(int64_t plate_length, int64_t plate_width,
                                  std::span<const PieceType> pieces,
                                  Orientation orientation);

PositionSet restricted_positions(int64_t plate_length, int64_t plate_width,
                                 std::span<const PieceType> pieces,
                                 Orientation orientation);

}  // namespace gcut

#endif  // GCUT_DISCRETIZE_H_
