#ifndef GCUT_VERIFY_H_
#define GCUT_VERIFY_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcut/graph.h"
#include "gcut/instance.h"
#include "gcut/model.h"
#include "gcut/solve.h"

namespace gcut {

enum class NodeKind { kCut, kPiece, kWaste };
enum class LeafSource { kNone, kExtraction, kPocSale };

// Regions use x along the plate length and y along the plate width. A
// horizontal cut at q splits [x, x + length) at x + q; a vertical cut splits
// [y, y + width) at y + q.
struct TreeNode {
  int64_t x = 0;
  int64_t y = 0;
  int64_t length = 0;
  int64_t width = 0;
  NodeKind kind = NodeKind::kWaste;
  Orientation orientation = Orientation::kHorizontal;
  int64_t position = 0;
  int first = -1;
  int second = -1;
  int piece = -1;
  LeafSource source = LeafSource::kNone;
};

struct CuttingTree {
  int64_t plate_length = 0;
  int64_t plate_width = 0;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int64_t value(const Instance& inst) const;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rebuilds one cutting tree from the flow solution: starting at the original
// plate, each plate copy takes its uses in order (extractions, then cuts by
// ascending id, then waste). Normalization and extraction leftovers become
// explicit waste leaves behind extra guillotine cuts.
CuttingTree decode(const VarAssignment& assignment, const MilpModel& m,
                   const PlateGraph& g, const Instance& inst);

struct SolutionReport {
  bool ok = true;
  int64_t value = 0;
  std::vector<std::string> violations;
};

SolutionReport check_solution(const CuttingTree& tree, const Instance& inst,
                              std::optional<int64_t> expected_value = {});

struct PlacedRect {
  int piece = -1;  // -1 marks waste
  int64_t x = 0;
  int64_t y = 0;
  int64_t length = 0;
  int64_t width = 0;
};

struct Placement {
  int64_t plate_length = 0;
  int64_t plate_width = 0;
  std::vector<PlacedRect> rects;
};

// Leaves of the tree; waste leaves are kept only when asked for.
Placement to_placement(const CuttingTree& tree, bool with_waste = false);

// Text layout: optional "plate L W" line, then "id x y l w" lines where id
// is a piece index or '-' for waste. '#' starts a comment.
Placement parse_placement_text(const std::string& text);
Placement parse_placement(const std::string& path);

// Overlap and containment problems (empty when valid).
std::vector<std::string> placement_violations(const Placement& p);

// True iff edge-to-edge cuts that never cross a piece can split the plate
// down to regions holding at most one piece. Waste rectangles are ignored.
bool is_guillotinable(const Placement& p);

Placement transpose(const Placement& p);

std::string render_svg(const Placement& p, const Instance* inst = nullptr);
std::string render_svg(const CuttingTree& tree, const Instance* inst = nullptr);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gcut

#endif  // GCUT_VERIFY_H_
