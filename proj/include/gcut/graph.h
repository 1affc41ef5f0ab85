#ifndef GCUT_GRAPH_H_
#define GCUT_GRAPH_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gcut/discretize.h"
#include "gcut/instance.h"

namespace gcut {

enum class Formulation { kFmt, kBba };
enum class HybridMode { kNone, kConservative, kAggressive };
enum class CutKind { kBgc, kPoc };

struct HybridisationConfig {
  HybridMode mode = HybridMode::kNone;
  // Piece-sized plates of POCs must be sold (only meaningful with a mode).
  bool binding = false;
};

struct Plate {
  int id = 0;
  int64_t length = 0;
  int64_t width = 0;
  bool is_original = false;

  int64_t area() const { return length * width; }
};

struct CutChild {
  int plate = 0;
  int multiplicity = 1;
};

// Horizontal cuts act on the length dimension: a horizontal cut at q splits
// an L x W plate into q x W and (L - q) x W. Vertical cuts act on the width.
struct Cut {
  int id = 0;
  int parent = 0;
  Orientation orientation = Orientation::kHorizontal;
  int64_t position = 0;
  CutKind kind = CutKind::kBgc;
  // BGC: plate obtained from the q-sized side and from the remainder.
  // POC: top residual (the region beyond the piece length) and right residual
  // (the region beyond the piece width). The first cut leaves the top
  // residual of a horizontal-first POC and the right residual of a
  // vertical-first one. Absent when nothing fits there.
  std::optional<int> first_child;
  std::optional<int> second_child;
  // Aggregated view used by the flow constraints; identical children are
  // merged with multiplicity 2.
  std::vector<CutChild> children;
  std::optional<int> poc_piece;
  bool poc_single_cut = false;
};

struct Extraction {
  int piece = 0;
  int plate = 0;
};

struct GraphStats {
  int64_t extractions = 0;
  int64_t cuts = 0;
  int64_t plates = 0;
  int64_t hybridised = 0;       // POCs
  int64_t single_residual = 0;  // POCs leaving exactly one residual plate
};

struct PlateGraph {
  Formulation formulation = Formulation::kBba;
  HybridMode hybrid = HybridMode::kNone;
  std::vector<Plate> plates;  // plates[0] is the original plate
  std::vector<Cut> cuts;
  std::vector<Extraction> extractions;
  GraphStats stats;

  std::vector<std::vector<int>> cuts_by_parent() const;
  std::vector<std::vector<int>> extractions_by_plate() const;
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  // Cap on plates + cuts + extractions before enumeration gives up.
  int64_t max_variables = 5'000'000;
};

// True iff the plate cannot hold `piece` together with any other piece
// (including a second copy of itself) side by side or stacked.
bool extraction_eligible(int64_t plate_length, int64_t plate_width,
                         const PieceType& piece,
                         const std::vector<PieceType>& all_pieces);

PlateGraph enumerate_bba(const Instance& inst,
                         const EnumerationOptions& options = {});
PlateGraph enumerate_fmt(const Instance& inst,
                         const EnumerationOptions& options = {});

// Piece types whose matching dimension equals q, provided q cannot also be
// written as a demand-abiding sum of two or more piece dimensions. Only
// pieces fitting the plate count on either side.
std::vector<int> replaceable(int64_t plate_length, int64_t plate_width,
                             Orientation orientation, int64_t q,
                             const std::vector<PieceType>& pieces);

// Rebuilds the graph with replaceable BGCs turned into POCs. Residual plates
// that did not exist are expanded like any other plate, and plates that are
// only reachable through replaced cuts disappear.
PlateGraph hybridise_graph(const PlateGraph& g, const HybridisationConfig& cfg,
                           const Instance& inst,
                           const EnumerationOptions& options = {});

// One-stop entry used by the CLI and the harness.
PlateGraph build_graph(const Instance& inst, Formulation formulation,
                       const HybridisationConfig& cfg,
                       const EnumerationOptions& options = {});

}  // namespace gcut

#endif  // GCUT_GRAPH_H_
