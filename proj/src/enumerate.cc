#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "enumerate_internal.h"
#include "gcut/graph.h"

namespace gcut {

std::vector<std::vector<int>> PlateGraph::cuts_by_parent() const {
  std::vector<std::vector<int>> out(plates.size());
  for (const Cut& c : cuts) out[c.parent].push_back(c.id);
  return out;
}

std::vector<std::vector<int>> PlateGraph::extractions_by_plate() const {
  std::vector<std::vector<int>> out(plates.size());
  for (std::size_t k = 0; k < extractions.size(); ++k)
    out[extractions[k].plate].push_back(static_cast<int>(k));
  return out;
}

bool extraction_eligible(int64_t plate_length, int64_t plate_width,
                         const PieceType& piece,
                         const std::vector<PieceType>& all_pieces) {
  if (!fits(piece.length, piece.width, plate_length, plate_width)) return false;
  for (const PieceType& other : all_pieces) {
    const bool side_by_side =
        piece.length + other.length <= plate_length &&
        std::max(piece.width, other.width) <= plate_width;
    const bool stacked = piece.width + other.width <= plate_width &&
                         std::max(piece.length, other.length) <= plate_length;
    if (side_by_side || stacked) return false;
  }
  return true;
}

namespace internal {

namespace {

using Dims = std::pair<int64_t, int64_t>;

class Enumerator {
 public:
  Enumerator(const Instance& inst, Formulation formulation, HybridMode mode,
             const EnumerationOptions& options)
      : inst_(inst), formulation_(formulation), mode_(mode),
        options_(options) {}

  PlateGraph run() {
    const Dims root{inst_.plate_length, inst_.plate_width};
    intern(root);
    while (!queue_.empty()) {
      const int id = queue_.front();
      queue_.pop_front();
      expand(id);
    }
    return finish();
  }

 private:
  struct RawCut {
    int parent;
    Orientation orientation;
    int64_t position;
    CutKind kind;
    std::optional<int> first, second;
    std::optional<int> piece;
    bool single = false;
  };

  bool bba() const { return formulation_ == Formulation::kBba; }

  // Plate obtained from a raw region, or nullopt when no piece fits it.
  std::optional<Dims> settle(int64_t length, int64_t width) const {
    if (length < 1 || width < 1) return std::nullopt;
    const auto len_caps = fitting_caps(length, width, inst_.pieces,
                                       Orientation::kHorizontal);
    if (len_caps.empty()) return std::nullopt;
    if (!bba()) return Dims{length, width};
    const auto wid_caps =
        fitting_caps(length, width, inst_.pieces, Orientation::kVertical);
    return Dims{normalize_dim(length, len_caps), normalize_dim(width, wid_caps)};
  }

  int intern(const Dims& d) {
    auto [it, inserted] = index_.emplace(d, static_cast<int>(dims_.size()));
    if (inserted) {
      dims_.push_back(d);
      queue_.push_back(it->second);
      charge();
    }
    return it->second;
  }

  std::optional<int> child(int64_t length, int64_t width) {
    if (auto d = settle(length, width)) return intern(*d);
    return std::nullopt;
  }

  void charge() {
    if (++variables_ > options_.max_variables)
      throw ResourceLimitError("enumeration exceeded " +
                               std::to_string(options_.max_variables) +
                               " plates, cuts and extractions");
  }

  void expand(int id) {
    const auto [length, width] = dims_[id];
    for (Orientation o : {Orientation::kHorizontal, Orientation::kVertical}) {
      const bool horizontal = o == Orientation::kHorizontal;
      const int64_t dim = horizontal ? length : width;
      const auto caps = fitting_caps(length, width, inst_.pieces, o);
      const PositionSet positions = cut_positions(dim, caps, o);
      for (int64_t q : positions.positions) {
        if (bba() ? q > dim / 2 : q >= dim) continue;
        std::vector<int> pocs;
        if (mode_ != HybridMode::kNone) {
          pocs = replaceable(length, width, o, q, inst_.pieces);
          if (mode_ == HybridMode::kConservative && pocs.size() > 1)
            pocs.clear();
        }
        if (pocs.empty()) {
          add_bgc(id, o, q);
        } else {
          for (int piece : pocs) add_poc(id, o, q, piece);
        }
      }
    }
    for (const PieceType& p : inst_.pieces) {
      const bool sale =
          bba() ? extraction_eligible(length, width, p, inst_.pieces)
                : (p.length == length && p.width == width);
      if (sale) {
        extractions_.push_back({p.id, id});
        charge();
      }
    }
  }

  void add_bgc(int parent, Orientation o, int64_t q) {
    const auto [length, width] = dims_[parent];
    RawCut cut{parent, o, q, CutKind::kBgc, {}, {}, {}, false};
    if (o == Orientation::kHorizontal) {
      cut.first = child(q, width);
      cut.second = child(length - q, width);
    } else {
      cut.first = child(length, q);
      cut.second = child(length, width - q);
    }
    cuts_.push_back(cut);
    charge();
  }

  void add_poc(int parent, Orientation o, int64_t q, int piece_id) {
    const auto [length, width] = dims_[parent];
    const PieceType& p = inst_.pieces[piece_id];
    RawCut cut{parent, o, q, CutKind::kPoc, {}, {}, piece_id, false};
    if (o == Orientation::kHorizontal) {
      cut.first = child(length - p.length, width);
      cut.single = p.width == width;
      if (!cut.single) cut.second = child(p.length, width - p.width);
    } else {
      cut.second = child(length, width - p.width);
      cut.single = p.length == length;
      if (!cut.single) cut.first = child(length - p.length, p.width);
    }
    cuts_.push_back(cut);
    charge();
  }

  PlateGraph finish() {
    const int n = static_cast<int>(dims_.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Root first, then decreasing area, then lexicographic dimensions.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if ((a == 0) != (b == 0)) return a == 0;
      const int64_t area_a = dims_[a].first * dims_[a].second;
      const int64_t area_b = dims_[b].first * dims_[b].second;
      if (area_a != area_b) return area_a > area_b;
      return dims_[a] < dims_[b];
    });
    std::vector<int> remap(n);
    for (int k = 0; k < n; ++k) remap[order[k]] = k;

    PlateGraph g;
    g.formulation = formulation_;
    g.hybrid = mode_;
    for (int k = 0; k < n; ++k)
      g.plates.push_back({k, dims_[order[k]].first, dims_[order[k]].second,
                          k == 0});

    auto fix = [&](std::optional<int> p) -> std::optional<int> {
      if (p) return remap[*p];
      return std::nullopt;
    };
    for (RawCut& c : cuts_) {
      c.parent = remap[c.parent];
      c.first = fix(c.first);
      c.second = fix(c.second);
    }
    std::stable_sort(cuts_.begin(), cuts_.end(),
                     [](const RawCut& a, const RawCut& b) {
                       return std::tuple(a.parent, a.orientation, a.position,
                                         a.piece.value_or(-1)) <
                              std::tuple(b.parent, b.orientation, b.position,
                                         b.piece.value_or(-1));
                     });
    for (const RawCut& c : cuts_) {
      Cut cut;
      cut.id = static_cast<int>(g.cuts.size());
      cut.parent = c.parent;
      cut.orientation = c.orientation;
      cut.position = c.position;
      cut.kind = c.kind;
      cut.first_child = c.first;
      cut.second_child = c.second;
      cut.poc_piece = c.piece;
      cut.poc_single_cut = c.single;
      for (std::optional<int> ch : {c.first, c.second}) {
        if (!ch) continue;
        auto same = std::find_if(cut.children.begin(), cut.children.end(),
                                 [&](const CutChild& x) { return x.plate == *ch; });
        if (same != cut.children.end()) {
          ++same->multiplicity;
        } else {
          cut.children.push_back({*ch, 1});
        }
      }
      std::sort(cut.children.begin(), cut.children.end(),
                [](const CutChild& a, const CutChild& b) { return a.plate < b.plate; });
      if (cut.kind == CutKind::kPoc) {
        ++g.stats.hybridised;
        int residuals = 0;
        for (const CutChild& ch : cut.children) residuals += ch.multiplicity;
        if (residuals == 1) ++g.stats.single_residual;
      }
      g.cuts.push_back(std::move(cut));
    }
    for (Extraction& e : extractions_) e.plate = remap[e.plate];
    std::sort(extractions_.begin(), extractions_.end(),
              [](const Extraction& a, const Extraction& b) {
                return std::pair(a.plate, a.piece) < std::pair(b.plate, b.piece);
              });
    g.extractions = std::move(extractions_);
    g.stats.plates = static_cast<int64_t>(g.plates.size());
    g.stats.cuts = static_cast<int64_t>(g.cuts.size());
    g.stats.extractions = static_cast<int64_t>(g.extractions.size());
    return g;
  }

  const Instance& inst_;
  Formulation formulation_;
  HybridMode mode_;
  EnumerationOptions options_;
  std::map<Dims, int> index_;
  std::vector<Dims> dims_;
  std::deque<int> queue_;
  std::vector<RawCut> cuts_;
  std::vector<Extraction> extractions_;
  int64_t variables_ = 0;
};

}  // namespace

PlateGraph enumerate_graph(const Instance& inst, Formulation formulation,
                           HybridMode mode, const EnumerationOptions& options) {
  return Enumerator(inst, formulation, mode, options).run();
}

}  // namespace internal

PlateGraph enumerate_bba(const Instance& inst,
                         const EnumerationOptions& options) {
  return internal::enumerate_graph(inst, Formulation::kBba, HybridMode::kNone,
                                   options);
}

PlateGraph enumerate_fmt(const Instance& inst,
                         const EnumerationOptions& options) {
  return internal::enumerate_graph(inst, Formulation::kFmt, HybridMode::kNone,
                                   options);
}

PlateGraph build_graph(const Instance& inst, Formulation formulation,
                       const HybridisationConfig& cfg,
                       const EnumerationOptions& options) {
  return internal::enumerate_graph(inst, formulation, cfg.mode, options);
}

}  // namespace gcut
