#include "gcut/verify.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace gcut {

int64_t CuttingTree::value(const Instance& inst) const {
  int64_t total = 0;
  for (const TreeNode& n : nodes)
    if (n.kind == NodeKind::kPiece) total += inst.pieces.at(n.piece).profit;
  return total;
}

namespace {

class Decoder {
 public:
  Decoder(const VarAssignment& a, const MilpModel& m, const PlateGraph& g,
          const Instance& inst)
      : m_(m), g_(g), inst_(inst) {
    const std::vector<double> dense = a.dense(m);
    remaining_.resize(dense.size());
    for (std::size_t k = 0; k < dense.size(); ++k) {
      const double r = std::round(dense[k]);
      if (std::abs(dense[k] - r) > kIntegerTolerance || r < 0)
        throw DecodeError("variable " + m.variables[k].name +
                          " is not a non-negative integer");
      remaining_[k] = static_cast<int64_t>(r);
    }
    by_parent_ = g.cuts_by_parent();
    by_plate_ = g.extractions_by_plate();
  }

  CuttingTree run(double objective) {
    tree_.plate_length = inst_.plate_length;
    tree_.plate_width = inst_.plate_width;
    region(0, 0, inst_.plate_length, inst_.plate_width, 0);
    for (std::size_t k = 0; k < remaining_.size(); ++k)
      if (remaining_[k] != 0)
        throw DecodeError("flow does not close: " +
                          std::to_string(remaining_[k]) +
                          " unconsumed use(s) of " + m_.variables[k].name);
    const int64_t value = tree_.value(inst_);
    if (std::abs(static_cast<double>(value) - objective) > 1e-6)
      throw DecodeError("decoded tree is worth " + std::to_string(value) +
                        " but the assignment claims " +
                        std::to_string(objective));
    return std::move(tree_);
  }

 private:
  int add(TreeNode n) {
    tree_.nodes.push_back(n);
    return static_cast<int>(tree_.nodes.size() - 1);
  }

  int leaf(int64_t x, int64_t y, int64_t length, int64_t width) {
    return add({x, y, length, width, NodeKind::kWaste});
  }

  // Splits a region with one guillotine cut; children are filled by the
  // callbacks and linked afterwards (node storage may move).
  template <typename First, typename Second>
  int split(int64_t x, int64_t y, int64_t length, int64_t width,
            Orientation o, int64_t q, First first, Second second) {
    TreeNode n{x, y, length, width, NodeKind::kCut, o, q};
    const int id = add(n);
    int a, b;
    if (o == Orientation::kHorizontal) {
      a = first(x, y, q, width);
      b = second(x + q, y, length - q, width);
    } else {
      a = first(x, y, length, q);
      b = second(x, y + q, length, width - q);
    }
    tree_.nodes[id].first = a;
    tree_.nodes[id].second = b;
    return id;
  }

  int waste(int64_t x, int64_t y, int64_t l, int64_t w) {
    return leaf(x, y, l, w);
  }

  // A raw region holding one copy of plate j (whose dimensions may be
  // smaller after normalization).
  int region(int64_t x, int64_t y, int64_t length, int64_t width, int j) {
    const Plate& p = g_.plates[j];
    if (length < p.length || width < p.width)
      throw DecodeError("plate " + std::to_string(j) + " does not fit region");
    auto w = [this](int64_t a, int64_t b, int64_t c, int64_t d) {
      return waste(a, b, c, d);
    };
    if (length > p.length)
      return split(x, y, length, width, Orientation::kHorizontal, p.length,
                   [&](int64_t a, int64_t b, int64_t c, int64_t d) {
                     return region(a, b, c, d, j);
                   },
                   w);
    if (width > p.width)
      return split(x, y, length, width, Orientation::kVertical, p.width,
                   [&](int64_t a, int64_t b, int64_t c, int64_t d) {
                     return region(a, b, c, d, j);
                   },
                   w);
    return use_plate(x, y, j);
  }

  int optional_region(int64_t x, int64_t y, int64_t l, int64_t w,
                      std::optional<int> plate) {
    if (plate) return region(x, y, l, w, *plate);
    return waste(x, y, l, w);
  }

  // Piece in the lower-left corner of the region, the rest wasted.
  int piece_in(int64_t x, int64_t y, int64_t length, int64_t width,
               int piece, LeafSource source) {
    const PieceType& p = inst_.pieces[piece];
    auto w = [this](int64_t a, int64_t b, int64_t c, int64_t d) {
      return waste(a, b, c, d);
    };
    auto self = [&](int64_t a, int64_t b, int64_t c, int64_t d) {
      return piece_in(a, b, c, d, piece, source);
    };
    if (length > p.length)
      return split(x, y, length, width, Orientation::kHorizontal, p.length,
                   self, w);
    if (width > p.width)
      return split(x, y, length, width, Orientation::kVertical, p.width, self,
                   w);
    TreeNode n{x, y, length, width, NodeKind::kPiece};
    n.piece = piece;
    n.source = source;
    return add(n);
  }

  int use_plate(int64_t x, int64_t y, int j) {
    const Plate& p = g_.plates[j];
    for (int k : by_plate_[j]) {
      int64_t& left = remaining_[m_.extraction_column[k]];
      if (left == 0) continue;
      --left;
      return piece_in(x, y, p.length, p.width, g_.extractions[k].piece,
                      LeafSource::kExtraction);
    }
    for (int c : by_parent_[j]) {
      int64_t& left = remaining_[m_.cut_column[c]];
      if (left == 0) continue;
      --left;
      return apply_cut(x, y, p, g_.cuts[c]);
    }
    return waste(x, y, p.length, p.width);
  }

  int apply_cut(int64_t x, int64_t y, const Plate& p, const Cut& cut) {
    if (cut.kind == CutKind::kBgc) {
      return split(x, y, p.length, p.width, cut.orientation, cut.position,
                   [&](int64_t a, int64_t b, int64_t c, int64_t d) {
                     return optional_region(a, b, c, d, cut.first_child);
                   },
                   [&](int64_t a, int64_t b, int64_t c, int64_t d) {
                     return optional_region(a, b, c, d, cut.second_child);
                   });
    }
    const int piece = *cut.poc_piece;
    const PieceType& pc = inst_.pieces[piece];
    const Orientation second_o = cut.orientation == Orientation::kHorizontal
                                     ? Orientation::kVertical
                                     : Orientation::kHorizontal;
    const int64_t second_q = second_o == Orientation::kVertical ? pc.width
                                                                : pc.length;
    const bool horizontal_first = cut.orientation == Orientation::kHorizontal;
    const std::optional<int> first_rest =
        horizontal_first ? cut.first_child : cut.second_child;
    const std::optional<int> second_rest =
        horizontal_first ? cut.second_child : cut.first_child;
    auto strip = [&](int64_t a, int64_t b, int64_t c, int64_t d) {
      if (cut.poc_single_cut) return piece_sized(a, b, c, d, piece);
      return split(a, b, c, d, second_o, second_q,
                   [&](int64_t a2, int64_t b2, int64_t c2, int64_t d2) {
                     return piece_sized(a2, b2, c2, d2, piece);
                   },
                   [&](int64_t a2, int64_t b2, int64_t c2, int64_t d2) {
                     return optional_region(a2, b2, c2, d2, second_rest);
                   });
    };
    return split(x, y, p.length, p.width, cut.orientation, cut.position, strip,
                 [&](int64_t a, int64_t b, int64_t c, int64_t d) {
                   return optional_region(a, b, c, d, first_rest);
                 });
  }

  int piece_sized(int64_t x, int64_t y, int64_t l, int64_t w, int piece) {
    const int col = m_.sale_column[piece];
    if (col >= 0 && remaining_[col] > 0) {
      --remaining_[col];
      TreeNode n{x, y, l, w, NodeKind::kPiece};
      n.piece = piece;
      n.source = LeafSource::kPocSale;
      return add(n);
    }
    return waste(x, y, l, w);
  }

  const MilpModel& m_;
  const PlateGraph& g_;
  const Instance& inst_;
  std::vector<int64_t> remaining_;
  std::vector<std::vector<int>> by_parent_;
  std::vector<std::vector<int>> by_plate_;
  CuttingTree tree_;
};

}  // namespace

CuttingTree decode(const VarAssignment& assignment, const MilpModel& m,
                   const PlateGraph& g, const Instance& inst) {
  return Decoder(assignment, m, g, inst).run(assignment.objective);
}

SolutionReport check_solution(const CuttingTree& tree, const Instance& inst,
                              std::optional<int64_t> expected_value) {
  SolutionReport report;
  auto fail = [&](std::string what) {
    report.ok = false;
    report.violations.push_back(std::move(what));
  };
  if (tree.nodes.empty()) {
    fail("empty tree");
    return report;
  }
  const TreeNode& root = tree.nodes[0];
  if (root.x != 0 || root.y != 0 || root.length != inst.plate_length ||
      root.width != inst.plate_width)
    fail("root does not match the original plate");

  std::map<int, int64_t> sold;
  std::vector<int> stack{0};
  std::vector<char> seen(tree.nodes.size(), 0);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < 0 || static_cast<std::size_t>(id) >= tree.nodes.size()) {
      fail("dangling node reference " + std::to_string(id));
      continue;
    }
    if (seen[id]) {
      fail("node " + std::to_string(id) + " reached twice");
      continue;
    }
    seen[id] = 1;
    const TreeNode& n = tree.nodes[id];
    const std::string at = "node " + std::to_string(id);
    if (n.length < 1 || n.width < 1) fail(at + " has an empty region");
    switch (n.kind) {
      case NodeKind::kWaste:
        break;
      case NodeKind::kPiece: {
        if (n.piece < 0 || static_cast<std::size_t>(n.piece) >= inst.pieces.size()) {
          fail(at + " sells an unknown piece");
          break;
        }
        const PieceType& p = inst.pieces[n.piece];
        if (n.length != p.length || n.width != p.width)
          fail(at + " does not match piece " + std::to_string(p.id) +
               " dimensions");
        ++sold[inst.demand_group(p.id)];
        report.value += p.profit;
        break;
      }
      case NodeKind::kCut: {
        const bool horizontal = n.orientation == Orientation::kHorizontal;
        const int64_t dim = horizontal ? n.length : n.width;
        if (n.position <= 0 || n.position >= dim) {
          fail(at + " cuts outside its region");
          break;
        }
        if (n.first < 0 || n.second < 0 ||
            static_cast<std::size_t>(std::max(n.first, n.second)) >=
                tree.nodes.size()) {
          fail(at + " lacks two children");
          break;
        }
        const TreeNode& a = tree.nodes[n.first];
        const TreeNode& b = tree.nodes[n.second];
        const auto expect_a =
            horizontal ? std::tuple(n.x, n.y, n.position, n.width)
                       : std::tuple(n.x, n.y, n.length, n.position);
        const auto expect_b =
            horizontal
                ? std::tuple(n.x + n.position, n.y, n.length - n.position, n.width)
                : std::tuple(n.x, n.y + n.position, n.length, n.width - n.position);
        if (std::tuple(a.x, a.y, a.length, a.width) != expect_a ||
            std::tuple(b.x, b.y, b.length, b.width) != expect_b)
          fail(at + " children do not partition it (containment violation)");
        stack.push_back(n.first);
        stack.push_back(n.second);
        break;
      }
    }
  }
  for (const auto& [group, count] : sold)
    if (count > inst.pieces[group].demand)
      fail("demand violation: piece " + std::to_string(group) + " sold " +
           std::to_string(count) + " times, demand " +
           std::to_string(inst.pieces[group].demand));
  if (expected_value && *expected_value != report.value)
    fail("objective " + std::to_string(report.value) + " differs from " +
         std::to_string(*expected_value));
  return report;
}

Placement to_placement(const CuttingTree& tree, bool with_waste) {
  Placement p;
  p.plate_length = tree.plate_length;
  p.plate_width = tree.plate_width;
  for (const TreeNode& n : tree.nodes) {
    if (n.kind == NodeKind::kPiece)
      p.rects.push_back({n.piece, n.x, n.y, n.length, n.width});
    else if (n.kind == NodeKind::kWaste && with_waste)
      p.rects.push_back({-1, n.x, n.y, n.length, n.width});
  }
  return p;
}

Placement parse_placement_text(const std::string& text) {
  Placement p;
  bool have_plate = false;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    raw = raw.substr(0, raw.find('#'));
    std::istringstream fields(raw);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "plate") {
      if (!(fields >> p.plate_length >> p.plate_width))
        throw ParseError("expected 'plate L W'", number);
      have_plate = true;
      continue;
    }
    PlacedRect r;
    if (first != "-") {
      try {
        r.piece = std::stoi(first);
      } catch (const std::exception&) {
        throw ParseError("bad piece id '" + first + "'", number);
      }
    }
    if (!(fields >> r.x >> r.y >> r.length >> r.width))
      throw ParseError("expected 'id x y l w'", number);
    std::string extra;
    if (fields >> extra) throw ParseError("trailing field '" + extra + "'", number);
    p.rects.push_back(r);
  }
  if (!have_plate) {
    for (const PlacedRect& r : p.rects) {
      p.plate_length = std::max(p.plate_length, r.x + r.length);
      p.plate_width = std::max(p.plate_width, r.y + r.width);
    }
  }
  return p;
}

Placement parse_placement(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open placement file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_placement_text(buf.str());
}

std::vector<std::string> placement_violations(const Placement& p) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < p.rects.size(); ++a) {
    const PlacedRect& r = p.rects[a];
    if (r.length < 1 || r.width < 1 || r.x < 0 || r.y < 0 ||
        r.x + r.length > p.plate_length || r.y + r.width > p.plate_width)
      out.push_back("rectangle " + std::to_string(a) + " leaves the plate");
    for (std::size_t b = a + 1; b < p.rects.size(); ++b) {
      const PlacedRect& s = p.rects[b];
      if (r.x < s.x + s.length && s.x < r.x + r.length &&
          r.y < s.y + s.width && s.y < r.y + r.width)
        out.push_back("rectangles " + std::to_string(a) + " and " +
                      std::to_string(b) + " overlap");
    }
  }
  return out;
}

namespace {

struct Region {
  int64_t x0, y0, x1, y1;
  auto operator<=>(const Region&) const = default;
};

class GuillotineAudit {
 public:
  explicit GuillotineAudit(const Placement& p) {
    for (const PlacedRect& r : p.rects)
      if (r.piece >= 0) rects_.push_back(r);
  }

  bool run(const Region& whole) { return splittable(whole); }

 private:
  bool splittable(const Region& reg) {
    if (auto it = memo_.find(reg); it != memo_.end()) return it->second;
    std::vector<const PlacedRect*> inside;
    for (const PlacedRect& r : rects_)
      if (r.x >= reg.x0 && r.x + r.length <= reg.x1 && r.y >= reg.y0 &&
          r.y + r.width <= reg.y1)
        inside.push_back(&r);
    bool ok = inside.size() <= 1;
    if (!ok) ok = try_axis(reg, inside, true) || try_axis(reg, inside, false);
    memo_.emplace(reg, ok);
    return ok;
  }

  bool try_axis(const Region& reg, const std::vector<const PlacedRect*>& inside,
                bool along_x) {
    std::vector<int64_t> lines;
    for (const PlacedRect* r : inside) {
      lines.push_back(along_x ? r->x : r->y);
      lines.push_back(along_x ? r->x + r->length : r->y + r->width);
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    const int64_t lo = along_x ? reg.x0 : reg.y0;
    const int64_t hi = along_x ? reg.x1 : reg.y1;
    for (int64_t c : lines) {
      if (c <= lo || c >= hi) continue;
      const bool crosses = std::any_of(
          inside.begin(), inside.end(), [&](const PlacedRect* r) {
            const int64_t a = along_x ? r->x : r->y;
            const int64_t b = along_x ? r->x + r->length : r->y + r->width;
            return a < c && c < b;
          });
      if (crosses) continue;
      const Region left = along_x ? Region{reg.x0, reg.y0, c, reg.y1}
                                  : Region{reg.x0, reg.y0, reg.x1, c};
      const Region right = along_x ? Region{c, reg.y0, reg.x1, reg.y1}
                                   : Region{reg.x0, c, reg.x1, reg.y1};
      if (splittable(left) && splittable(right)) return true;
    }
    return false;
  }

  std::vector<PlacedRect> rects_;
  std::map<Region, bool> memo_;
};

}  // namespace

bool is_guillotinable(const Placement& p) {
  return GuillotineAudit(p).run({0, 0, p.plate_length, p.plate_width});
}

Placement transpose(const Placement& p) {
  Placement t;
  t.plate_length = p.plate_width;
  t.plate_width = p.plate_length;
  for (const PlacedRect& r : p.rects)
    t.rects.push_back({r.piece, r.y, r.x, r.width, r.length});
  return t;
}

namespace {

const char* const kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
                                "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string fmt(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << v;
  return out.str();
}

}  // namespace

std::string render_svg(const Placement& p, const Instance* inst) {
  const double longest =
      static_cast<double>(std::max<int64_t>({p.plate_length, p.plate_width, 1}));
  const double scale = 600.0 / longest;
  const double margin = 10.0;
  // Width runs left to right and length bottom to top, so horizontal cuts
  // appear as horizontal lines.
  const double w = p.plate_width * scale + 2 * margin;
  const double h = p.plate_length * scale + 2 * margin;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w)
      << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << ' '
      << fmt(h) << "\">\n";
  auto sx = [&](int64_t y) { return margin + y * scale; };
  auto sy = [&](int64_t x, int64_t extent) {
    return margin + (p.plate_length - x - extent) * scale;
  };
  svg << "  <rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin)
      << "\" width=\"" << fmt(p.plate_width * scale) << "\" height=\""
      << fmt(p.plate_length * scale)
      << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const PlacedRect& r : p.rects) {
    const bool waste = r.piece < 0;
    const std::string fill =
        waste ? "#eeeeee" : kPalette[r.piece % std::size(kPalette)];
    svg << "  <rect x=\"" << fmt(sx(r.y)) << "\" y=\"" << fmt(sy(r.x, r.length))
        << "\" width=\"" << fmt(r.width * scale) << "\" height=\""
        << fmt(r.length * scale) << "\" fill=\"" << fill
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (waste) continue;
    std::string label = std::to_string(r.piece);
    if (inst && static_cast<std::size_t>(r.piece) < inst->pieces.size())
      label += " (" + std::to_string(inst->pieces[r.piece].profit) + ")";
    svg << "  <text x=\"" << fmt(sx(r.y) + r.width * scale / 2) << "\" y=\""
        << fmt(sy(r.x, r.length) + r.length * scale / 2)
        << "\" font-size=\"12\" text-anchor=\"middle\" "
           "dominant-baseline=\"middle\">"
        << label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_svg(const CuttingTree& tree, const Instance* inst) {
  return render_svg(to_placement(tree, false), inst);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error while writing " + path);
}

}  // namespace gcut
