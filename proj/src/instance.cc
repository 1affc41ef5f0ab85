#include "gcut/instance.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gcut {

int Instance::demand_group(int piece) const {
  const PieceType& p = pieces.at(piece);
  return p.twin_of ? std::min(piece, *p.twin_of) : piece;
}

namespace {

struct Line {
  int number;
  std::vector<int64_t> fields;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string tok;
    Line line{number, {}};
    while (fields >> tok) {
      std::size_t used = 0;
      int64_t value = 0;
      try {
        value = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + tok + "'", number);
      }
      if (used != tok.size())
        throw ParseError("expected an integer, got '" + tok + "'", number);
      line.fields.push_back(value);
    }
    if (!line.fields.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::string rotation_keyword_stripped(const std::string& text, bool* rotation,
                                      int* line_no) {
  // The extended header "rotation 0|1" is the only non-numeric line.
  std::istringstream in(text);
  std::ostringstream out;
  std::string raw;
  int number = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++number;
    std::string body = raw.substr(0, raw.find('#'));
    std::istringstream fields(body);
    std::string first;
    if (!seen_data && (fields >> first) && first == "rotation") {
      int flag = -1;
      if (!(fields >> flag) || (flag != 0 && flag != 1))
        throw ParseError("rotation header must be 'rotation 0' or 'rotation 1'",
                         number);
      *rotation = flag == 1;
      *line_no = number;
      out << '\n';
      continue;
    }
    if (!first.empty()) seen_data = true;
    out << raw << '\n';
  }
  return out.str();
}

}  // namespace

Instance parse_instance_text(const std::string& text, InstanceFormat format,
                             bool rotation) {
  Instance inst;
  std::string body = text;
  if (format == InstanceFormat::kExtended) {
    int header_line = 0;
    body = rotation_keyword_stripped(text, &inst.rotation_allowed, &header_line);
  }
  const std::vector<Line> lines = tokenize(body);
  if (lines.empty()) throw ParseError("empty instance", 1);
  if (lines[0].fields.size() != 2)
    throw ParseError("expected plate dimensions 'L W'", lines[0].number);
  inst.plate_length = lines[0].fields[0];
  inst.plate_width = lines[0].fields[1];
  if (lines.size() < 2)
    throw ParseError("missing piece count", lines[0].number + 1);
  if (lines[1].fields.size() != 1)
    throw ParseError("expected piece count 'm'", lines[1].number);
  const int64_t m = lines[1].fields[0];
  if (m < 1) throw ParseError("piece count must be positive", lines[1].number);
  if (static_cast<int64_t>(lines.size()) - 2 != m) {
    const int at = lines.size() > 2 ? lines.back().number : lines[1].number;
    throw ParseError("expected " + std::to_string(m) + " piece lines, found " +
                         std::to_string(lines.size() - 2),
                     at);
  }
  for (int64_t i = 0; i < m; ++i) {
    const Line& line = lines[i + 2];
    const std::size_t n = line.fields.size();
    const bool extended_ok = format == InstanceFormat::kExtended && n == 5;
    if (n != 4 && !extended_ok)
      throw ParseError("expected 'l w p u'", line.number);
    PieceType p;
    p.id = static_cast<int>(i);
    p.length = line.fields[0];
    p.width = line.fields[1];
    p.profit = line.fields[2];
    p.demand = line.fields[3];
    if (p.length < 1 || p.width < 1 || p.profit < 1 || p.demand < 1)
      throw ParseError("piece fields must be positive", line.number);
    if (n == 5) {
      if (line.fields[4] < 0 || line.fields[4] >= m || line.fields[4] == i)
        throw ParseError("twin reference out of range", line.number);
      p.twin_of = static_cast<int>(line.fields[4]);
    }
    inst.pieces.push_back(p);
  }
  if (inst.plate_length < 1 || inst.plate_width < 1)
    throw ParseError("plate dimensions must be positive", lines[0].number);
  for (const PieceType& p : inst.pieces) {
    if (!p.twin_of) continue;
    const PieceType& t = inst.pieces[*p.twin_of];
    if (!t.twin_of || *t.twin_of != p.id || t.length != p.width ||
        t.width != p.length || t.profit != p.profit)
      throw ParseError("inconsistent twin pair for piece " +
                           std::to_string(p.id),
                       lines[p.id + 2].number);
  }
  inst.rotation_allowed = inst.rotation_allowed || rotation;
  return validate(std::move(inst));
}

Instance parse_instance(const std::string& path, InstanceFormat format,
                        bool rotation) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str(), format, rotation);
}

std::string to_text(const Instance& inst) {
  std::ostringstream out;
  const bool extended =
      inst.rotation_allowed ||
      std::any_of(inst.pieces.begin(), inst.pieces.end(),
                  [](const PieceType& p) { return p.twin_of.has_value(); });
  if (extended) out << "rotation " << (inst.rotation_allowed ? 1 : 0) << '\n';
  out << inst.plate_length << ' ' << inst.plate_width << '\n'
      << inst.pieces.size() << '\n';
  for (const PieceType& p : inst.pieces) {
    out << p.length << ' ' << p.width << ' ' << p.profit << ' ' << p.demand;
    if (p.twin_of) out << ' ' << *p.twin_of;
    out << '\n';
  }
  return out.str();
}

Instance validate(Instance inst) {
  if (inst.plate_length < 1 || inst.plate_width < 1)
    throw DimensionError("plate dimensions must be positive");
  if (inst.pieces.empty()) throw DimensionError("instance has no pieces");
  inst.constrained = false;
  for (std::size_t i = 0; i < inst.pieces.size(); ++i) {
    PieceType& p = inst.pieces[i];
    p.id = static_cast<int>(i);
    const std::string name = "piece " + std::to_string(i) + " (" +
                             std::to_string(p.length) + "x" +
                             std::to_string(p.width) + ")";
    if (p.length < 1 || p.width < 1 || p.profit < 1 || p.demand < 1)
      throw DimensionError(name + " has a non-positive field");
    const bool straight =
        fits(p.length, p.width, inst.plate_length, inst.plate_width);
    const bool turned =
        fits(p.width, p.length, inst.plate_length, inst.plate_width);
    if (!straight && !turned)
      throw DimensionError(name + " does not fit the plate in any orientation");
    if (!straight && !inst.rotation_allowed)
      throw DimensionError(name +
                           " fits the plate only rotated and rotation is off");
    if (straight) {
      const int64_t copies = (inst.plate_length / p.length) *
                             (inst.plate_width / p.width);
      if (p.demand < copies) inst.constrained = true;
    }
  }
  return inst;
}

Instance expand_rotation(const Instance& inst) {
  if (!inst.rotation_allowed) return inst;
  Instance out = inst;
  const std::size_t original = out.pieces.size();
  for (std::size_t i = 0; i < original; ++i) {
    PieceType& p = out.pieces[i];
    if (p.twin_of) continue;
    const bool straight =
        fits(p.length, p.width, inst.plate_length, inst.plate_width);
    const bool turned =
        fits(p.width, p.length, inst.plate_length, inst.plate_width);
    if (!straight) {
      std::swap(p.length, p.width);
      continue;
    }
    if (p.length == p.width || !turned) continue;
    PieceType twin = p;
    twin.id = static_cast<int>(out.pieces.size());
    std::swap(twin.length, twin.width);
    twin.twin_of = p.id;
    out.pieces[i].twin_of = twin.id;
    out.pieces.push_back(twin);
  }
  return validate(std::move(out));
}

Instance make_unweighted(Instance inst) {
  for (PieceType& p : inst.pieces) p.profit = p.length * p.width;
  return inst;
}

}  // namespace gcut
