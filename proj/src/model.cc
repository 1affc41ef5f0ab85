#include "gcut/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gcut {

int MilpModel::find(const std::string& var_name) const {
  for (std::size_t k = 0; k < variables.size(); ++k)
    if (variables[k].name == var_name) return static_cast<int>(k);
  return -1;
}

std::string variable_name(const PlateGraph& g, const Cut& cut) {
  (void)g;
  std::ostringstream name;
  if (cut.kind == CutKind::kPoc) {
    name << "xh_" << cut.id;
  } else {
    name << "x_" << orientation_char(cut.orientation) << '_' << cut.position
         << '_' << cut.parent;
  }
  return name.str();
}

MilpModel build_model(const PlateGraph& g, const Instance& inst,
                      const HybridisationConfig& cfg) {
  MilpModel m;
  m.binding = cfg.binding && cfg.mode != HybridMode::kNone;
  const bool hybrid = cfg.mode != HybridMode::kNone;
  const std::size_t n_pieces = inst.pieces.size();

  auto add_var = [&](std::string name, std::optional<int64_t> upper) {
    m.variables.push_back({std::move(name), 0, upper, true});
    return static_cast<int>(m.variables.size() - 1);
  };

  for (const Cut& c : g.cuts)
    m.cut_column.push_back(add_var(variable_name(g, c), std::nullopt));
  for (const Extraction& e : g.extractions) {
    const PieceType& p = inst.pieces.at(e.piece);
    m.extraction_column.push_back(
        add_var("e_" + std::to_string(e.piece) + "_" + std::to_string(e.plate),
                p.demand));
  }
  m.sale_column.assign(n_pieces, -1);
  if (hybrid) {
    for (const PieceType& p : inst.pieces)
      m.sale_column[p.id] = add_var("s_" + std::to_string(p.id), p.demand);
  }
  for (const Cut& c : g.cuts) {
    if (c.kind != CutKind::kPoc) continue;
    if (!c.poc_piece || *c.poc_piece < 0 ||
        static_cast<std::size_t>(*c.poc_piece) >= n_pieces || !hybrid)
      throw ModelError("POC " + std::to_string(c.id) +
                       " refers to a piece without a demand row");
  }

  // Plate conservation: uses of a plate never exceed the copies made.
  std::vector<std::vector<Term>> rows(g.plates.size());
  for (const Cut& c : g.cuts) {
    rows[c.parent].push_back({m.cut_column[c.id], 1});
    for (const CutChild& ch : c.children)
      rows[ch.plate].push_back({m.cut_column[c.id], -ch.multiplicity});
  }
  for (std::size_t k = 0; k < g.extractions.size(); ++k)
    rows[g.extractions[k].plate].push_back({m.extraction_column[k], 1});
  for (const Plate& p : g.plates) {
    std::vector<Term>& row = rows[p.id];
    std::stable_sort(row.begin(), row.end(),
                     [](const Term& a, const Term& b) { return a.var < b.var; });
    m.constraints.push_back({"cons_" + std::to_string(p.id),
                             RowSense::kLessEqual, p.is_original ? 1 : 0,
                             std::move(row)});
  }

  // Demand, shared by rotation twins.
  std::map<int, std::vector<Term>> demand;
  for (std::size_t k = 0; k < g.extractions.size(); ++k)
    demand[inst.demand_group(g.extractions[k].piece)].push_back(
        {m.extraction_column[k], 1});
  if (hybrid)
    for (const PieceType& p : inst.pieces)
      demand[inst.demand_group(p.id)].push_back({m.sale_column[p.id], 1});
  for (auto& [group, row] : demand) {
    std::sort(row.begin(), row.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    m.constraints.push_back({"dem_" + std::to_string(group),
                             RowSense::kLessEqual, inst.pieces[group].demand,
                             std::move(row)});
  }

  // Piece-sized plates sold must come from POCs of that piece.
  if (hybrid) {
    for (const PieceType& p : inst.pieces) {
      std::vector<Term> row{{m.sale_column[p.id], 1}};
      for (const Cut& c : g.cuts)
        if (c.kind == CutKind::kPoc && *c.poc_piece == p.id)
          row.push_back({m.cut_column[c.id], -1});
      m.constraints.push_back(
          {"poc_" + std::to_string(p.id),
           m.binding ? RowSense::kEqual : RowSense::kLessEqual, 0,
           std::move(row)});
    }
  }

  for (std::size_t k = 0; k < g.extractions.size(); ++k)
    m.objective.push_back(
        {m.extraction_column[k], inst.pieces[g.extractions[k].piece].profit});
  if (hybrid)
    for (const PieceType& p : inst.pieces)
      m.objective.push_back({m.sale_column[p.id], p.profit});
  return m;
}

double objective_value(const MilpModel& m, std::span<const double> values) {
  double total = 0.0;
  for (const Term& t : m.objective) total += t.coef * values[t.var];
  return total;
}

std::vector<std::string> violations(const MilpModel& m,
                                    std::span<const double> values,
                                    double tolerance) {
  std::vector<std::string> out;
  if (values.size() != m.variables.size()) {
    out.push_back("assignment has " + std::to_string(values.size()) +
                  " values for " + std::to_string(m.variables.size()) +
                  " variables");
    return out;
  }
  for (std::size_t k = 0; k < m.variables.size(); ++k) {
    const Variable& v = m.variables[k];
    if (values[k] < v.lower - tolerance ||
        (v.upper && values[k] > *v.upper + tolerance))
      out.push_back("bound " + v.name);
    if (v.integer && std::abs(values[k] - std::round(values[k])) > tolerance)
      out.push_back("integrality " + v.name);
  }
  for (const Constraint& c : m.constraints) {
    double lhs = 0.0;
    for (const Term& t : c.row) lhs += t.coef * values[t.var];
    const bool ok =
        c.sense == RowSense::kLessEqual  ? lhs <= c.rhs + tolerance
        : c.sense == RowSense::kEqual    ? std::abs(lhs - c.rhs) <= tolerance
                                         : lhs >= c.rhs - tolerance;
    if (!ok) out.push_back("row " + c.name);
  }
  return out;
}

namespace {

class NameTable {
 public:
  explicit NameTable(bool strict) : strict_(strict) {}

  std::string operator()(const std::string& name) {
    if (!strict_) return name;
    std::string short_name = name.substr(0, 8);
    auto [it, inserted] = owner_.emplace(short_name, name);
    if (!inserted && it->second != name)
      throw ModelError("strict MPS names collide: '" + it->second + "' and '" +
                       name + "' both truncate to '" + short_name + "'");
    return short_name;
  }

 private:
  bool strict_;
  std::map<std::string, std::string> owner_;
};

// Fixed-field layout: fields start at columns 2, 5, 15, 25, 40 and 50.
// Names longer than eight characters push later fields right.
void field_line(std::ostream& out, const std::string& f1, const std::string& f2,
                const std::string& f3 = "", const std::string& f4 = "") {
  std::string line = " " + f1;
  line.resize(4, ' ');
  line += f2;
  if (!f3.empty()) {
    if (line.size() < 14) line.resize(14, ' ');
    else line += "  ";
    line += f3;
  }
  if (!f4.empty()) {
    if (line.size() < 24) line.resize(24, ' ');
    else line += "  ";
    line += f4;
  }
  out << line << '\n';
}

}  // namespace

std::string to_mps(const MilpModel& m, const MpsOptions& options) {
  NameTable col_name(options.strict);
  NameTable row_name(options.strict);
  const std::string objective_row = "obj";
  std::ostringstream out;
  out << "NAME          " << m.name << '\n';
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n";
  field_line(out, "N", row_name(objective_row));
  for (const Constraint& c : m.constraints) {
    const char* sense = c.sense == RowSense::kLessEqual ? "L"
                        : c.sense == RowSense::kEqual   ? "E"
                                                        : "G";
    field_line(out, sense, row_name(c.name));
  }

  std::vector<std::vector<std::pair<int, int64_t>>> columns(m.variables.size());
  for (const Term& t : m.objective) columns[t.var].emplace_back(-1, t.coef);
  for (std::size_t r = 0; r < m.constraints.size(); ++r)
    for (const Term& t : m.constraints[r].row)
      columns[t.var].emplace_back(static_cast<int>(r), t.coef);

  out << "COLUMNS\n";
  bool in_integer_block = false;
  auto open_marker = [&](bool integer) {
    if (options.relax || integer == in_integer_block) return;
    out << "    MARKER                 'MARKER'                 "
        << (integer ? "'INTORG'" : "'INTEND'") << '\n';
    in_integer_block = integer;
  };
  for (std::size_t k = 0; k < m.variables.size(); ++k) {
    const Variable& v = m.variables[k];
    open_marker(v.integer);
    const std::string name = col_name(v.name);
    if (columns[k].empty()) {
      field_line(out, "", name, row_name(objective_row), "0");
      continue;
    }
    for (const auto& [row, coef] : columns[k]) {
      const std::string rname =
          row < 0 ? row_name(objective_row) : row_name(m.constraints[row].name);
      field_line(out, "", name, rname, std::to_string(coef));
    }
  }
  open_marker(false);

  out << "RHS\n";
  for (const Constraint& c : m.constraints)
    if (c.rhs != 0)
      field_line(out, "", "RHS", row_name(c.name), std::to_string(c.rhs));

  out << "BOUNDS\n";
  for (const Variable& v : m.variables) {
    const std::string name = col_name(v.name);
    if (v.upper) {
      field_line(out, "UP", "BND", name, std::to_string(*v.upper));
    } else {
      field_line(out, "PL", "BND", name);
    }
  }
  out << "ENDATA\n";
  return out.str();
}

void write_mps(const MilpModel& m, const std::string& path,
               const MpsOptions& options) {
  const std::string text = to_mps(m, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write MPS file " + path);
  out << text;
  if (!out) throw std::runtime_error("error while writing MPS file " + path);
}

ModelStats model_stats(const MilpModel& m, const PlateGraph& g) {
  ModelStats s;
  s.extractions = g.stats.extractions;
  s.cuts = g.stats.cuts;
  s.plates = g.stats.plates;
  if (g.stats.cuts > 0) {
    s.hybridised_pct = 100.0 * g.stats.hybridised / g.stats.cuts;
    s.single_residual_pct = 100.0 * g.stats.single_residual / g.stats.cuts;
  }
  s.variables = static_cast<int64_t>(m.variables.size());
  s.constraints = static_cast<int64_t>(m.constraints.size());
  return s;
}

}  // namespace gcut
