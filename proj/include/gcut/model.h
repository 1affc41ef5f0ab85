#ifndef GCUT_MODEL_H_
#define GCUT_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcut/graph.h"
#include "gcut/instance.h"

namespace gcut {

struct Variable {
  std::string name;
  int64_t lower = 0;
  std::optional<int64_t> upper;
  bool integer = true;
};

struct Term {
  int var = 0;
  int64_t coef = 0;
};

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  std::string name;
  RowSense sense = RowSense::kLessEqual;
  int64_t rhs = 0;
  std::vector<Term> row;
};

// Maximization model over non-negative integer columns. The column maps
// tie columns back to the graph for decoding.
struct MilpModel {
  std::string name = "gcut";
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;

  std::vector<int> cut_column;         // by cut id
  std::vector<int> extraction_column;  // by extraction index
  std::vector<int> sale_column;        // by piece id, -1 when absent
  bool binding = false;

  int find(const std::string& var_name) const;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MilpModel build_model(const PlateGraph& g, const Instance& inst,
                      const HybridisationConfig& cfg);

// Objective value of an assignment indexed like model.variables.
double objective_value(const MilpModel& m, std::span<const double> values);

// Names of violated rows and bounds (empty when feasible).
std::vector<std::string> violations(const MilpModel& m,
                                    std::span<const double> values,
                                    double tolerance = 1e-6);

struct MpsOptions {
  // Restrict every name to 8 characters; colliding truncations are an error.
  bool strict = false;
  // Drop integrality markers (LP relaxation).
  bool relax = false;
};

std::string to_mps(const MilpModel& m, const MpsOptions& options = {});
void write_mps(const MilpModel& m, const std::string& path,
               const MpsOptions& options = {});

struct ModelStats {
  int64_t extractions = 0;
  int64_t cuts = 0;
  int64_t plates = 0;
  double hybridised_pct = 0.0;       // h %
  double single_residual_pct = 0.0;  // k %
  int64_t variables = 0;
  int64_t constraints = 0;
};

ModelStats model_stats(const MilpModel& m, const PlateGraph& g);

std::string variable_name(const PlateGraph& g, const Cut& cut);

}  // namespace gcut

#endif  // GCUT_MODEL_H_
