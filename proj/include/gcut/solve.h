#ifndef GCUT_SOLVE_H_
#define GCUT_SOLVE_H_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcut/graph.h"
#include "gcut/instance.h"
#include "gcut/model.h"

namespace gcut {

enum class SolveStatus { kOptimal, kFeasible, kInfeasible, kTimeout };
enum class SolveMode { kMip, kLp };

const char* to_string(SolveStatus status);

struct VarAssignment {
  std::map<std::string, double> values;
  double objective = 0.0;
  SolveStatus status = SolveStatus::kOptimal;

  // Values in model column order; missing names read as zero.
  std::vector<double> dense(const MilpModel& m) const;
};

class SolveError : public std::runtime_error {
 public:
  enum class Kind {
    kNonzeroExit,
    kUnparseable,
    kIntegrality,
    kObjectiveMismatch,
    kTimeout,
    kLaunch,
  };
  SolveError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr double kIntegerTolerance = 1e-6;

struct SolveRequest {
  std::string mps_path;
  // Placeholders: {mps} {sol} (required), {mode} {time_limit} {seed}.
  std::string backend;
  SolveMode mode = SolveMode::kMip;
  double time_limit = 60.0;
  // Extra wall-clock seconds before the backend is killed.
  double grace = 5.0;
  int seed = 0;
  // When set, integrality and the reported objective are checked against it.
  const MilpModel* model = nullptr;
  // Where to write the solution file; a temporary path when empty.
  std::string sol_path;
};

// Parses "name value" lines. '#' lines are comments, except the directives
// "# status <optimal|feasible|infeasible|timeout>" and "# objective <v>".
VarAssignment parse_solution_text(const std::string& text, SolveMode mode,
                                  const MilpModel* model = nullptr);

VarAssignment external_solve(const SolveRequest& request);

// Command template for the bundled HiGHS adapter (scipy), or empty when the
// adapter script is not installed next to the build.
std::string default_backend();

// Exact in-process search over the flow model: every plate copy either is
// wasted, has a piece extracted, or is cut, with demand shared through a
// max-plus combination over residual demand vectors. Returns a complete
// assignment. Throws ResourceLimitError when the demand lattice exceeds
// `max_states` entries per plate.
VarAssignment search_model(const PlateGraph& g, const Instance& inst,
                           const MilpModel& m, int64_t max_states = 1 << 20);

}  // namespace gcut

#endif  // GCUT_SOLVE_H_
