#ifndef GCUT_ORACLE_H_
#define GCUT_ORACLE_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gcut/instance.h"

namespace gcut {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  int64_t max_total_demand = 10;
  // Work units (plates evaluated times demand states) before giving up.
  int64_t node_budget = 200'000'000;
};

// Exact optimum of the constrained guillotine knapsack by exhaustive
// recursion over guillotine cuts, memoized on plate dimensions with a value
// per residual demand vector. Pieces keep their orientation; twins created by
// expand_rotation share demand.
int64_t oracle_optimal(const Instance& inst, const OracleOptions& options = {});

// True iff every copy of every piece fits the plate with guillotine cuts.
bool oracle_feasible(const std::vector<PieceType>& pieces, int64_t plate_length,
                     int64_t plate_width, const OracleOptions& options = {});

}  // namespace gcut

#endif  // GCUT_ORACLE_H_
