#ifndef GCUT_ENUMERATE_INTERNAL_H_
#define GCUT_ENUMERATE_INTERNAL_H_

#include "gcut/graph.h"

namespace gcut::internal {

PlateGraph enumerate_graph(const Instance& inst, Formulation formulation,
                           HybridMode mode, const EnumerationOptions& options);

}  // namespace gcut::internal

#endif  // GCUT_ENUMERATE_INTERNAL_H_
