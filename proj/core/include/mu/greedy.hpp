#pragma once

#include <string>
#include <vector>

#include "mu/geometry.hpp"

namespace mu {

struct GreedyStep {
  int torsion = 0;
  int angle = 0;
  double objective = 0.0;  // after the step
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
};

// Coordinate ascent over the shared discrete angle grid: starting from the
// folded state, each pass visits torsions in index order and keeps the
// best-objective angle (full atom set, tie toward the lowest angle index).
// Stops early when a full pass changes nothing.
std::pair<TorsionAssignment, GreedyTrace> greedy_unfold(const Molecule& m,
                                                        const TorsionGraph& g,
                                                        const AngleTable& table,
                                                        int passes);

// CSV with header step,torsion,angle,objective.
std::string format_trace_csv(const GreedyTrace& trace);

}  // namespace mu
