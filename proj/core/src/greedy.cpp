#include "mu/greedy.hpp"

#include <cstdio>

#include "mu/errors.hpp"

namespace mu {

std::pair<TorsionAssignment, GreedyTrace> greedy_unfold(const Molecule& m,
                                                        const TorsionGraph& g,
                                                        const AngleTable& table,
                                                        int passes) {
  if (passes < 1) throw IndexOutOfRange("greedy passes must be >= 1");
  const int n = g.torsion_count();
  const auto full = all_atoms(m);

  TorsionAssignment theta = TorsionAssignment::folded(n, table.d);
  GreedyTrace trace;
  if (n == 0) return {theta, trace};

  for (int pass = 0; pass < passes; ++pass) {
    bool changed = false;
    for (int i = 1; i <= n; ++i) {
      const int original_k = theta.angle_index[i - 1];
      int best_k = original_k;
      double best_obj = objective_volume(m, g, theta, table, full);
      for (int k = 1; k <= table.d; ++k) {
        if (k == original_k) continue;
        theta.angle_index[i - 1] = k;
        const double obj = objective_volume(m, g, theta, table, full);
        if (obj > best_obj || (obj == best_obj && k < best_k)) {
          best_obj = obj;
          best_k = k;
        }
      }
      theta.angle_index[i - 1] = best_k;
      if (best_k != original_k) changed = true;
      trace.steps.push_back({i, best_k, best_obj});
    }
    if (!changed) break;
  }
  return {theta, trace};
}

std::string format_trace_csv(const GreedyTrace& trace) {
  std::string out = "step,torsion,angle,objective\n";
  char buf[96];
  for (size_t s = 0; s < trace.steps.size(); ++s) {
    std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.17g\n", s, trace.steps[s].torsion,
                  trace.steps[s].angle, trace.steps[s].objective);
    out += buf;
  }
  return out;
}

}  // namespace mu
