#pragma once

#include <vector>

namespace mu {

// Discretized torsion angles theta^k = 2*pi*(k-1)/d, k = 1..d, with aligned
// sine/cosine tables.
struct AngleTable {
  int d = 0;
  std::vector<double> angles;
  std::vector<double> sin_values;
  std::vector<double> cos_values;

  // k is 1-based.
  double angle(int k) const { return angles[k - 1]; }
  double sin_value(int k) const { return sin_values[k - 1]; }
  double cos_value(int k) const { return cos_values[k - 1]; }
};

AngleTable make_angle_table(int d);

}  // namespace mu
