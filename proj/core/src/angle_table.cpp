#include "mu/angle_table.hpp"

#include <cmath>
#include <numbers>

#include "mu/errors.hpp"

namespace mu {

AngleTable make_angle_table(int d) {
  if (d < 2) throw InvalidDiscretization(d);
  AngleTable t;
  t.d = d;
  t.angles.reserve(d);
  for (int k = 0; k < d; ++k)
    t.angles.push_back(2.0 * std::numbers::pi * k / d);
  for (double a : t.angles) {
    t.sin_values.push_back(std::sin(a));
    t.cos_values.push_back(std::cos(a));
  }
  return t;
}

}  // namespace mu
