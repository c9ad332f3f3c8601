#pragma once

#include <array>

#include "mu/molecule.hpp"

namespace mu {

// Decomposition of the arbitrary-line rotation matrix: each entry is
// constant + cos_coeff * cos(theta) + sin_coeff * sin(theta). Shared by the
// numeric matrix and its symbolic (one-hot substituted) counterpart.
struct RotationTerms {
  std::array<double, 16> constant{};
  std::array<double, 16> cos_coeff{};
  std::array<double, 16> sin_coeff{};
};

RotationTerms rotation_terms(const Vec3& a1, const Vec3& a2);

}  // namespace mu
