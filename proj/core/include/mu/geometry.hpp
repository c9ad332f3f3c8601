#pragma once

#include <array>
#include <set>
#include <span>
#include <vector>

#include "mu/angle_table.hpp"
#include "mu/molecule.hpp"
#include "mu/torsion.hpp"

namespace mu {

// Homogeneous rigid transform, row major. The bottom row is always
// (0, 0, 0, 1); for rotations the upper-left 3x3 block is orthonormal.
struct Mat4 {
  std::array<double, 16> m{};

  static Mat4 identity();
  double& at(int r, int c) { return m[r * 4 + c]; }
  double at(int r, int c) const { return m[r * 4 + c]; }
  Mat4 operator*(const Mat4& o) const;
  Vec3 apply(const Vec3& p) const;
};

// Chosen angle index per torsion, entries 1..d.
struct TorsionAssignment {
  std::vector<int> angle_index;
  int d = 0;

  static TorsionAssignment folded(int n, int d);  // all angles at theta = 0
  int size() const { return static_cast<int>(angle_index.size()); }
};

// Rotation by theta about the directed line a1 -> a2. Every point on the
// line is fixed; with a1 at the origin this is the usual axis-angle matrix.
Mat4 rotation_matrix(const Vec3& a1, const Vec3& a2, double theta);

// Left-to-right product R(t_x1) * R(t_x2) * ... * R(t_xk).
Mat4 compose_chain(std::span<const Mat4> mats);

// New coordinates for every atom: the fragment containing atom 0 stays
// fixed, every other fragment is transformed by the composed rotations of
// the torsions on its root path, each built from the original bond endpoint
// coordinates.
std::vector<Vec3> apply_torsions(const Molecule& m, const TorsionGraph& g,
                                 const TorsionAssignment& theta, const AngleTable& table);

// Squared distance between u and the transformed v0.
double pair_distance_sq(const Vec3& u_pos, const Vec3& v0, const Mat4& r);

// D(Theta): sum over eligible pairs with both endpoints in atom_subset of
// |u0 - R(chain) v0|^2, the per-pair chain oriented from u toward v.
double objective_volume(const Molecule& m, const TorsionGraph& g,
                        const TorsionAssignment& theta, const AngleTable& table,
                        const std::set<int>& atom_subset);

std::set<int> all_atoms(const Molecule& m);

double volume_gain_percent(double d_initial, double d_final);

}  // namespace mu
