#pragma once

#include <map>
#include <set>
#include <string>

#include "mu/angle_table.hpp"
#include "mu/geometry.hpp"
#include "mu/molecule.hpp"
#include "mu/polynomial.hpp"
#include "mu/torsion.hpp"

namespace mu {

// 4x4 matrix of binary polynomials; the one-hot substituted rotation.
struct SymbolicMat4 {
  std::array<BinaryPolynomial, 16> entries;

  static SymbolicMat4 identity();
  BinaryPolynomial& at(int r, int c) { return entries[r * 4 + c]; }
  const BinaryPolynomial& at(int r, int c) const { return entries[r * 4 + c]; }
  SymbolicMat4 operator*(const SymbolicMat4& o) const;
};

struct SymbolicCoordinate {
  BinaryPolynomial x, y, z;
};

// sum_i (sum_k x_ik - 1)^2, expanded multilinearly.
BinaryPolynomial build_hard_constraint(int n, int d);

// The arbitrary-line rotation with sin/cos replaced by one-hot weighted
// sums over torsion `torsion_index`'s variables; every entry has degree <= 1.
SymbolicMat4 symbolic_rotation_axis(const Vec3& a1, const Vec3& a2, int torsion_index,
                                    const AngleTable& table);
SymbolicMat4 symbolic_rotation(const TorsionBond& t, const AngleTable& table,
                               const Molecule& m);

// Relative-magnitude pruning: with M = max |coeff| over non-constant terms,
// drops every term with |coeff| < threshold * M. The constant is always
// kept; threshold 0 is the identity.
BinaryPolynomial prune(const BinaryPolynomial& p, double threshold);

// Symbolic position of each atom in `atom_subset`, in the frame that fixes
// the fragment containing atom 0. Chains multiply in root-path order and
// every intermediate product is pruned at `prune_threshold`.
std::map<int, SymbolicCoordinate> symbolic_coordinates(const TorsionGraph& g,
                                                       const Molecule& m,
                                                       const AngleTable& table,
                                                       const std::set<int>& atom_subset,
                                                       double prune_threshold);

// Sum over eligible pairs (both endpoints in atom_subset) of
// |coord(u) - coord(v)|^2.
BinaryPolynomial build_distance_constraint(const std::map<int, SymbolicCoordinate>& coords,
                                           const TorsionGraph& g,
                                           const std::set<int>& atom_subset);

// 1.1 * max |coefficient| of the distance constraint.
double default_a_const(const BinaryPolynomial& dist);

// a_const * hard - dist, with the distance part pruned at final_threshold.
// Penalty monomials are exempt from pruning so feasibility is preserved.
BinaryPolynomial assemble_hubo(const BinaryPolynomial& hard, const BinaryPolynomial& dist,
                               double a_const, double final_threshold);

// One term per line: "coeff var var ..." with t<i>_a<k> tokens; the
// constant is a bare "coeff" line. Ordering is deterministic.
std::string format_hubo_text(const BinaryPolynomial& p);

// Assignment covering all n*d one-hot variables for a torsion configuration.
Assignment onehot_assignment(const TorsionAssignment& theta, int n, int d);

}  // namespace mu
