#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace mu {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm_sq() const { return dot(*this); }
  double norm() const { return std::sqrt(norm_sq()); }
};

enum class BondOrder { SINGLE, DOUBLE, TRIPLE, AROMATIC, AMIDE };

struct Atom {
  int id = 0;              // 0-based, unique within a Molecule
  std::string element;     // chemical symbol, e.g. "C", "N", "Cl"
  Vec3 position;           // Angstrom
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::SINGLE;
  bool in_ring = false;
};

struct Molecule {
  std::string name;
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;

  int atom_count() const { return static_cast<int>(atoms.size()); }
  int bond_count() const { return static_cast<int>(bonds.size()); }
};

// adjacency[atom] = list of (neighbor atom id, bond index)
std::vector<std::vector<std::pair<int, int>>> adjacency(const Molecule& m);

// Marks Bond::in_ring on every bond: a bond is in a ring iff it is not a
// bridge of the bond graph.
void annotate_rings(Molecule& m);

bool is_connected(const Molecule& m);

// Result of hydrogen stripping; original_id[i] is the pre-strip id of the
// kept atom now numbered i.
struct StripResult {
  Molecule molecule;
  std::vector<int> original_id;
};

// Removes every hydrogen with exactly one bond, along with that bond.
// Remaining atom ids are re-based to 0. Idempotent on hydrogen-free input.
StripResult strip_terminal_hydrogens(const Molecule& m);

}  // namespace mu
