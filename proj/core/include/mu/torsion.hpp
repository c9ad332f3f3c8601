#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mu/molecule.hpp"

namespace mu {

// A rotatable bond t_i. Indices run 1..n; endpoints satisfy a1 < a2 and the
// bond is a bridge whose removal leaves >= 2 atoms on each side.
struct TorsionBond {
  int index = 0;
  int a1 = 0;
  int a2 = 0;
};

// Rigid decomposition of a molecule: fragments are the connected components
// of the bond graph with torsion bonds deleted, and pair_chains maps every
// eligible atom pair (u < v) to the ordered torsion indices crossed on the
// path from u to v. A pair is eligible when the endpoints lie in different
// fragments and their shortest bond-graph path has >= 3 edges.
struct TorsionGraph {
  std::vector<TorsionBond> torsions;
  std::vector<std::vector<int>> fragments;   // sorted atom ids, fragments by min id
  std::vector<int> fragment_of;              // atom id -> fragment index
  std::map<std::pair<int, int>, std::vector<int>> pair_chains;

  int torsion_count() const { return static_cast<int>(torsions.size()); }
  const TorsionBond& torsion(int index) const { return torsions[index - 1]; }

  // Torsion indices crossed walking the fragment tree from `from` to `to`.
  std::vector<int> fragment_chain(int from_fragment, int to_fragment) const;

  // Endpoints of torsion `index` oriented along a crossing from
  // `from_fragment` toward the other side: first = near-side atom.
  std::pair<int, int> oriented_axis(int index, int from_fragment) const;
};

// Bonds that are single, acyclic bridges with >= 2 atoms on each side,
// indexed 1..n in ascending (a1, a2) order.
std::vector<TorsionBond> find_rotatable_bonds(const Molecule& m);

TorsionGraph build_torsion_graph(const Molecule& m, const std::vector<TorsionBond>& torsions);

// Per fragment, the <= 2 atoms nearest (intra-fragment graph distance, ties
// by lower id) to the fragment's attachment points to torsion bonds.
std::set<int> select_median_atoms(const TorsionGraph& g, const Molecule& m);

}  // namespace mu
