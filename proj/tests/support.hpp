#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mu/geometry.hpp"
#include "mu/molecule.hpp"
#include "mu/torsion.hpp"

namespace support {

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline mu::Molecule finish(mu::Molecule m) {
  mu::annotate_rings(m);
  return m;
}

// n_atoms carbons in a generic (non-planar, asymmetric) zig-zag chain; a
// chain of k atoms exposes k - 3 rotatable bonds.
inline mu::Molecule chain_molecule(int n_atoms) {
  mu::Molecule m;
  m.name = "chain" + std::to_string(n_atoms);
  for (int i = 0; i < n_atoms; ++i) {
    double x = 1.5 * i;
    double y = (i % 2) ? 1.1 : 0.0;
    double z = 0.17 * i + 0.05 * i * i;
    m.atoms.push_back({i, "C", {x, y + 0.03 * i, z}});
  }
  for (int i = 0; i + 1 < n_atoms; ++i)
    m.bonds.push_back({i, i + 1, mu::BondOrder::SINGLE, false});
  return finish(m);
}

// Seven atoms, two torsions: path 0-1-2-3-4 plus leaves 5 and 6 on atom 2.
inline mu::Molecule t7_molecule() {
  mu::Molecule m;
  m.name = "t7";
  const double coords[7][3] = {{0, 0, 0},     {1.5, 0.2, 0.1}, {2.6, 1.2, 0.3},
                               {4.1, 1.0, 0.5}, {5.0, 2.2, 0.9}, {2.4, 2.4, -0.8},
                               {3.2, 0.6, 1.7}};
  for (int i = 0; i < 7; ++i)
    m.atoms.push_back({i, "C", {coords[i][0], coords[i][1], coords[i][2]}});
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {2, 6}})
    m.bonds.push_back({a, b, mu::BondOrder::SINGLE, false});
  return finish(m);
}

// Star of 5 atoms (hub 1) attached via a torsion to a 2-atom tail.
inline mu::Molecule star_molecule() {
  mu::Molecule m;
  m.name = "star";
  const double coords[7][3] = {{0, 1.4, 0},    {0, 0, 0},     {1.3, -0.6, 0.2},
                               {-1.3, -0.6, 0.2}, {0, 0.1, 1.5}, {0.2, -1.4, -0.9},
                               {0.5, -2.6, -1.7}};
  for (int i = 0; i < 7; ++i)
    m.atoms.push_back({i, "C", {coords[i][0], coords[i][1], coords[i][2]}});
  for (auto [a, b] :
       {std::pair{1, 0}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {5, 6}})
    m.bonds.push_back({a, b, mu::BondOrder::SINGLE, false});
  return finish(m);
}

inline mu::Molecule benzene_molecule() {
  mu::Molecule m;
  m.name = "benzene";
  for (int i = 0; i < 6; ++i) {
    double a = i * std::numbers::pi / 3.0;
    m.atoms.push_back({i, "C", {1.39 * std::cos(a), 1.39 * std::sin(a), 0.0}});
  }
  for (int i = 0; i < 6; ++i)
    m.bonds.push_back({i, (i + 1) % 6, mu::BondOrder::AROMATIC, false});
  return finish(m);
}

struct NamedMolecule {
  mu::Molecule molecule;
  std::string note;
};

// Small synthetic set with 1..3 torsions for the oracle-equivalence suites.
inline std::vector<mu::Molecule> synthetic_molecules() {
  std::vector<mu::Molecule> out;
  out.push_back(chain_molecule(4));  // n = 1
  out.push_back(chain_molecule(5));  // n = 2
  out.push_back(chain_molecule(6));  // n = 3
  out.push_back(t7_molecule());      // n = 2, branched
  out.push_back(star_molecule());    // n = 1, star fragment
  return out;
}

// Independent quaternion rotation about the line a1 -> a2.
inline mu::Vec3 quaternion_rotate(const mu::Vec3& a1, const mu::Vec3& a2, double theta,
                                  const mu::Vec3& p) {
  mu::Vec3 axis = a2 - a1;
  const double n = axis.norm();
  axis = axis * (1.0 / n);
  const double half = theta / 2.0;
  const double w = std::cos(half);
  const mu::Vec3 q = axis * std::sin(half);
  const mu::Vec3 v = p - a1;
  // v' = v + 2q x (q x v + w v)
  auto cross = [](const mu::Vec3& a, const mu::Vec3& b) {
    return mu::Vec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  };
  const mu::Vec3 t = cross(q, v) + v * w;
  const mu::Vec3 rotated = v + cross(q, t) * 2.0;
  return rotated + a1;
}

// Breadth-first shortest path (edge count) between two atoms.
inline int bfs_path_length(const mu::Molecule& m, int from, int to) {
  auto adj = mu::adjacency(m);
  std::vector<int> dist(m.atoms.size(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [w, _] : adj[v])
      if (dist[w] == -1) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist[to];
}

// Naive objective: transform every atom, then sum squared distances over
// eligible pairs with both endpoints in the subset.
inline double naive_objective(const mu::Molecule& m, const mu::TorsionGraph& g,
                              const mu::TorsionAssignment& theta,
                              const mu::AngleTable& table, const std::set<int>& subset) {
  auto coords = mu::apply_torsions(m, g, theta, table);
  double total = 0.0;
  for (const auto& [pair, chain] : g.pair_chains) {
    auto [u, v] = pair;
    if (!subset.count(u) || !subset.count(v)) continue;
    total += (coords[u] - coords[v]).norm_sq();
  }
  return total;
}

// All d^n assignments in odometer order.
inline std::vector<mu::TorsionAssignment> all_assignments(int n, int d) {
  std::vector<mu::TorsionAssignment> out;
  mu::TorsionAssignment t = mu::TorsionAssignment::folded(n, d);
  while (true) {
    out.push_back(t);
    int pos = n - 1;
    while (pos >= 0 && t.angle_index[pos] == d) t.angle_index[pos--] = 1;
    if (pos < 0) break;
    ++t.angle_index[pos];
  }
  return out;
}

}  // namespace support
