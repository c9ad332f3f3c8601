#include "mu/geometry.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "mu/errors.hpp"
#include "mu/rotation_terms.hpp"

namespace mu {

Mat4 Mat4::identity() {
  Mat4 r;
  r.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += at(i, k) * o.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

Vec3 Mat4::apply(const Vec3& p) const {
  return {at(0, 0) * p.x + at(0, 1) * p.y + at(0, 2) * p.z + at(0, 3),
          at(1, 0) * p.x + at(1, 1) * p.y + at(1, 2) * p.z + at(1, 3),
          at(2, 0) * p.x + at(2, 1) * p.y + at(2, 2) * p.z + at(2, 3)};
}

TorsionAssignment TorsionAssignment::folded(int n, int d) {
  TorsionAssignment t;
  t.d = d;
  t.angle_index.assign(n, 1);
  return t;
}

RotationTerms rotation_terms(const Vec3& a1, const Vec3& a2) {
  const Vec3 dir = a2 - a1;
  const double len_sq = dir.norm_sq();
  if (len_sq <= 1e-24)
    throw DegenerateAxis("rotation axis endpoints coincide");
  const double lx = dir.x, ly = dir.y, lz = dir.z;
  const double l = std::sqrt(len_sq);
  const double x1 = a1.x, y1 = a1.y, z1 = a1.z;

  RotationTerms t{};
  auto set = [&](int r, int c, double k0, double kc, double ks) {
    t.constant[r * 4 + c] = k0 / len_sq;
    t.cos_coeff[r * 4 + c] = kc / len_sq;
    t.sin_coeff[r * 4 + c] = ks * l / len_sq;
  };

  set(0, 0, lx * lx, ly * ly + lz * lz, 0);
  set(0, 1, lx * ly, -lx * ly, -lz);
  set(0, 2, lx * lz, -lx * lz, ly);
  set(1, 0, lx * ly, -lx * ly, lz);
  set(1, 1, ly * ly, lx * lx + lz * lz, 0);
  set(1, 2, ly * lz, -ly * lz, -lx);
  set(2, 0, lx * lz, -lx * lz, -ly);
  set(2, 1, ly * lz, -ly * lz, lx);
  set(2, 2, lz * lz, lx * lx + ly * ly, 0);

  const double tx = x1 * (ly * ly + lz * lz) - lx * (y1 * ly + z1 * lz);
  const double ty = y1 * (lx * lx + lz * lz) - ly * (x1 * lx + z1 * lz);
  const double tz = z1 * (lx * lx + ly * ly) - lz * (x1 * lx + y1 * ly);
  set(0, 3, tx, -tx, y1 * lz - z1 * ly);
  set(1, 3, ty, -ty, z1 * lx - x1 * lz);
  set(2, 3, tz, -tz, x1 * ly - y1 * lx);

  t.constant[15] = 1.0;
  return t;
}

Mat4 rotation_matrix(const Vec3& a1, const Vec3& a2, double theta) {
  const RotationTerms t = rotation_terms(a1, a2);
  const double c = std::cos(theta), s = std::sin(theta);
  Mat4 r;
  for (int i = 0; i < 16; ++i)
    r.m[i] = t.constant[i] + t.cos_coeff[i] * c + t.sin_coeff[i] * s;
  return r;
}

Mat4 compose_chain(std::span<const Mat4> mats) {
  if (mats.empty()) throw EmptyChain();
  Mat4 r = mats[0];
  for (size_t i = 1; i < mats.size(); ++i) r = r * mats[i];
  return r;
}

namespace {

void check_assignment(const TorsionGraph& g, const TorsionAssignment& theta,
                      const AngleTable& table) {
  if (theta.size() != g.torsion_count())
    throw IndexOutOfRange("assignment covers " + std::to_string(theta.size()) +
                          " torsions, graph has " + std::to_string(g.torsion_count()));
  for (int k : theta.angle_index)
    if (k < 1 || k > table.d)
      throw IndexOutOfRange("angle index " + std::to_string(k) + " outside 1.." +
                            std::to_string(table.d));
}

// Composed transform along `chain` starting in fragment `from`, rotations
// built from original coordinates, first crossed torsion leftmost.
Mat4 chain_transform(const Molecule& m, const TorsionGraph& g,
                     const TorsionAssignment& theta, const AngleTable& table,
                     int from, const std::vector<int>& chain) {
  Mat4 acc = Mat4::identity();
  int current = from;
  for (int ti : chain) {
    auto [tail, head] = g.oriented_axis(ti, current);
    double angle = table.angle(theta.angle_index[ti - 1]);
    acc = acc * rotation_matrix(m.atoms[tail].position, m.atoms[head].position, angle);
    current = g.fragment_of[head];
  }
  return acc;
}

}  // namespace

std::vector<Vec3> apply_torsions(const Molecule& m, const TorsionGraph& g,
                                 const TorsionAssignment& theta, const AngleTable& table) {
  check_assignment(g, theta, table);
  std::vector<Vec3> out(m.atoms.size());
  const int root = m.atoms.empty() ? 0 : g.fragment_of[0];

  // BFS over the fragment tree, accumulating transforms outward.
  std::vector<Mat4> frag_mat(g.fragments.size(), Mat4::identity());
  std::vector<bool> seen(g.fragments.size(), false);
  std::queue<int> q;
  seen[root] = true;
  q.push(root);
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    for (const TorsionBond& t : g.torsions) {
      int fa = g.fragment_of[t.a1], fb = g.fragment_of[t.a2];
      if (fa != f && fb != f) continue;
      int child = fa == f ? fb : fa;
      if (seen[child]) continue;
      auto [tail, head] = g.oriented_axis(t.index, f);
      double angle = table.angle(theta.angle_index[t.index - 1]);
      frag_mat[child] =
          frag_mat[f] * rotation_matrix(m.atoms[tail].position, m.atoms[head].position, angle);
      seen[child] = true;
      q.push(child);
    }
  }
  for (const Atom& a : m.atoms) out[a.id] = frag_mat[g.fragment_of[a.id]].apply(a.position);
  return out;
}

double pair_distance_sq(const Vec3& u_pos, const Vec3& v0, const Mat4& r) {
  return (u_pos - r.apply(v0)).norm_sq();
}

double objective_volume(const Molecule& m, const TorsionGraph& g,
                        const TorsionAssignment& theta, const AngleTable& table,
                        const std::set<int>& atom_subset) {
  check_assignment(g, theta, table);
  // Pairs in the same fragment pair share the composed rotation.
  std::map<std::pair<int, int>, Mat4> cache;
  double total = 0.0;
  for (const auto& [pair, chain] : g.pair_chains) {
    auto [u, v] = pair;
    if (!atom_subset.count(u) || !atom_subset.count(v)) continue;
    auto key = std::make_pair(g.fragment_of[u], g.fragment_of[v]);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, chain_transform(m, g, theta, table, key.first, chain)).first;
    total += pair_distance_sq(m.atoms[u].position, m.atoms[v].position, it->second);
  }
  return total;
}

std::set<int> all_atoms(const Molecule& m) {
  std::set<int> s;
  for (const Atom& a : m.atoms) s.insert(a.id);
  return s;
}

double volume_gain_percent(double d_initial, double d_final) {
  if (d_initial <= 0.0) throw ZeroBaseline();
  return 100.0 * (d_final - d_initial) / d_initial;
}

}  // namespace mu
