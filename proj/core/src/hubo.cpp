#include "mu/hubo.hpp"

#include <cmath>
#include <cstdio>
#include <queue>

#include "mu/errors.hpp"
#include "mu/rotation_terms.hpp"

namespace mu {

SymbolicMat4 SymbolicMat4::identity() {
  SymbolicMat4 s;
  for (int i = 0; i < 4; ++i) s.at(i, i) = BinaryPolynomial(1.0);
  return s;
}

SymbolicMat4 SymbolicMat4::operator*(const SymbolicMat4& o) const {
  SymbolicMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      BinaryPolynomial s;
      for (int k = 0; k < 4; ++k) s += multiply(at(i, k), o.at(k, j));
      r.at(i, j) = std::move(s);
    }
  return r;
}

BinaryPolynomial build_hard_constraint(int n, int d) {
  // (sum_k x_ik - 1)^2 = 1 - sum_k x_ik + 2 sum_{k<l} x_ik x_il per torsion.
  BinaryPolynomial p;
  p.set_constant(n);
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= d; ++k) {
      p.add_term({BinaryVar::onehot(i, k)}, -1.0);
      for (int l = k + 1; l <= d; ++l)
        p.add_term({BinaryVar::onehot(i, k), BinaryVar::onehot(i, l)}, 2.0);
    }
  }
  return p;
}

SymbolicMat4 symbolic_rotation_axis(const Vec3& a1, const Vec3& a2, int torsion_index,
                                    const AngleTable& table) {
  const RotationTerms t = rotation_terms(a1, a2);

  BinaryPolynomial sin_poly, cos_poly;
  for (int k = 1; k <= table.d; ++k) {
    sin_poly.add_term({BinaryVar::onehot(torsion_index, k)}, table.sin_value(k));
    cos_poly.add_term({BinaryVar::onehot(torsion_index, k)}, table.cos_value(k));
  }

  SymbolicMat4 s;
  for (int i = 0; i < 16; ++i) {
    BinaryPolynomial e(t.constant[i]);
    if (t.cos_coeff[i] != 0.0) e += cos_poly * t.cos_coeff[i];
    if (t.sin_coeff[i] != 0.0) e += sin_poly * t.sin_coeff[i];
    s.entries[i] = std::move(e);
  }
  return s;
}

SymbolicMat4 symbolic_rotation(const TorsionBond& t, const AngleTable& table,
                               const Molecule& m) {
  return symbolic_rotation_axis(m.atoms[t.a1].position, m.atoms[t.a2].position, t.index,
                                table);
}

BinaryPolynomial prune(const BinaryPolynomial& p, double threshold) {
  if (threshold <= 0.0) return p;
  const double cut = threshold * p.max_abs_coeff();
  BinaryPolynomial out(p.constant());
  for (const auto& [mono, c] : p.terms())
    if (std::abs(c) >= cut) out.add_sorted_term(mono, c);
  return out;
}

namespace {

SymbolicMat4 pruned_product(const SymbolicMat4& a, const SymbolicMat4& b, double threshold) {
  SymbolicMat4 r = a * b;
  if (threshold > 0.0)
    for (auto& e : r.entries) e = prune(e, threshold);
  return r;
}

}  // namespace

std::map<int, SymbolicCoordinate> symbolic_coordinates(const TorsionGraph& g,
                                                       const Molecule& m,
                                                       const AngleTable& table,
                                                       const std::set<int>& atom_subset,
                                                       double prune_threshold) {
  const int root = m.atoms.empty() ? 0 : g.fragment_of[0];
  std::vector<SymbolicMat4> frag_mat(g.fragments.size());
  std::vector<bool> seen(g.fragments.size(), false);
  frag_mat[root] = SymbolicMat4::identity();
  seen[root] = true;
  std::queue<int> q;
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
      SymbolicMat4 rot = symbolic_rotation_axis(m.atoms[tail].position,
                                                m.atoms[head].position, t.index, table);
      frag_mat[child] = pruned_product(frag_mat[f], rot, prune_threshold);
      seen[child] = true;
      q.push(child);
    }
  }

  std::map<int, SymbolicCoordinate> out;
  for (int a : atom_subset) {
    const SymbolicMat4& mat = frag_mat[g.fragment_of[a]];
    const Vec3 p = m.atoms[a].position;
    SymbolicCoordinate c;
    BinaryPolynomial* dims[3] = {&c.x, &c.y, &c.z};
    for (int r = 0; r < 3; ++r) {
      BinaryPolynomial e = mat.at(r, 0) * p.x + mat.at(r, 1) * p.y + mat.at(r, 2) * p.z +
                           mat.at(r, 3);
      *dims[r] = prune(e, prune_threshold);
    }
    out.emplace(a, std::move(c));
  }
  return out;
}

BinaryPolynomial build_distance_constraint(const std::map<int, SymbolicCoordinate>& coords,
                                           const TorsionGraph& g,
                                           const std::set<int>& atom_subset) {
  BinaryPolynomial total;
  for (const auto& [pair, chain] : g.pair_chains) {
    auto [u, v] = pair;
    if (!atom_subset.count(u) || !atom_subset.count(v)) continue;
    const SymbolicCoordinate& cu = coords.at(u);
    const SymbolicCoordinate& cv = coords.at(v);
    total += square(cu.x - cv.x);
    total += square(cu.y - cv.y);
    total += square(cu.z - cv.z);
  }
  return total;
}

double default_a_const(const BinaryPolynomial& dist) {
  return 1.1 * dist.max_abs_coeff();
}

BinaryPolynomial assemble_hubo(const BinaryPolynomial& hard, const BinaryPolynomial& dist,
                               double a_const, double final_threshold) {
  if (a_const <= 0.0) throw Error("a_const must be positive");
  return hard * a_const - prune(dist, final_threshold);
}

std::string format_hubo_text(const BinaryPolynomial& p) {
  std::string out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", p.constant());
  out += buf;
  out += '\n';
  for (const auto& [mono, c] : p.sorted_terms()) {
    std::snprintf(buf, sizeof buf, "%.17g", c);
    out += buf;
    for (std::uint32_t code : mono) {
      out += ' ';
      out += BinaryVar{code}.token();
    }
    out += '\n';
  }
  return out;
}

Assignment onehot_assignment(const TorsionAssignment& theta, int n, int d) {
  Assignment a;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= d; ++k)
      a[BinaryVar::onehot(i, k)] = (theta.angle_index[i - 1] == k);
  return a;
}

}  // namespace mu
