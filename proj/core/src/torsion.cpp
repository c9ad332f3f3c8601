#include "mu/torsion.hpp"

#include <algorithm>
#include <queue>

#include "mu/errors.hpp"

namespace mu {

namespace {

// Size of the component containing `start` when bond `skip` is deleted.
int side_size(const Molecule& m, const std::vector<std::vector<std::pair<int, int>>>& adj,
              int start, int skip) {
  std::vector<bool> seen(m.atoms.size(), false);
  std::vector<int> queue{start};
  seen[start] = true;
  int count = 1;
  for (size_t h = 0; h < queue.size(); ++h) {
    for (auto [to, edge] : adj[queue[h]]) {
      if (edge == skip || seen[to]) continue;
      seen[to] = true;
      ++count;
      queue.push_back(to);
    }
  }
  return count;
}

std::vector<int> bfs_distances(const std::vector<std::vector<std::pair<int, int>>>& adj,
                               int from, const std::vector<bool>* allowed = nullptr) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [to, _] : adj[v]) {
      if (allowed && !(*allowed)[to]) continue;
      if (dist[to] == -1) {
        dist[to] = dist[v] + 1;
        q.push(to);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<TorsionBond> find_rotatable_bonds(const Molecule& m) {
  auto adj = adjacency(m);
  std::vector<TorsionBond> out;
  for (int bi = 0; bi < m.bond_count(); ++bi) {
    const Bond& b = m.bonds[bi];
    if (b.order != BondOrder::SINGLE || b.in_ring) continue;
    int left = side_size(m, adj, b.a, bi);
    int right = m.atom_count() - left;
    if (left + side_size(m, adj, b.b, bi) != m.atom_count()) continue;  // not a bridge
    if (left < 2 || right < 2) continue;
    out.push_back({0, std::min(b.a, b.b), std::max(b.a, b.b)});
  }
  std::sort(out.begin(), out.end(), [](const TorsionBond& x, const TorsionBond& y) {
    return std::tie(x.a1, x.a2) < std::tie(y.a1, y.a2);
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i) + 1;
  return out;
}

std::vector<int> TorsionGraph::fragment_chain(int from_fragment, int to_fragment) const {
  if (from_fragment == to_fragment) return {};
  // Fragment graph: torsion i joins the fragments of its endpoints.
  const int nf = static_cast<int>(fragments.size());
  std::vector<std::vector<std::pair<int, int>>> fadj(nf);  // (fragment, torsion index)
  for (const TorsionBond& t : torsions) {
    int fa = fragment_of[t.a1], fb = fragment_of[t.a2];
    fadj[fa].push_back({fb, t.index});
    fadj[fb].push_back({fa, t.index});
  }
  std::vector<int> prev(nf, -1), via(nf, 0);
  std::queue<int> q;
  prev[from_fragment] = from_fragment;
  q.push(from_fragment);
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    if (f == to_fragment) break;
    for (auto [g, ti] : fadj[f]) {
      if (prev[g] == -1) {
        prev[g] = f;
        via[g] = ti;
        q.push(g);
      }
    }
  }
  std::vector<int> chain;
  for (int f = to_fragment; f != from_fragment; f = prev[f]) chain.push_back(via[f]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::pair<int, int> TorsionGraph::oriented_axis(int index, int from_fragment) const {
  const TorsionBond& t = torsion(index);
  if (fragment_of[t.a1] == from_fragment) return {t.a1, t.a2};
  if (fragment_of[t.a2] == from_fragment) return {t.a2, t.a1};
  // Crossing from farther away: near side is whichever endpoint is closer in
  // the fragment tree.
  auto chain1 = fragment_chain(from_fragment, fragment_of[t.a1]);
  auto chain2 = fragment_chain(from_fragment, fragment_of[t.a2]);
  return chain1.size() <= chain2.size() ? std::make_pair(t.a1, t.a2)
                                        : std::make_pair(t.a2, t.a1);
}

TorsionGraph build_torsion_graph(const Molecule& m, const std::vector<TorsionBond>& torsions) {
  TorsionGraph g;
  g.torsions = torsions;

  // Fragments: components after deleting torsion bonds.
  std::vector<bool> is_torsion_bond(m.bonds.size(), false);
  for (const TorsionBond& t : torsions) {
    for (int bi = 0; bi < m.bond_count(); ++bi) {
      const Bond& b = m.bonds[bi];
      if ((b.a == t.a1 && b.b == t.a2) || (b.a == t.a2 && b.b == t.a1))
        is_torsion_bond[bi] = true;
    }
  }
  auto adj = adjacency(m);
  g.fragment_of.assign(m.atoms.size(), -1);
  for (int start = 0; start < m.atom_count(); ++start) {
    if (g.fragment_of[start] != -1) continue;
    int f = static_cast<int>(g.fragments.size());
    std::vector<int> members{start};
    g.fragment_of[start] = f;
    for (size_t h = 0; h < members.size(); ++h) {
      for (auto [to, edge] : adj[members[h]]) {
        if (is_torsion_bond[edge] || g.fragment_of[to] != -1) continue;
        g.fragment_of[to] = f;
        members.push_back(to);
      }
    }
    std::sort(members.begin(), members.end());
    g.fragments.push_back(std::move(members));
  }

  // Eligible pairs: different fragments, shortest path >= 3 edges. Torsion
  // bonds are bridges, so the crossed torsions and their order are path
  // independent and can be read off the fragment tree.
  for (int u = 0; u < m.atom_count(); ++u) {
    auto dist = bfs_distances(adj, u);
    for (int v = u + 1; v < m.atom_count(); ++v) {
      if (g.fragment_of[u] == g.fragment_of[v]) continue;
      if (dist[v] < 3) continue;
      auto chain = g.fragment_chain(g.fragment_of[u], g.fragment_of[v]);
      if (chain.empty()) continue;
      g.pair_chains.emplace(std::make_pair(u, v), std::move(chain));
    }
  }
  return g;
}

std::set<int> select_median_atoms(const TorsionGraph& g, const Molecule& m) {
  auto adj = adjacency(m);
  std::set<int> out;
  for (const auto& frag : g.fragments) {
    if (frag.size() <= 2) {
      out.insert(frag.begin(), frag.end());
      continue;
    }
    std::vector<bool> in_frag(m.atoms.size(), false);
    for (int a : frag) in_frag[a] = true;

    // Attachment points: fragment atoms incident to a torsion bond.
    std::vector<int> attach;
    for (const TorsionBond& t : g.torsions) {
      if (in_frag[t.a1]) attach.push_back(t.a1);
      if (in_frag[t.a2]) attach.push_back(t.a2);
    }
    if (attach.empty()) {
      // Torsion-free molecule: keep the two lowest ids.
      out.insert(frag[0]);
      out.insert(frag[1]);
      continue;
    }

    // Multi-source BFS inside the fragment.
    std::vector<int> dist(m.atoms.size(), -1);
    std::queue<int> q;
    for (int a : attach) {
      if (dist[a] == -1) {
        dist[a] = 0;
        q.push(a);
      }
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (auto [to, _] : adj[v]) {
        if (!in_frag[to] || dist[to] != -1) continue;
        dist[to] = dist[v] + 1;
        q.push(to);
      }
    }

    std::vector<int> order = frag;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::tie(dist[a], a) < std::tie(dist[b], b);
    });
    out.insert(order[0]);
    out.insert(order[1]);
  }
  return out;
}

}  // namespace mu
