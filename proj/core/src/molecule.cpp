#include "mu/molecule.hpp"

#include <algorithm>
#include <functional>

namespace mu {

std::vector<std::vector<std::pair<int, int>>> adjacency(const Molecule& m) {
  std::vector<std::vector<std::pair<int, int>>> adj(m.atoms.size());
  for (int bi = 0; bi < m.bond_count(); ++bi) {
    const Bond& b = m.bonds[bi];
    adj[b.a].push_back({b.b, bi});
    adj[b.b].push_back({b.a, bi});
  }
  return adj;
}

namespace {

// Iterative Tarjan bridge finding.
std::vector<bool> find_bridges(const Molecule& m) {
  const int n = m.atom_count();
  auto adj = adjacency(m);
  std::vector<bool> bridge(m.bonds.size(), false);
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;

  struct Frame {
    int v;
    int parent_edge;
    size_t next;
  };
  for (int start = 0; start < n; ++start) {
    if (disc[start] != -1) continue;
    std::vector<Frame> stack{{start, -1, 0}};
    disc[start] = low[start] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [to, edge] = adj[f.v][f.next++];
        if (edge == f.parent_edge) continue;
        if (disc[to] == -1) {
          disc[to] = low[to] = timer++;
          stack.push_back({to, edge, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[to]);
        }
      } else {
        int v = f.v;
        int pe = f.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int u = stack.back().v;
          low[u] = std::min(low[u], low[v]);
          if (low[v] > disc[u]) bridge[pe] = true;
        }
      }
    }
  }
  return bridge;
}

}  // namespace

void annotate_rings(Molecule& m) {
  auto bridge = find_bridges(m);
  for (size_t i = 0; i < m.bonds.size(); ++i) m.bonds[i].in_ring = !bridge[i];
}

bool is_connected(const Molecule& m) {
  if (m.atoms.empty()) return true;
  auto adj = adjacency(m);
  std::vector<bool> seen(m.atoms.size(), false);
  std::vector<int> queue{0};
  seen[0] = true;
  size_t head = 0, count = 1;
  while (head < queue.size()) {
    int v = queue[head++];
    for (auto [to, _] : adj[v]) {
      if (!seen[to]) {
        seen[to] = true;
        ++count;
        queue.push_back(to);
      }
    }
  }
  return count == m.atoms.size();
}

StripResult strip_terminal_hydrogens(const Molecule& m) {
  std::vector<int> degree(m.atoms.size(), 0);
  for (const Bond& b : m.bonds) {
    ++degree[b.a];
    ++degree[b.b];
  }

  auto is_hydrogen = [](const std::string& el) {
    return el == "H" || el == "h";
  };

  StripResult out;
  out.molecule.name = m.name;
  std::vector<int> new_id(m.atoms.size(), -1);
  for (const Atom& a : m.atoms) {
    if (is_hydrogen(a.element) && degree[a.id] == 1) continue;
    new_id[a.id] = static_cast<int>(out.molecule.atoms.size());
    Atom kept = a;
    kept.id = new_id[a.id];
    out.molecule.atoms.push_back(kept);
    out.original_id.push_back(a.id);
  }
  for (const Bond& b : m.bonds) {
    if (new_id[b.a] < 0 || new_id[b.b] < 0) continue;
    Bond kept = b;
    kept.a = new_id[b.a];
    kept.b = new_id[b.b];
    out.molecule.bonds.push_back(kept);
  }
  annotate_rings(out.molecule);
  return out;
}

}  // namespace mu
