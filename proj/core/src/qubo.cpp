#include "mu/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "mu/errors.hpp"

namespace mu {

namespace {

using VarPair = std::pair<std::uint32_t, std::uint32_t>;

// Occurrence counts of unordered variable pairs within degree >= 3 monomials.
std::map<VarPair, int> count_pairs(const BinaryPolynomial& p) {
  std::map<VarPair, int> counts;
  for (const auto& [mono, c] : p.terms()) {
    if (mono.size() < 3) continue;
    for (size_t i = 0; i < mono.size(); ++i)
      for (size_t j = i + 1; j < mono.size(); ++j) ++counts[{mono[i], mono[j]}];
  }
  return counts;
}

}  // namespace

QuboModel to_qubo(const BinaryPolynomial& hubo) {
  QuboModel q;
  q.poly = hubo;
  int next_aux = 0;

  while (true) {
    auto counts = count_pairs(q.poly);
    if (counts.empty()) break;
    // std::map iterates pairs in canonical order, so the first maximum is
    // also the tie-break winner.
    VarPair best = counts.begin()->first;
    int best_count = counts.begin()->second;
    for (const auto& [pair, count] : counts) {
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    }

    const BinaryVar aux = BinaryVar::aux(next_aux++);
    std::vector<std::pair<Monomial, double>> rewritten;
    for (const auto& [mono, c] : q.poly.terms()) {
      if (mono.size() < 3) continue;
      if (std::binary_search(mono.begin(), mono.end(), best.first) &&
          std::binary_search(mono.begin(), mono.end(), best.second))
        rewritten.push_back({mono, c});
    }

    double weight = 0.0;
    for (const auto& [mono, c] : rewritten) {
      weight += std::abs(c);
      q.poly.add_sorted_term(mono, -c);  // remove
      Monomial repl;
      repl.reserve(mono.size() - 1);
      for (std::uint32_t v : mono)
        if (v != best.first && v != best.second) repl.push_back(v);
      repl.push_back(aux.code);
      std::sort(repl.begin(), repl.end());
      q.poly.add_sorted_term(repl, c);
    }

    const double p = 2.0 * weight + 1.0;
    q.poly.add_term({BinaryVar{best.first}, BinaryVar{best.second}}, p);
    q.poly.add_term({BinaryVar{best.first}, aux}, -2.0 * p);
    q.poly.add_term({BinaryVar{best.second}, aux}, -2.0 * p);
    q.poly.add_term({aux}, 3.0 * p);
    q.aux_defs.push_back({aux, BinaryVar{best.first}, BinaryVar{best.second}});
    q.penalty = std::max(q.penalty, p);
  }

  q.index_to_var = q.poly.variables();
  for (int i = 0; i < static_cast<int>(q.index_to_var.size()); ++i)
    q.var_map[q.index_to_var[i]] = i;
  return q;
}

Projection project_solution(const QuboModel& q, const Assignment& full) {
  auto value = [&](BinaryVar v) {
    auto it = full.find(v);
    if (it == full.end())
      throw UnboundVariable("assignment does not bind " + v.token());
    return it->second;
  };

  Projection out;
  for (const auto& [var, bit] : full)
    if (!var.is_aux()) out.assignment[var] = bit;
  for (const AuxDef& def : q.aux_defs)
    if (value(def.aux) != (value(def.a) && value(def.b))) out.penalty_violated = true;
  return out;
}

std::string format_qubo_text(const QuboModel& q) {
  // (i, j) -> coeff with i <= j.
  std::map<std::pair<int, int>, double> cells;
  for (const auto& [mono, c] : q.poly.terms()) {
    if (mono.size() == 1) {
      int i = q.var_map.at(BinaryVar{mono[0]});
      cells[{i, i}] += c;
    } else if (mono.size() == 2) {
      int i = q.var_map.at(BinaryVar{mono[0]});
      int j = q.var_map.at(BinaryVar{mono[1]});
      cells[{std::min(i, j), std::max(i, j)}] += c;
    } else {
      throw Error("QUBO polynomial has degree > 2");
    }
  }
  std::string out = "vars " + std::to_string(q.variable_count()) + "\n";
  char buf[64];
  for (const auto& [ij, c] : cells) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", ij.first, ij.second, c);
    out += buf;
  }
  return out;
}

QuboModel parse_qubo_text(const std::string& text) {
  std::istringstream ss(text);
  std::string word;
  long nvars = 0;
  if (!(ss >> word) || word != "vars" || !(ss >> nvars))
    throw MalformedRecord("expected 'vars <count>' header", 1);

  QuboModel q;
  for (long i = 0; i < nvars; ++i) {
    BinaryVar v = BinaryVar::aux(static_cast<int>(i));
    q.index_to_var.push_back(v);
    q.var_map[v] = static_cast<int>(i);
  }
  long i, j;
  double c;
  while (ss >> i >> j >> c) {
    if (i < 0 || j < 0 || i >= nvars || j >= nvars || i > j)
      throw MalformedRecord("bad term indices " + std::to_string(i) + " " +
                                std::to_string(j),
                            0);
    if (i == j)
      q.poly.add_term({q.index_to_var[i]}, c);
    else
      q.poly.add_term({q.index_to_var[i], q.index_to_var[j]}, c);
  }
  return q;
}

}  // namespace mu
