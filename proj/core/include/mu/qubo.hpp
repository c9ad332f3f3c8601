#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mu/polynomial.hpp"

namespace mu {

// aux = a * b, enforced by the penalty gadget
// P * (ab - 2a*aux - 2b*aux + 3aux).
struct AuxDef {
  BinaryVar aux;
  BinaryVar a;
  BinaryVar b;
};

struct QuboModel {
  BinaryPolynomial poly;  // degree <= 2
  std::vector<BinaryVar> index_to_var;
  std::unordered_map<BinaryVar, int, BinaryVarHash> var_map;
  std::vector<AuxDef> aux_defs;
  double penalty = 0.0;  // largest gadget weight used

  int variable_count() const { return static_cast<int>(index_to_var.size()); }
};

// Iterated pair substitution: repeatedly replaces the variable pair that
// occurs in the most degree >= 3 monomials (ties by canonical order) with an
// aux variable, weighting each gadget with P = 2 * sum |c| over the
// rewritten monomials + 1. Minimizing over aux variables reproduces the
// HUBO value for every assignment of the original variables.
QuboModel to_qubo(const BinaryPolynomial& hubo);

struct Projection {
  Assignment assignment;  // original variables only
  bool penalty_violated = false;
};

// Drops aux variables; flags (without failing) any aux that disagrees with
// the product of its defining pair.
Projection project_solution(const QuboModel& q, const Assignment& full);

// Text export: header "vars <count>" then one "i j coeff" line per term with
// i <= j (i = j for linear terms), sorted for byte-stable output. The
// constant offset is not part of the format.
std::string format_qubo_text(const QuboModel& q);

// Parses the export format back into a model with anonymous dense variables.
QuboModel parse_qubo_text(const std::string& text);

}  // namespace mu
