#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mu/geometry.hpp"
#include "mu/qubo.hpp"

namespace mu {

struct AnnealParams {
  int sweeps = 500;
  int reads = 100;
  double beta_start = 0.1;
  double beta_end = 10.0;
  std::uint64_t seed = 0;
};

// Hot/cold inverse temperatures scaled to the model's coefficient range.
std::pair<double, double> default_beta_range(const QuboModel& q);

struct Sample {
  std::vector<std::uint8_t> bits;  // indexed by QuboModel var_map
  double energy = 0.0;
  bool feasible = false;
};

// Solver outputs sorted ascending by energy (stable).
struct SampleSet {
  std::vector<Sample> samples;

  int feasible_count() const;
  Assignment assignment(const QuboModel& q, int sample) const;
};

// `reads` independent single-flip Metropolis chains with a geometric beta
// schedule, incremental energy updates and per-read rng streams seeded with
// seed + read index. Deterministic for a fixed (model, params).
SampleSet simulated_anneal(const QuboModel& q, const AnnealParams& p);

// Exact minimum by exhaustive enumeration over the polynomial's variables
// (at most 26). Ties break toward the earliest enumerated state, i.e. the
// smallest assignment integer with variable 0 as least-significant bit.
std::pair<Assignment, double> brute_force(const BinaryPolynomial& p);

struct DecodeResult {
  std::optional<TorsionAssignment> theta;
  std::vector<int> violating_torsions;

  bool feasible() const { return theta.has_value(); }
};

// One-hot decode: feasible iff every torsion group has exactly one variable
// set. Never repairs; infeasible groups are reported by torsion index.
DecodeResult decode(const Assignment& a, int n, int d);

struct UnfoldResult {
  TorsionAssignment theta;
  double volume_initial = 0.0;
  double volume_final = 0.0;
  double gain_percent = 0.0;
  double energy = 0.0;
  int feasible_count = 0;
};

// Re-scores the k lowest-energy feasible samples with the true geometric
// objective over the full atom set and returns the highest-gain one.
UnfoldResult select_best(const SampleSet& samples, const QuboModel& q, int k,
                         const Molecule& m, const TorsionGraph& g, const AngleTable& table);

// One JSON object per sample: {"assignment": bitstring, "energy": e,
// "feasible": f}.
std::string format_samples_jsonl(const SampleSet& s);

}  // namespace mu
