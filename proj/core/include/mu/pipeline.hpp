#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mu/anneal.hpp"
#include "mu/errors.hpp"
#include "mu/greedy.hpp"
#include "mu/molecule.hpp"

namespace mu {

enum class Mode { QUANTUM_PIPELINE, GREEDY_BASELINE, BOTH, BRUTE_FORCE };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

struct RunConfig {
  std::string input_path;
  int d = 8;
  double intermediate_threshold = 0.5;
  double final_threshold = 0.5;
  double a_const_factor = 1.1;
  AnnealParams anneal;  // beta range is derived from the model per run
  int top_k = 10;
  Mode mode = Mode::QUANTUM_PIPELINE;
  int workers = 1;  // threshold_sweep concurrency
};

struct PhaseTimings {
  double parse_seconds = 0.0;
  double hubo_seconds = 0.0;
  double quadratize_seconds = 0.0;
  double sample_seconds = 0.0;
  double greedy_seconds = 0.0;
  double brute_force_seconds = 0.0;
};

struct MethodResult {
  double gain_percent = 0.0;
  double volume_initial = 0.0;
  double volume_final = 0.0;
  std::vector<int> theta;  // angle indices, 1..d
  double energy = 0.0;     // quantum method only
  int feasible_count = 0;  // quantum method only
};

struct RunReport {
  std::string molecule_name;
  int n_torsions = 0;
  int atom_count = 0;  // after hydrogen stripping
  std::size_t hubo_terms_pre = 0;
  std::size_t hubo_terms_post = 0;
  std::size_t qubo_terms = 0;
  int qubo_vars = 0;
  PhaseTimings timings;
  std::map<std::string, MethodResult> methods;  // keyed by mode name
  RunConfig config;

  std::string qubo_text;     // export format, quantum modes only
  std::string hubo_text;     // final HUBO, inspection format
  std::string samples_jsonl;
  std::string greedy_trace_csv;
};

class PipelineError : public Error {
public:
  PipelineError(const std::string& phase, const std::string& message)
      : Error(phase + ": " + message), phase_(phase), message_(message) {}
  const std::string& phase() const { return phase_; }
  const std::string& message() const { return message_; }

private:
  std::string phase_;
  std::string message_;
};

RunReport run_pipeline(const RunConfig& cfg);

struct SweepEntry {
  double threshold = 0.0;
  std::optional<RunReport> report;
  std::string error;  // empty on success
};

// One full run per threshold (applied to both pruning stages), shared parse
// phase, per-threshold seeds derived from (base seed, threshold index).
// Failures are recorded and the sweep continues.
std::vector<SweepEntry> threshold_sweep(const RunConfig& cfg,
                                        const std::vector<double>& thresholds);

// threshold,gain_percent,hubo_terms,construction_seconds
std::string format_sweep_csv(const std::vector<SweepEntry>& entries);

std::string format_report_json(const RunReport& report);
std::string format_report_table(const RunReport& report);
std::string format_error_json(const PipelineError& err);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace mu
