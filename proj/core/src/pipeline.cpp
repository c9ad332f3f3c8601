#include "mu/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mu/hubo.hpp"
#include "mu/mol_parse.hpp"
#include "mu/stats.hpp"

namespace mu {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct ParsedInput {
  Molecule working;  // hydrogen-stripped
  double parse_seconds = 0.0;
};

ParsedInput parse_phase(const std::string& path) {
  const auto start = Clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("parse", "cannot open input file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Molecule raw;
  try {
    const bool mol2 = path.size() >= 5 && path.substr(path.size() - 5) == ".mol2";
    const bool looks_mol2 = text.find("@<TRIPOS>") != std::string::npos;
    raw = (mol2 || looks_mol2) ? parse_mol2(text) : parse_mol(text);
  } catch (const Error& e) {
    throw PipelineError("parse", e.what());
  }

  ParsedInput parsed;
  parsed.working = strip_terminal_hydrogens(raw).molecule;
  if (!is_connected(parsed.working))
    throw PipelineError("parse", "bond graph is disconnected after hydrogen stripping");
  parsed.parse_seconds = seconds_since(start);
  return parsed;
}

MethodResult make_method_result(const Molecule& m, const TorsionGraph& g,
                                const AngleTable& table, const TorsionAssignment& theta) {
  const auto full = all_atoms(m);
  MethodResult r;
  r.volume_initial =
      objective_volume(m, g, TorsionAssignment::folded(g.torsion_count(), table.d), table, full);
  r.volume_final = objective_volume(m, g, theta, table, full);
  r.gain_percent = g.torsion_count() == 0
                       ? 0.0
                       : volume_gain_percent(r.volume_initial, r.volume_final);
  r.theta = theta.angle_index;
  return r;
}

RunReport run_parsed(const RunConfig& cfg, const ParsedInput& parsed) {
  RunReport report;
  report.config = cfg;
  report.timings.parse_seconds = parsed.parse_seconds;

  const Molecule& m = parsed.working;
  report.molecule_name = m.name;
  report.atom_count = m.atom_count();

  const auto torsions = find_rotatable_bonds(m);
  const TorsionGraph g = build_torsion_graph(m, torsions);
  report.n_torsions = g.torsion_count();
  const AngleTable table = make_angle_table(cfg.d);
  const int n = g.torsion_count();

  const bool want_quantum =
      cfg.mode == Mode::QUANTUM_PIPELINE || cfg.mode == Mode::BOTH;
  const bool want_greedy =
      cfg.mode == Mode::GREEDY_BASELINE || cfg.mode == Mode::BOTH;

  if (want_quantum) {
    if (n == 0) {
      // Nothing to optimize; report the folded state as-is.
      MethodResult r = make_method_result(m, g, table, TorsionAssignment::folded(0, cfg.d));
      report.methods[to_string(Mode::QUANTUM_PIPELINE)] = r;
    } else {
      QuboModel qubo;
      try {
        const auto start = Clock::now();
        const auto medians = select_median_atoms(g, m);
        const auto coords =
            symbolic_coordinates(g, m, table, medians, cfg.intermediate_threshold);
        const BinaryPolynomial dist = build_distance_constraint(coords, g, medians);
        const BinaryPolynomial hard = build_hard_constraint(n, cfg.d);
        const double a_const =
            dist.term_count() == 0 ? cfg.a_const_factor
                                   : cfg.a_const_factor * dist.max_abs_coeff();
        const BinaryPolynomial pre = hard * a_const - dist;
        report.hubo_terms_pre = pre.term_count();
        const BinaryPolynomial hubo =
            assemble_hubo(hard, dist, a_const, cfg.final_threshold);
        report.hubo_terms_post = hubo.term_count();
        report.hubo_text = format_hubo_text(hubo);
        report.timings.hubo_seconds = seconds_since(start);

        const auto qstart = Clock::now();
        qubo = to_qubo(hubo);
        report.qubo_terms = qubo.poly.term_count();
        report.qubo_vars = qubo.variable_count();
        report.qubo_text = format_qubo_text(qubo);
        report.timings.quadratize_seconds = seconds_since(qstart);
      } catch (const PipelineError&) {
        throw;
      } catch (const Error& e) {
        throw PipelineError("hubo", e.what());
      }

      try {
        const auto start = Clock::now();
        AnnealParams params = cfg.anneal;
        std::tie(params.beta_start, params.beta_end) = default_beta_range(qubo);
        const SampleSet samples = simulated_anneal(qubo, params);
        report.samples_jsonl = format_samples_jsonl(samples);
        const UnfoldResult best = select_best(samples, qubo, cfg.top_k, m, g, table);
        report.timings.sample_seconds = seconds_since(start);

        MethodResult r = make_method_result(m, g, table, best.theta);
        r.energy = best.energy;
        r.feasible_count = best.feasible_count;
        report.methods[to_string(Mode::QUANTUM_PIPELINE)] = r;
      } catch (const Error& e) {
        throw PipelineError("sample", e.what());
      }
    }
  }

  if (want_greedy) {
    try {
      const auto start = Clock::now();
      const int passes = std::max(1, n);
      auto [theta, trace] = greedy_unfold(m, g, table, passes);
      report.timings.greedy_seconds = seconds_since(start);
      report.greedy_trace_csv = format_trace_csv(trace);
      report.methods[to_string(Mode::GREEDY_BASELINE)] =
          make_method_result(m, g, table, theta);
    } catch (const Error& e) {
      throw PipelineError("greedy", e.what());
    }
  }

  if (cfg.mode == Mode::BRUTE_FORCE) {
    try {
      const auto start = Clock::now();
      double states = 1;
      for (int i = 0; i < n; ++i) states *= cfg.d;
      if (states > (1 << 20))
        throw TooManyVariables("brute-force grid has " + std::to_string(states) +
                               " states");
      const auto full = all_atoms(m);
      TorsionAssignment theta = TorsionAssignment::folded(n, cfg.d);
      TorsionAssignment best = theta;
      double best_obj = objective_volume(m, g, theta, table, full);
      while (true) {
        int pos = n - 1;
        while (pos >= 0 && theta.angle_index[pos] == cfg.d) {
          theta.angle_index[pos] = 1;
          --pos;
        }
        if (pos < 0) break;
        ++theta.angle_index[pos];
        const double obj = objective_volume(m, g, theta, table, full);
        if (obj > best_obj) {
          best_obj = obj;
          best = theta;
        }
      }
      report.timings.brute_force_seconds = seconds_since(start);
      report.methods[to_string(Mode::BRUTE_FORCE)] = make_method_result(m, g, table, best);
    } catch (const PipelineError&) {
      throw;
    } catch (const Error& e) {
      throw PipelineError("brute_force", e.what());
    }
  }

  return report;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::QUANTUM_PIPELINE: return "quantum_pipeline";
    case Mode::GREEDY_BASELINE: return "greedy_baseline";
    case Mode::BOTH: return "both";
    case Mode::BRUTE_FORCE: return "brute_force";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& s) {
  if (s == "quantum_pipeline") return Mode::QUANTUM_PIPELINE;
  if (s == "greedy_baseline") return Mode::GREEDY_BASELINE;
  if (s == "both") return Mode::BOTH;
  if (s == "brute_force") return Mode::BRUTE_FORCE;
  throw Error("unknown mode: " + s);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

RunReport run_pipeline(const RunConfig& cfg) {
  if (cfg.d < 2) throw PipelineError("config", "d must be >= 2");
  for (double t : {cfg.intermediate_threshold, cfg.final_threshold})
    if (t < 0.0 || t >= 1.0)
      throw PipelineError("config", "thresholds must lie in [0, 1)");
  if (cfg.top_k < 1) throw PipelineError("config", "top_k must be >= 1");
  return run_parsed(cfg, parse_phase(cfg.input_path));
}

std::vector<SweepEntry> threshold_sweep(const RunConfig& cfg,
                                        const std::vector<double>& thresholds) {
  if (thresholds.empty()) throw PipelineError("config", "threshold list is empty");
  for (double t : thresholds)
    if (t < 0.0 || t >= 1.0)
      throw PipelineError("config", "thresholds must lie in [0, 1)");

  std::vector<double> sorted = thresholds;
  std::sort(sorted.begin(), sorted.end());

  const ParsedInput parsed = parse_phase(cfg.input_path);

  std::vector<SweepEntry> entries(sorted.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= sorted.size()) break;
      RunConfig run_cfg = cfg;
      run_cfg.intermediate_threshold = sorted[i];
      run_cfg.final_threshold = sorted[i];
      run_cfg.anneal.seed = derive_seed(cfg.anneal.seed, i);
      entries[i].threshold = sorted[i];
      try {
        entries[i].report = run_parsed(run_cfg, parsed);
      } catch (const std::exception& e) {
        entries[i].error = e.what();
      }
    }
  };

  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return entries;
}

std::string format_sweep_csv(const std::vector<SweepEntry>& entries) {
  std::string out = "threshold,gain_percent,hubo_terms,construction_seconds\n";
  char buf[160];
  for (const SweepEntry& e : entries) {
    if (!e.report) continue;
    const auto it = e.report->methods.find(to_string(Mode::QUANTUM_PIPELINE));
    const double gain = it == e.report->methods.end() ? 0.0 : it->second.gain_percent;
    std::snprintf(buf, sizeof buf, "%g,%.10g,%zu,%.6f\n", e.threshold, gain,
                  e.report->hubo_terms_post, e.report->timings.hubo_seconds);
    out += buf;
  }
  return out;
}

namespace {

nlohmann::json config_json(const RunConfig& cfg) {
  return {{"input", cfg.input_path},
          {"d", cfg.d},
          {"intermediate_threshold", cfg.intermediate_threshold},
          {"final_threshold", cfg.final_threshold},
          {"a_const_factor", cfg.a_const_factor},
          {"top_k", cfg.top_k},
          {"mode", to_string(cfg.mode)},
          {"workers", cfg.workers},
          {"sweeps", cfg.anneal.sweeps},
          {"reads", cfg.anneal.reads},
          {"seed", cfg.anneal.seed}};
}

}  // namespace

std::string format_report_json(const RunReport& report) {
  nlohmann::json methods;
  for (const auto& [name, r] : report.methods) {
    methods[name] = {{"gain_percent", r.gain_percent},
                     {"volume_initial", r.volume_initial},
                     {"volume_final", r.volume_final},
                     {"theta", r.theta}};
    if (name == to_string(Mode::QUANTUM_PIPELINE)) {
      methods[name]["energy"] = r.energy;
      methods[name]["feasible_count"] = r.feasible_count;
    }
  }
  nlohmann::json j = {
      {"molecule", report.molecule_name},
      {"n_torsions", report.n_torsions},
      {"atom_count", report.atom_count},
      {"hubo_terms_pre_prune", report.hubo_terms_pre},
      {"hubo_terms_post_prune", report.hubo_terms_post},
      {"qubo_terms", report.qubo_terms},
      {"qubo_vars", report.qubo_vars},
      {"timings_seconds",
       {{"parse", report.timings.parse_seconds},
        {"hubo", report.timings.hubo_seconds},
        {"quadratize", report.timings.quadratize_seconds},
        {"sample", report.timings.sample_seconds},
        {"greedy", report.timings.greedy_seconds},
        {"brute_force", report.timings.brute_force_seconds}}},
      {"methods", methods},
      {"config", config_json(report.config)}};
  return j.dump(2) + "\n";
}

std::string format_report_table(const RunReport& report) {
  std::ostringstream out;
  out << "molecule:   " << report.molecule_name << "\n"
      << "atoms:      " << report.atom_count << "\n"
      << "torsions:   " << report.n_torsions << "\n";
  if (report.hubo_terms_pre > 0)
    out << "hubo terms: " << report.hubo_terms_pre << " -> " << report.hubo_terms_post
        << " (final threshold " << report.config.final_threshold << ")\n"
        << "qubo:       " << report.qubo_terms << " terms over " << report.qubo_vars
        << " vars\n";
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "time (s):   parse %.4f | hubo %.4f | quadratize %.4f | sample %.4f\n",
                report.timings.parse_seconds, report.timings.hubo_seconds,
                report.timings.quadratize_seconds, report.timings.sample_seconds);
  out << buf;
  for (const auto& [name, r] : report.methods) {
    std::snprintf(buf, sizeof buf, "%-18s gain %+.4f%%  D0 %.4f  D %.4f  theta [",
                  name.c_str(), r.gain_percent, r.volume_initial, r.volume_final);
    out << buf;
    for (size_t i = 0; i < r.theta.size(); ++i)
      out << (i ? " " : "") << r.theta[i];
    out << "]\n";
  }
  return out.str();
}

std::string format_error_json(const PipelineError& err) {
  nlohmann::json j = {{"error", {{"phase", err.phase()}, {"message", err.message()}}}};
  return j.dump() + "\n";
}

}  // namespace mu
