#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mu/pipeline.hpp"
#include "mu/stats.hpp"

namespace {

struct CliOptions {
  mu::RunConfig cfg;
  std::string mode = "quantum_pipeline";
  std::string out_dir;
  std::string export_qubo;
  std::vector<double> thresholds;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--input", opt.cfg.input_path, "molecule file (.mol2 or .mol)")
      ->required();
  cmd->add_option("--d", opt.cfg.d, "discrete angles per torsion")
      ->capture_default_str();
  cmd->add_option("--threshold", opt.cfg.final_threshold, "final prune threshold")
      ->capture_default_str();
  cmd->add_option("--intermediate-threshold", opt.cfg.intermediate_threshold,
                  "prune threshold applied during coordinate construction")
      ->capture_default_str();
  cmd->add_option("--mode", opt.mode,
                  "quantum_pipeline | greedy_baseline | both | brute_force")
      ->check(CLI::IsMember(
          {"quantum_pipeline", "greedy_baseline", "both", "brute_force"}))
      ->capture_default_str();
  cmd->add_option("--top-k", opt.cfg.top_k, "feasible samples rescored geometrically")
      ->capture_default_str();
  cmd->add_option("--seed", opt.cfg.anneal.seed, "annealer seed")
      ->envname("UNFOLDER_SEED")
      ->capture_default_str();
  cmd->add_option("--sweeps", opt.cfg.anneal.sweeps, "annealing sweeps per read")
      ->capture_default_str();
  cmd->add_option("--reads", opt.cfg.anneal.reads, "independent annealing reads")
      ->capture_default_str();
  cmd->add_option("--out", opt.out_dir, "directory for JSON/CSV artifacts");
  cmd->add_option("--export-qubo", opt.export_qubo, "write the QUBO text format here");
  cmd->add_option("--workers", opt.cfg.workers, "concurrent sweep workers")
      ->capture_default_str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

void write_run_artifacts(const CliOptions& opt, const mu::RunReport& report) {
  if (!opt.export_qubo.empty() && !report.qubo_text.empty())
    write_file(opt.export_qubo, report.qubo_text);
  if (opt.out_dir.empty()) return;
  std::filesystem::create_directories(opt.out_dir);
  const std::filesystem::path dir(opt.out_dir);
  write_file(dir / "report.json", mu::format_report_json(report));
  if (!report.hubo_text.empty()) write_file(dir / "hubo.txt", report.hubo_text);
  if (!report.qubo_text.empty()) write_file(dir / "qubo.txt", report.qubo_text);
  if (!report.samples_jsonl.empty())
    write_file(dir / "samples.jsonl", report.samples_jsonl);
  if (!report.greedy_trace_csv.empty())
    write_file(dir / "greedy_trace.csv", report.greedy_trace_csv);
}

int run_command(CliOptions& opt) {
  opt.cfg.mode = mu::mode_from_string(opt.mode);
  const mu::RunReport report = mu::run_pipeline(opt.cfg);
  std::cout << mu::format_report_table(report);
  write_run_artifacts(opt, report);
  return 0;
}

int sweep_command(CliOptions& opt) {
  opt.cfg.mode = mu::mode_from_string(opt.mode);
  if (opt.thresholds.empty())
    opt.thresholds = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const auto entries = mu::threshold_sweep(opt.cfg, opt.thresholds);

  std::vector<double> ts, gains;
  for (const auto& e : entries) {
    if (!e.report) {
      std::cerr << "threshold " << e.threshold << " failed: " << e.error << "\n";
      continue;
    }
    const auto it = e.report->methods.find("quantum_pipeline");
    if (it != e.report->methods.end()) {
      ts.push_back(e.threshold);
      gains.push_back(it->second.gain_percent);
    }
  }

  const std::string csv = mu::format_sweep_csv(entries);
  std::cout << csv;
  if (ts.size() >= 2)
    std::printf("pearson(gain_percent, threshold) = %.4f\n",
                mu::pearson_correlation(ts, gains));

  if (!opt.out_dir.empty()) {
    std::filesystem::create_directories(opt.out_dir);
    const std::filesystem::path dir(opt.out_dir);
    write_file(dir / "sweep.csv", csv);
    for (const auto& e : entries) {
      if (!e.report) continue;
      char name[64];
      std::snprintf(name, sizeof name, "report_t%.2f.json", e.threshold);
      write_file(dir / name, mu::format_report_json(*e.report));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"molecular unfolding over discrete torsions: HUBO -> QUBO -> annealing"};
  app.require_subcommand(1);

  CliOptions run_opt, sweep_opt;
  CLI::App* run = app.add_subcommand("run", "single end-to-end pipeline run");
  add_common_flags(run, run_opt);
  CLI::App* sweep = app.add_subcommand("sweep", "one run per prune threshold");
  add_common_flags(sweep, sweep_opt);
  sweep->add_option("--thresholds", sweep_opt.thresholds,
                    "threshold list (default 0.1..0.9)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(run_opt);
    return sweep_command(sweep_opt);
  } catch (const mu::PipelineError& e) {
    std::cout << mu::format_error_json(e);
    return 1;
  } catch (const std::exception& e) {
    std::cout << mu::format_error_json(mu::PipelineError("unexpected", e.what()));
    return 1;
  }
}
