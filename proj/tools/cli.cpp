#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "csv.hpp"
#include "wdistill/errors.hpp"
#include "wdistill/experiments.hpp"
#include "wdistill/verify.hpp"

namespace wdistill::cli {

namespace {

struct GridFlags {
  double start = 0.0;
  double stop = 1.0;
  int points = 21;
};

struct RunFlags {
  int max_steps = 200;
  double target = 0.99;
  std::string v_placement = "per-party";

  RunOptions options() const {
    RunOptions o;
    o.max_steps = max_steps;
    o.target_fidelity = target;
    o.protocol.v_placement = parse_v_placement(v_placement);
    return o;
  }
};

void add_grid(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--start", g.start, "First grid fidelity")->capture_default_str();
  cmd->add_option("--stop", g.stop, "Last grid fidelity")->capture_default_str();
  cmd->add_option("--points", g.points, "Number of grid points")->capture_default_str();
}

void add_run(CLI::App* cmd, RunFlags& r) {
  cmd->add_option("--max-steps", r.max_steps, "Recurrence step budget")->capture_default_str();
  cmd->add_option("--target", r.target, "Target fidelity")->capture_default_str();
  cmd->add_option("--v-placement", r.v_placement, "Where V acts in Pbar: per-party | per-copy")
      ->capture_default_str();
}

// Opens --out when given, otherwise hands back the default stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InputError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }
  bool to_file() const { return static_cast<bool>(file_); }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

std::string strip_csv(const std::string& path) {
  const std::string ext = ".csv";
  if (path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    return path.substr(0, path.size() - ext.size());
  }
  return path;
}

int cmd_verify(std::ostream& out) {
  bool all = true;
  for (const CheckResult& c : run_structural_checks()) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    all = all && c.passed;
  }
  out << (all ? "all checks passed\n" : "verification FAILED\n");
  return all ? kExitOk : kExitFailed;
}

int cmd_curve(const GridFlags& g, const std::string& path, std::ostream& out) {
  const auto rows = dephasing_curve(linear_grid(g.start, g.stop, g.points));
  Sink sink(path, out);
  CsvWriter csv(sink.stream(), {"F", "F_prime_sim", "F_prime_formula", "p_success"});
  double worst = 0.0;
  for (const auto& r : rows) {
    csv.cell(r.fidelity).cell(r.simulated).cell(r.formula).cell(r.p_success).end_row();
    worst = std::max(worst, std::abs(r.simulated - r.formula));
  }
  if (sink.to_file()) {
    out << "wrote " << rows.size() << " rows to " << path
        << "; max |simulated - formula| = " << format_number(worst) << "\n";
  }
  return kExitOk;
}

int cmd_yield(const GridFlags& g, double target, const std::string& path, std::ostream& out) {
  const auto rows = yield_curve(linear_grid(g.start, g.stop, g.points), target);
  Sink sink(path, out);
  CsvWriter csv(sink.stream(), {"F", "steps", "yield"});
  for (const auto& r : rows) csv.cell(r.fidelity).cell(r.steps).cell(r.yield).end_row();
  if (sink.to_file()) out << "wrote " << rows.size() << " rows to " << path << "\n";
  return kExitOk;
}

int cmd_threshold(const std::string& channel, double resolution, const RunFlags& run,
                  std::ostream& out) {
  const ChannelKind kind = parse_channel_kind(channel);
  const ThresholdResult r = retrieval_threshold(kind, resolution, run.options());
  out << "channel=" << to_string(kind) << " threshold=" << format_number(r.threshold)
      << " bracket=[" << format_number(r.lo) << "," << format_number(r.hi) << "]"
      << " width=" << format_number(r.bracket_width)
      << " ppt_bound=" << format_number(ppt_threshold(kind)) << "\n";
  return kExitOk;
}

int cmd_ppt(const std::string& channel, const GridFlags& g, const std::string& path,
            std::ostream& out) {
  const ChannelKind kind = parse_channel_kind(channel);
  const auto grid = linear_grid(g.start, g.stop, g.points);
  Sink sink(path, out);
  CsvWriter csv(sink.stream(), {"F", "min_eig_A", "min_eig_B", "min_eig_C"});
  for (double f : grid) {
    const DensityMatrix rho = noisy_w(ChannelSpec(kind, mu_for_fidelity(kind, f)));
    csv.cell(f);
    for (Party p : {Party::A, Party::B, Party::C}) csv.cell(ppt_minimum_eigenvalue(rho, p));
    csv.end_row();
  }
  if (sink.to_file()) {
    out << "wrote " << grid.size() << " rows to " << path
        << "; first negative eigenvalue at F = " << format_number(ppt_threshold(kind)) << "\n";
  }
  return kExitOk;
}

void write_branch_counts(std::ostream& os, const BranchStats& stats) {
  CsvWriter csv(os, {"branch", "count", "fraction"});
  for (Classification c : kAllClassifications) {
    csv.cell(to_string(c)).cell(stats.count(c)).cell(stats.fraction(c)).end_row();
  }
}

void write_branch_steps(std::ostream& os, const BranchStats& stats) {
  CsvWriter csv(os, {"branch", "step", "mean_F", "std_F"});
  for (Classification c : kAllClassifications) {
    auto it = stats.mean_fidelity_by_step.find(c);
    if (it == stats.mean_fidelity_by_step.end()) continue;
    for (const StepStat& s : it->second) {
      csv.cell(to_string(c)).cell(s.step).cell(s.mean).cell(s.stddev).end_row();
    }
  }
}

int cmd_random(const RandomStatsConfig& config, const std::string& path, std::ostream& out) {
  const BranchStats stats = random_branch_stats(config);
  if (path.empty()) {
    write_branch_counts(out, stats);
    out << "\n";
    write_branch_steps(out, stats);
    return kExitOk;
  }
  const std::string stem = strip_csv(path);
  const std::string counts_path = stem + "_counts.csv";
  const std::string steps_path = stem + "_steps.csv";
  {
    Sink sink(counts_path, out);
    write_branch_counts(sink.stream(), stats);
  }
  {
    Sink sink(steps_path, out);
    write_branch_steps(sink.stream(), stats);
  }
  out << "samples=" << stats.n_samples << " draws=" << stats.attempts;
  for (Classification c : kAllClassifications) {
    out << " " << to_string(c) << "=" << stats.count(c);
  }
  out << "\nwrote " << counts_path << " and " << steps_path << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"W-state distillation by complementary stabilizer measurements", "wdistill"};
  app.require_subcommand(1);

  std::string out_path;
  GridFlags curve_grid{1.0 / 3.0, 1.0, 21};
  GridFlags yield_grid{0.34, 1.0, 67};
  GridFlags ppt_grid{1.0 / 3.0, 1.0, 21};
  RunFlags run_flags;
  std::string channel = "depolarizing";
  double resolution = 1e-3;
  RandomStatsConfig random;
  random.n_samples = 10000;
  std::string conditioning = "mixture";

  auto* verify = app.add_subcommand("verify", "Run the structural invariant suite");

  auto* curve = app.add_subcommand("curve", "Dephased distillation curve (CSV)");
  add_grid(curve, curve_grid);
  curve->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* yield = app.add_subcommand("yield", "Yield after reaching the target fidelity (CSV)");
  add_grid(yield, yield_grid);
  yield->add_option("--target", run_flags.target, "Target fidelity")->capture_default_str();
  yield->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* threshold = app.add_subcommand("threshold", "Retrieval threshold of a noisy-W family");
  threshold->add_option("--channel", channel, "dephasing | depolarizing")->capture_default_str();
  threshold->add_option("--resolution", resolution, "Bisection resolution (>= 1e-4)")
      ->capture_default_str();
  add_run(threshold, run_flags);

  auto* ppt = app.add_subcommand("ppt", "Partial-transpose minimum eigenvalue sweep (CSV)");
  ppt->add_option("--channel", channel, "dephasing | depolarizing")->capture_default_str();
  add_grid(ppt, ppt_grid);
  ppt->add_option("--out", out_path, "CSV output path (stdout if omitted)");

  auto* rnd = app.add_subcommand("random", "Branch statistics over random mixed inputs (CSV)");
  rnd->add_option("--f", random.target_fidelity_center, "Centre of the fidelity window")
      ->capture_default_str();
  rnd->add_option("--window", random.window, "Half width of the fidelity window")
      ->capture_default_str();
  rnd->add_option("--samples", random.n_samples, "Number of samples")->capture_default_str();
  rnd->add_option("--seed", random.seed, "Master seed")->capture_default_str();
  rnd->add_option("--conditioning", conditioning, "mixture | rejection")->capture_default_str();
  rnd->add_option("--rejection-budget", random.rejection_budget,
                  "Draws per sample before rejection sampling gives up")
      ->capture_default_str();
  add_run(rnd, run_flags);
  rnd->add_option("--out", out_path,
                  "Output stem: writes <stem>_counts.csv and <stem>_steps.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(out);
    if (curve->parsed()) return cmd_curve(curve_grid, out_path, out);
    if (yield->parsed()) return cmd_yield(yield_grid, run_flags.target, out_path, out);
    if (threshold->parsed()) return cmd_threshold(channel, resolution, run_flags, out);
    if (ppt->parsed()) return cmd_ppt(channel, ppt_grid, out_path, out);
    if (rnd->parsed()) {
      random.conditioning = parse_conditioning(conditioning);
      random.run = run_flags.options();
      return cmd_random(random, out_path, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SamplingError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

}  // namespace wdistill::cli
