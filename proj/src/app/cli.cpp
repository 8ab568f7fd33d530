#include "crowd/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <ostream>

#include "crowd/config.hpp"
#include "crowd/ensemble.hpp"
#include "crowd/integrator.hpp"
#include "crowd/invariant_suite.hpp"
#include "crowd/output.hpp"

namespace crowd {

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string config_path;
  double sigma = 0.0;
  std::size_t n = 0;
  double dt = 0.0;
  double t_final = 0.0;
  std::uint64_t seed = 0;
  CLI::Option *sigma_opt = nullptr;
  CLI::Option *n_opt = nullptr;
  CLI::Option *dt_opt = nullptr;
  CLI::Option *t_final_opt = nullptr;
  CLI::Option *seed_opt = nullptr;

  void attach(CLI::App &cmd) {
    cmd.add_option("--config", config_path, "key=value configuration file");
    sigma_opt = cmd.add_option("--sigma", sigma, "anisotropy in [0,1]");
    n_opt = cmd.add_option("--n", n, "number of particles");
    dt_opt = cmd.add_option("--dt", dt, "fixed time step");
    t_final_opt = cmd.add_option("--t-final", t_final, "final time");
    seed_opt = cmd.add_option("--seed", seed, "random seed (ensemble base seed)");
  }

  RunSpec build() const {
    RunSpec spec = config_path.empty() ? RunSpec{} : parse_config_unchecked(read_file(config_path));
    if (sigma_opt->count()) spec.params.sigma = sigma;
    if (n_opt->count()) spec.sim.n_particles = n;
    if (dt_opt->count()) spec.sim.dt = dt;
    if (t_final_opt->count()) spec.sim.t_final = t_final;
    if (seed_opt->count()) spec.sim.seed = seed;
    spec.resolve();
    if (auto bad = validate(spec); !bad.empty()) throw ValidationError(std::move(bad));
    return spec;
  }

  static std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
};

std::string join_args(const std::vector<std::string> &args) {
  std::string s = "crowd";
  for (const auto &a : args) s += " " + a;
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_common(const fs::path &dir, const RunSpec &spec, RunMetadata meta) {
  write_text(dir / "config.txt", emit_config(spec));
  write_text(dir / "metadata.txt", meta.text());
}

int run_simulate(const RunSpec &spec, const fs::path &dir, const std::string &command,
                 std::ostream &out, std::ostream &err) {
  const auto start = std::chrono::steady_clock::now();
  const Trajectory traj = simulate(spec.sim, spec.params);
  const DiagnosticsSeries series = diagnose(traj, spec.params);
  const ConsistencyReport rep = consistency_report(series);

  fs::create_directories(dir);
  emit_run_csv(series, spec.d_floor, dir / "run.csv");
  for (const auto &[name, text] : run_plot_scripts()) write_text(dir / name, text);

  RunMetadata meta = RunMetadata::describe(spec, command);
  meta.set("records", std::to_string(traj.size()));
  meta.set("degenerate_pair_events", std::to_string(traj.degenerate_events));
  meta.set("max_algebraic_deviation", format_real(rep.max_algebraic_dev));
  meta.set("max_numeric_deviation", format_real(rep.max_numeric_dev));
  meta.set("wall_clock_seconds", format_real(seconds_since(start)));
  write_common(dir, spec, std::move(meta));

  if (traj.degenerate_events) {
    err << "warning: " << traj.degenerate_events << " coincident pair evaluations were skipped\n";
  }
  const auto &last = series.samples.back();
  out << "wrote " << (dir / "run.csv").string() << " (" << series.size() << " records)\n"
      << "final t=" << format_real(last.t) << " S=" << format_real(last.S) << " D=" << format_real(last.D)
      << "\nmax |s_s - (D - s_a)| = " << format_real(rep.max_algebraic_dev)
      << "\nmax |numeric dS/dt - s_s| = " << format_real(rep.max_numeric_dev) << '\n';
  return kExitOk;
}

int run_ensemble_cmd(const RunSpec &spec, std::size_t runs, unsigned threads, const fs::path &dir,
                     const std::string &command, std::ostream &out, std::ostream &err) {
  if (runs < 1) throw ValidationError({"n_runs >= 1"});
  const auto start = std::chrono::steady_clock::now();
  EnsembleOptions options;
  options.d_floor = spec.d_floor;
  options.threads = threads;
  const EnsembleResult result = run_ensemble(runs, spec.sim, spec.params, options);

  fs::create_directories(dir);
  emit_ensemble_csv(result.stats, dir / "ensemble.csv");
  for (const auto &[name, text] : ensemble_plot_scripts()) write_text(dir / name, text);

  RunMetadata meta = RunMetadata::describe(spec, command);
  meta.set("runs", std::to_string(runs));
  meta.set("seeds", std::to_string(result.seeds.front()) + ".." + std::to_string(result.seeds.back()));
  meta.set("degenerate_pair_events", std::to_string(result.degenerate_events));
  meta.set("wall_clock_seconds", format_real(seconds_since(start)));
  write_common(dir, spec, std::move(meta));

  if (result.degenerate_events) {
    err << "warning: " << result.degenerate_events << " coincident pair evaluations were skipped\n";
  }
  out << "wrote " << (dir / "ensemble.csv").string() << " (" << runs << " runs, "
      << result.stats.times.size() << " records)\n";
  return kExitOk;
}

int run_check(const RunSpec &spec, std::size_t states, std::ostream &out) {
  SuiteOptions options;
  options.n_states = states;
  const auto results = run_invariant_suite(spec, options);
  bool all = true;
  for (const auto &r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %-36s observed %.3e  limit %.1e\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.observed, r.threshold);
    out << line;
    all = all && r.passed;
  }
  out << (all ? "all checks passed\n" : "invariant suite FAILED\n");
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Nonlocal crowd particle model with entropy diagnostics", "crowd"};
  app.require_subcommand(1);

  Overrides sim_over, ens_over, check_over;
  std::string sim_out = "crowd_out", ens_out = "crowd_ensemble";
  std::size_t runs = 100, states = 1000;
  unsigned threads = 0;

  CLI::App *sim = app.add_subcommand("simulate", "single run: run.csv, metadata, plot scripts");
  sim_over.attach(*sim);
  sim->add_option("--out", sim_out, "output directory");

  CLI::App *ens = app.add_subcommand("ensemble", "seeded multi-run envelopes: ensemble.csv");
  ens_over.attach(*ens);
  ens->add_option("--out", ens_out, "output directory");
  ens->add_option("--runs", runs, "number of runs (seeds seed..seed+runs-1)");
  ens->add_option("--threads", threads, "worker threads, 0 = hardware concurrency");

  CLI::App *chk = app.add_subcommand("check", "invariant and oracle-agreement suite");
  check_over.attach(*chk);
  chk->add_option("--states", states, "random states in the sweep");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const std::string command = join_args(args);
  try {
    if (sim->parsed()) return run_simulate(sim_over.build(), sim_out, command, out, err);
    if (ens->parsed()) return run_ensemble_cmd(ens_over.build(), runs, threads, ens_out, command, out, err);
    return run_check(check_over.build(), states, out);
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NonFiniteStateError &e) {
    err << "error: run aborted at t=" << format_real(e.time()) << ": " << e.what() << '\n';
    return kExitRuntime;
  } catch (const EnsembleRunError &e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace crowd
