#include "crowd/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <limits>
#include <string>
#include <thread>

#include "crowd/integrator.hpp"

namespace crowd {

namespace {

struct Accumulator {
  explicit Accumulator(std::size_t n)
      : env{std::vector<double>(n, std::numeric_limits<double>::infinity()),
            std::vector<double>(n, 0.0),
            std::vector<double>(n, -std::numeric_limits<double>::infinity()),
            std::vector<std::size_t>(n, 0)} {}

  void add(std::size_t k, double v) {
    env.min[k] = std::min(env.min[k], v);
    env.max[k] = std::max(env.max[k], v);
    env.mean[k] += v;
    ++env.count[k];
  }

  Envelope finish() {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < env.mean.size(); ++k) {
      if (env.count[k] == 0) {
        env.min[k] = env.mean[k] = env.max[k] = nan;
        continue;
      }
      env.mean[k] /= static_cast<double>(env.count[k]);
      // Rounding in the running sum must not push the mean outside the envelope.
      env.mean[k] = std::clamp(env.mean[k], env.min[k], env.max[k]);
    }
    return std::move(env);
  }

  Envelope env;
};

}  // namespace

std::vector<double> limit_spread(const std::vector<std::vector<double>> &entropy_per_run) {
  if (entropy_per_run.size() < 2) throw std::invalid_argument("limit_spread: need >= 2 runs");
  const std::size_t n = entropy_per_run.front().size();
  for (const auto &row : entropy_per_run) {
    if (row.size() != n) throw std::invalid_argument("limit_spread: mismatched time grids");
  }
  std::vector<double> spread(n, 0.0);
  const auto &first = entropy_per_run.front();
  for (std::size_t r = 1; r < entropy_per_run.size(); ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      spread[k] = std::max(spread[k], std::abs(first[k] - entropy_per_run[r][k]));
    }
  }
  return spread;
}

EnsembleStats aggregate(const std::vector<DiagnosticsSeries> &runs, double d_floor) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  const std::size_t n = runs.front().size();
  for (const auto &run : runs) {
    if (run.size() != n) throw std::invalid_argument("aggregate: mismatched time grids");
  }

  EnsembleStats stats;
  for (const auto &s : runs.front().samples) stats.times.push_back(s.t);

  Accumulator balance(n), diss(n), ent(n), ratio(n);
  std::vector<std::vector<double>> entropy_rows;
  entropy_rows.reserve(runs.size());
  for (const auto &run : runs) {
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto &s = run.samples[k];
      if (s.t != stats.times[k]) throw std::invalid_argument("aggregate: mismatched time grids");
      balance.add(k, s.D - s.s_a);
      diss.add(k, s.D);
      ent.add(k, s.S);
      if (s.D >= d_floor) ratio.add(k, s.s_a / s.D);
      row[k] = s.S;
    }
    entropy_rows.push_back(std::move(row));
  }
  stats.D_minus_s_a = balance.finish();
  stats.D = diss.finish();
  stats.S = ent.finish();
  stats.sa_over_D = ratio.finish();
  stats.limit_spread =
      entropy_rows.size() >= 2 ? limit_spread(entropy_rows) : std::vector<double>(n, 0.0);
  return stats;
}

EnsembleResult run_ensemble(std::size_t n_runs, const SimConfig &base, const ModelParams &params,
                            const EnsembleOptions &options) {
  if (n_runs < 1) throw ValidationError({"n_runs >= 1"});
  require_valid(params, base);

  EnsembleResult result;
  result.seeds.resize(n_runs);
  for (std::size_t k = 0; k < n_runs; ++k) result.seeds[k] = base.seed + k;
  result.runs.resize(n_runs);
  std::vector<std::size_t> degenerate(n_runs, 0);

  struct Failure {
    std::uint64_t seed;
    double t;
    std::string what;
  };
  std::vector<std::optional<Failure>> failures(n_runs);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n_runs; k = next++) {
      SimConfig cfg = base;
      cfg.seed = result.seeds[k];
      try {
        Trajectory traj = simulate(cfg, params);
        degenerate[k] = traj.degenerate_events;
        result.runs[k] = diagnose(traj, params);
      } catch (const NonFiniteStateError &e) {
        failures[k] = Failure{cfg.seed, e.time(), e.what()};
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_runs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  // Lowest failing seed is reported so the error does not depend on scheduling.
  for (const auto &f : failures) {
    if (f) throw EnsembleRunError(f->seed, f->t, "run with seed " + std::to_string(f->seed) + " aborted: " + f->what);
  }
  for (std::size_t d : degenerate) result.degenerate_events += d;
  result.stats = aggregate(result.runs, options.d_floor);
  return result;
}

}  // namespace crowd
