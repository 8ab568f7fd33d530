#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "crowd/diagnostics.hpp"
#include "crowd/model.hpp"

namespace crowd {

/// Pointwise-in-time envelope of one channel over runs.
struct Envelope {
  std::vector<double> min;
  std::vector<double> mean;
  std::vector<double> max;
  std::vector<std::size_t> count;  ///< runs contributing at each time
};

struct EnsembleStats {
  std::vector<double> times;
  Envelope D_minus_s_a;
  Envelope D;
  Envelope S;
  Envelope sa_over_D;  ///< only runs with D >= d_floor contribute; NaN where none do
  std::vector<double> limit_spread;  ///< max_k |S_1(t) - S_k(t)|
};

struct EnsembleResult {
  EnsembleStats stats;
  std::vector<std::uint64_t> seeds;
  std::vector<DiagnosticsSeries> runs;  ///< indexed like seeds
  std::size_t degenerate_events = 0;
};

/// A run that left the finite regime; carries its seed.
class EnsembleRunError : public std::runtime_error {
 public:
  EnsembleRunError(std::uint64_t seed, double t, const std::string &what)
      : std::runtime_error(what), seed_(seed), time_(t) {}
  std::uint64_t seed() const { return seed_; }
  double time() const { return time_; }

 private:
  std::uint64_t seed_;
  double time_;
};

struct EnsembleOptions {
  double d_floor = kDefaultDFloor;
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

/// Runs k = 0..n_runs-1 with seed base.seed + k and aggregates after all complete.
EnsembleResult run_ensemble(std::size_t n_runs, const SimConfig &base, const ModelParams &params,
                            const EnsembleOptions &options = {});

/// Aggregates already-computed per-run series on a shared time grid.
EnsembleStats aggregate(const std::vector<DiagnosticsSeries> &runs, double d_floor = kDefaultDFloor);

/// max over k >= 1 of |S_0(t) - S_k(t)|; rows are runs, columns the common time grid.
std::vector<double> limit_spread(const std::vector<std::vector<double>> &entropy_per_run);

}  // namespace crowd
