#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "crowd/kinetics.hpp"
#include "crowd/model.hpp"

namespace crowd {

inline constexpr std::string_view kSchemeName = "rk4-classical-fixed-step";
inline constexpr std::string_view kGeneratorName = "mt19937_64(splitmix64(seed)), u=(bits>>11)*2^-53";

/// Seeded uniform generator with a fully pinned algorithm, so seeds reproduce across
/// platforms. The standard distributions are implementation-defined and are avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ParticleState> states;
  std::size_t degenerate_events = 0;

  std::size_t size() const { return times.size(); }
};

/// Raised when the integrated state stops being finite.
class NonFiniteStateError : public std::runtime_error {
 public:
  NonFiniteStateError(double t, const std::string &what)
      : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// N positions i.i.d. uniform on the configured square.
ParticleState initial_conditions(std::uint64_t seed, const SimConfig &config);

/// One classical RK4 step of dx_i/dt = v_i(x).
ParticleState step(const ParticleState &state, const ModelParams &params, double dt,
                   PairEventLog *log = nullptr);

/// Number of fixed steps covering [0, t_final]; t_final is rounded to the step grid.
std::size_t step_count(const SimConfig &config);

/// Integrates from `initial` over the configured horizon, recording t = 0, every
/// record_stride-th step and the final step.
Trajectory integrate(ParticleState initial, const SimConfig &config, const ModelParams &params);

/// integrate(initial_conditions(config.seed, config), ...). Throws ValidationError when
/// the inputs are inadmissible and NonFiniteStateError if the state blows up.
Trajectory simulate(const SimConfig &config, const ModelParams &params);

}  // namespace crowd
