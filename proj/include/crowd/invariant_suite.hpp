#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "crowd/config.hpp"
#include "crowd/integrator.hpp"

namespace crowd {

struct CheckResult {
  std::string name;
  double observed;   ///< worst value seen
  double threshold;  ///< pass iff observed <= threshold
  bool passed;
};

struct SuiteOptions {
  std::size_t n_states = 1000;
  bool include_simulation = true;
};

/// Particle counts and anisotropies swept by the randomized checks.
inline constexpr std::size_t kSuiteSizes[] = {2, 3, 5, 10, 25};
inline constexpr double kSuiteSigmas[] = {0.0, 0.25, 0.5, 0.75, 1.0};

/// n positions uniform on [0,1]^2.
ParticleState random_state(Rng &rng, std::size_t n);

/// Randomized state k of the sweep: size kSuiteSizes[k % 5], anisotropy
/// kSuiteSigmas[(k / 5) % 5], mass weight 1/N, Morse and v_d from `base`.
struct SuiteCase {
  ParticleState state;
  ModelParams params;
};
SuiteCase suite_case(std::size_t k, const ModelParams &base, Rng &rng);

/// Diagnostic identities, oracle agreement, kernel checks and (optionally) one run of
/// `spec` checked for triple consistency.
std::vector<CheckResult> run_invariant_suite(const RunSpec &spec, const SuiteOptions &options = {});

}  // namespace crowd
