#include "crowd/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crowd {

ParticleState initial_conditions(std::uint64_t seed, const SimConfig &config) {
  Rng rng(seed);
  const double lo = config.init_domain.lo;
  const double hi = lo + config.init_domain.side;
  ParticleState state;
  state.positions.reserve(config.n_particles);
  for (std::size_t i = 0; i < config.n_particles; ++i) {
    const double x = rng.uniform(lo, hi);
    const double y = rng.uniform(lo, hi);
    state.positions.push_back({x, y});
  }
  return state;
}

namespace {

ParticleState displaced(const ParticleState &base, const std::vector<Vec2> &v, double h) {
  ParticleState out = base;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * v[i];
  return out;
}

}  // namespace

ParticleState step(const ParticleState &state, const ModelParams &params, double dt,
                   PairEventLog *log) {
  const auto k1 = velocity_field(state, params, log);
  const auto k2 = velocity_field(displaced(state, k1, 0.5 * dt), params, log);
  const auto k3 = velocity_field(displaced(state, k2, 0.5 * dt), params, log);
  const auto k4 = velocity_field(displaced(state, k3, dt), params, log);

  ParticleState next = state;
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

std::size_t step_count(const SimConfig &config) {
  return static_cast<std::size_t>(std::llround(config.t_final / config.dt));
}

Trajectory integrate(ParticleState initial, const SimConfig &config, const ModelParams &params) {
  if (!(config.dt > 0.0) || config.record_stride < 1 || !(config.t_final >= config.dt)) {
    throw std::invalid_argument("integrate: need dt > 0, t_final >= dt, record_stride >= 1");
  }
  require_valid(initial);

  const std::size_t steps = step_count(config);
  Trajectory traj;
  traj.times.reserve(steps / config.record_stride + 2);
  traj.states.reserve(steps / config.record_stride + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  PairEventLog log;
  ParticleState current = std::move(initial);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    try {
      current = step(current, params, config.dt, &log);
    } catch (const std::domain_error &e) {
      // Separations only leave the kernel domain once a stage has overflowed.
      throw NonFiniteStateError(t, std::string("non-finite intermediate stage: ") + e.what());
    }
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!is_finite(current[i])) {
        throw NonFiniteStateError(
            t, "non-finite position for particle " + std::to_string(i) + " at t=" + std::to_string(t));
      }
    }
    if (k % config.record_stride == 0 || k == steps) {
      traj.times.push_back(t);
      traj.states.push_back(current);
    }
  }
  traj.degenerate_events = log.size();
  return traj;
}

Trajectory simulate(const SimConfig &config, const ModelParams &params) {
  require_valid(params, config);
  return integrate(initial_conditions(config.seed, config), config, params);
}

}  // namespace crowd
