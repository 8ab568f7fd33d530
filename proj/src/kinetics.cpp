#include "crowd/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace crowd {

double morse_w(double s, const MorseParams &morse) {
  if (!(s >= 0.0)) throw std::domain_error("morse_w: separation must be >= 0");
  return morse.C_a * std::exp(-s / morse.l_a) - morse.C_r * std::exp(-s / morse.l_r);
}

double morse_w_prime(double s, const MorseParams &morse) {
  if (!(s > 0.0)) throw std::domain_error("morse_w_prime: separation must be > 0");
  return -(morse.C_a / morse.l_a) * std::exp(-s / morse.l_a) +
         (morse.C_r / morse.l_r) * std::exp(-s / morse.l_r);
}

Vec2 grad_w(const Vec2 &x, const Vec2 &y, const MorseParams &morse) {
  const Vec2 d = x - y;
  const double r = norm(d);
  if (r < kCoincidenceTolerance) throw DegeneratePairError("grad_w: coincident points");
  // Dividing each component by r keeps grad_w(y, x) the exact negation of grad_w(x, y).
  const double wp = morse_w_prime(r, morse);
  return {wp * (d.x / r), wp * (d.y / r)};
}

double g_of_eta(double eta, double sigma) {
  if (!(std::abs(eta) <= 1.0 + kEtaTolerance)) {
    throw std::domain_error("g_of_eta: eta outside [-1, 1]");
  }
  eta = std::clamp(eta, -1.0, 1.0);
  return 0.5 * (1.0 + sigma) - 0.5 * (1.0 - sigma) * eta;
}

double direction_cosine(const Vec2 &xi, const Vec2 &v_d) {
  const double r = norm(xi);
  const double vn = norm(v_d);
  return dot(xi, v_d) / (r * vn);
}

double g_tilde(const Vec2 &xi, const ModelParams &params) {
  if (!(norm(xi) > 0.0)) throw std::invalid_argument("g_tilde: zero direction");
  return g_of_eta(direction_cosine(xi, params.v_d), params.sigma);
}

Vec2 social_velocity(std::size_t i, const ParticleState &state, const ModelParams &params,
                     PairEventLog *log) {
  if (i >= state.size()) throw std::out_of_range("social_velocity: particle index");
  const KernelSplit split = KernelSplit::from_sigma(params.sigma);
  const Vec2 dir = (1.0 / norm(params.v_d)) * params.v_d;
  const double m = params.mass_weight;

  Vec2 vs{};
  for (std::size_t j = 0; j < state.size(); ++j) {
    if (j == i) continue;
    const Vec2 d = state[i] - state[j];
    const double r = norm(d);
    if (r < kCoincidenceTolerance) {
      if (log) log->record(std::min(i, j), std::max(i, j));
      continue;
    }
    const Vec2 e{d.x / r, d.y / r};
    const double w = split.weight(dot(e, dir));
    vs += (m * w * morse_w_prime(r, params.morse)) * e;
  }
  return vs;
}

std::vector<Vec2> social_velocities(const ParticleState &state, const ModelParams &params,
                                    PairEventLog *log) {
  const std::size_t n = state.size();
  const KernelSplit split = KernelSplit::from_sigma(params.sigma);
  const Vec2 dir = (1.0 / norm(params.v_d)) * params.v_d;
  const double m = params.mass_weight;

  std::vector<Vec2> vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 d = state[i] - state[j];
      const double r = norm(d);
      if (r < kCoincidenceTolerance) {
        if (log) log->record(i, j);
        continue;
      }
      const Vec2 e{d.x / r, d.y / r};
      const double eta = dot(e, dir);
      const double mag = m * morse_w_prime(r, params.morse);
      // g~(x_j - x_i) evaluates the weight at -eta.
      vs[i] += (mag * split.weight(eta)) * e;
      vs[j] -= (mag * split.weight(-eta)) * e;
    }
  }
  return vs;
}

std::vector<Vec2> velocity_field(const ParticleState &state, const ModelParams &params,
                                 PairEventLog *log) {
  std::vector<Vec2> v = social_velocities(state, params, log);
  for (Vec2 &vi : v) vi += params.v_d;
  return v;
}

}  // namespace crowd
