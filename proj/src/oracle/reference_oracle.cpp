#include "crowd/reference_oracle.hpp"

#include <cmath>

namespace crowd::oracle {

namespace {

double W(double s, const MorseParams &p) {
  return p.C_a * std::exp(-s / p.l_a) - p.C_r * std::exp(-s / p.l_r);
}

double dW(double s, const MorseParams &p) {
  return -p.C_a / p.l_a * std::exp(-s / p.l_a) + p.C_r / p.l_r * std::exp(-s / p.l_r);
}

double g(double eta, double sigma) { return 0.5 * (1.0 + sigma) - 0.5 * (1.0 - sigma) * eta; }

double separation(const Vec2 &a, const Vec2 &b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
}

// g~(x - y) for the ordered pair (x, y).
double gt(const Vec2 &x, const Vec2 &y, const ModelParams &p) {
  const double r = separation(x, y);
  const double vn = std::sqrt(p.v_d.x * p.v_d.x + p.v_d.y * p.v_d.y);
  const double eta = ((x.x - y.x) * p.v_d.x + (x.y - y.y) * p.v_d.y) / (r * vn);
  return g(eta, p.sigma);
}

// grad W(|x - y|) for the ordered pair (x, y).
Vec2 gradW(const Vec2 &x, const Vec2 &y, const MorseParams &p) {
  const double r = separation(x, y);
  const double f = dW(r, p) / r;
  return {f * (x.x - y.x), f * (x.y - y.y)};
}

constexpr double kSkip = 1e-12;

}  // namespace

std::vector<Vec2> social_velocities_naive(const ParticleState &state, const ModelParams &params) {
  const std::size_t n = state.size();
  std::vector<Vec2> vs(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || separation(state[i], state[j]) < kSkip) continue;
      const Vec2 gw = gradW(state[i], state[j], params.morse);
      const double w = params.mass_weight * gt(state[i], state[j], params);
      sx += w * gw.x;
      sy += w * gw.y;
    }
    vs[i] = {sx, sy};
  }
  return vs;
}

Vec2 barycentric_velocity_naive(const ParticleState &state, const ModelParams &params) {
  const auto vs = social_velocities_naive(state, params);
  double M = 0.0, px = 0.0, py = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    M += params.mass_weight;
    px += params.mass_weight * (params.v_d.x + vs[i].x);
    py += params.mass_weight * (params.v_d.y + vs[i].y);
  }
  return {px / M, py / M};
}

std::vector<Vec2> peculiar_velocities_naive(const ParticleState &state, const ModelParams &params) {
  const auto vs = social_velocities_naive(state, params);
  const Vec2 v0 = barycentric_velocity_naive(state, params);
  std::vector<Vec2> out(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    out[i] = {params.v_d.x + vs[i].x - v0.x, params.v_d.y + vs[i].y - v0.y};
  }
  return out;
}

double entropy_naive(const ParticleState &state, const ModelParams &params) {
  const double m = params.mass_weight;
  double S = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (std::size_t j = 0; j < state.size(); ++j) {
      if (i == j) continue;
      const double r = separation(state[i], state[j]);
      if (r < kSkip) continue;
      S += m * m * W(r, params.morse) * gt(state[i], state[j], params);
    }
  }
  return 0.5 * S;
}

double dissipation_via_definition(const ParticleState &state, const ModelParams &params) {
  const auto vh = peculiar_velocities_naive(state, params);
  double D = 0.0;
  for (const Vec2 &v : vh) D += params.mass_weight * (v.x * v.x + v.y * v.y);
  return D;
}

double dissipation_via_vs(const ParticleState &state, const ModelParams &params) {
  const auto vs = social_velocities_naive(state, params);
  const auto vh = peculiar_velocities_naive(state, params);
  double D = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    D += params.mass_weight * (vs[i].x * vh[i].x + vs[i].y * vh[i].y);
  }
  return D;
}

ProductionNaive production_terms_naive(const ParticleState &state, const ModelParams &params) {
  const auto vh = peculiar_velocities_naive(state, params);
  const double m = params.mass_weight;
  double ss = 0.0, sa = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (std::size_t j = 0; j < state.size(); ++j) {
      if (i == j || separation(state[i], state[j]) < kSkip) continue;
      const Vec2 gw = gradW(state[i], state[j], params.morse);
      const double forward = gt(state[i], state[j], params);
      const double backward = gt(state[j], state[i], params);
      const double g_s = 0.5 * forward + 0.5 * backward;
      const double g_a = 0.5 * forward - 0.5 * backward;
      const double diff = gw.x * (vh[i].x - vh[j].x) + gw.y * (vh[i].y - vh[j].y);
      const double sum = gw.x * (vh[i].x + vh[j].x) + gw.y * (vh[i].y + vh[j].y);
      ss += m * m * diff * g_s;
      sa += m * m * sum * g_a;
    }
  }
  return {0.5 * ss, 0.5 * sa};
}

double lemma1_rhs(const ParticleState &state, const ModelParams &params) {
  const auto vh = peculiar_velocities_naive(state, params);
  const double m = params.mass_weight;
  const double alpha = 0.5 * (1.0 + params.sigma);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (std::size_t j = 0; j < state.size(); ++j) {
      if (i == j || separation(state[i], state[j]) < kSkip) continue;
      const Vec2 gw = gradW(state[i], state[j], params.morse);
      acc += m * m * (gw.x * (vh[i].x - vh[j].x) + gw.y * (vh[i].y - vh[j].y));
    }
  }
  return 0.5 * alpha * acc;
}

}  // namespace crowd::oracle
