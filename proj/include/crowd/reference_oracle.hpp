#pragma once

// Deliberately naive transcriptions of the diagnostic functionals. They share no
// pair-loop or kernel code with the production path and exist to cross-check it.

#include <vector>

#include "crowd/model.hpp"

namespace crowd::oracle {

/// Social velocities by the full j != i sum, one particle at a time.
std::vector<Vec2> social_velocities_naive(const ParticleState &state, const ModelParams &params);

/// v_0 computed as (1/M) sum_i m v_i with explicit masses.
Vec2 barycentric_velocity_naive(const ParticleState &state, const ModelParams &params);

std::vector<Vec2> peculiar_velocities_naive(const ParticleState &state, const ModelParams &params);

/// Full double sum of m^2 W g~ over ordered pairs, no symmetry used.
double entropy_naive(const ParticleState &state, const ModelParams &params);

/// sum_i m |v^_i|^2
double dissipation_via_definition(const ParticleState &state, const ModelParams &params);

/// sum_i m v_s,i . v^_i
double dissipation_via_vs(const ParticleState &state, const ModelParams &params);

struct ProductionNaive {
  double s_s;
  double s_a;
};

/// Both production terms over ordered pairs, with the even and odd parts of g~ formed
/// from two evaluations of g at +/- the direction cosine.
ProductionNaive production_terms_naive(const ParticleState &state, const ModelParams &params);

/// (alpha/2) sum_i sum_j m^2 grad W(x_i - x_j) . (v^_i - v^_j)
double lemma1_rhs(const ParticleState &state, const ModelParams &params);

}  // namespace crowd::oracle
