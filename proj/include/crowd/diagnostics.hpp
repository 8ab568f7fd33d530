#pragma once

#include <vector>

#include "crowd/integrator.hpp"
#include "crowd/kinetics.hpp"
#include "crowd/model.hpp"

namespace crowd {

/// Absolute tolerance on s_s + s_a - D at N = 25 in double precision.
inline constexpr double kIdentityTolerance = 1e-10;

/// Default D threshold below which s_a / D is not reported.
inline constexpr double kDefaultDFloor = 1e-4;

struct DiagnosticsSample {
  double t = 0.0;
  double S = 0.0;    ///< entropy functional
  double D = 0.0;    ///< dissipation, >= 0
  double s_s = 0.0;  ///< symmetric production term
  double s_a = 0.0;  ///< antisymmetric corrector
};

struct DiagnosticsSeries {
  std::vector<DiagnosticsSample> samples;
  std::vector<double> dSdt_numeric;  ///< aligned with samples

  std::size_t size() const { return samples.size(); }
};

struct ProductionTerms {
  double s_s = 0.0;
  double s_a = 0.0;
};

/// Mass-weighted mean position.
Vec2 barycentre(const ParticleState &state);

/// v_0 = (1/M) sum_i m v_i.
Vec2 barycentric_velocity(const ParticleState &state, const ModelParams &params);

/// v_i - v_0 for every particle.
std::vector<Vec2> peculiar_velocities(const ParticleState &state, const ModelParams &params);

/// D = sum_i m |v_i - v_0|^2.
double dissipation(const ParticleState &state, const ModelParams &params);

/// S = 1/2 sum_i sum_{j != i} m^2 W(|x_i - x_j|) g~(x_i - x_j).
double entropy(const ParticleState &state, const ModelParams &params, PairEventLog *log = nullptr);

/// Symmetric and antisymmetric halves of D under the split of g~.
ProductionTerms production_terms(const ParticleState &state, const ModelParams &params,
                                 PairEventLog *log = nullptr);

/// All functionals at one state, sharing one velocity evaluation.
DiagnosticsSample evaluate(const ParticleState &state, const ModelParams &params, double t = 0.0);

/// Central differences inside, one-sided at both ends. Needs >= 2 strictly increasing times.
std::vector<double> numeric_dSdt(const std::vector<double> &t, const std::vector<double> &S);

DiagnosticsSeries diagnose(const Trajectory &trajectory, const ModelParams &params);

struct ConsistencyRow {
  double t = 0.0;
  double s_s = 0.0;
  double dSdt_numeric = 0.0;
  double D_minus_s_a = 0.0;
};

/// Three estimates of dS/dt along a run and their mutual deviations.
struct ConsistencyReport {
  std::vector<ConsistencyRow> rows;
  double max_algebraic_dev = 0.0;  ///< max |s_s - (D - s_a)|
  double max_numeric_dev = 0.0;    ///< max |dS/dt numeric - s_s|
  double max_numeric_vs_balance = 0.0;  ///< max |dS/dt numeric - (D - s_a)|
};

ConsistencyReport consistency_report(const DiagnosticsSeries &series);
ConsistencyReport consistency_report(const Trajectory &trajectory, const ModelParams &params);

struct RatioPoint {
  double t;
  double ratio;
};

/// s_a / D at the instants where D >= d_floor.
std::vector<RatioPoint> ratio_sa_over_D(const DiagnosticsSeries &series,
                                        double d_floor = kDefaultDFloor);

}  // namespace crowd
