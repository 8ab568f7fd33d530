#include "crowd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crowd {

namespace {

Vec2 weighted_mean(const std::vector<Vec2> &v) {
  // Uniform weights: (1/M) sum_i m v_i is the arithmetic mean.
  Vec2 sum{};
  for (const Vec2 &vi : v) sum += vi;
  return (1.0 / static_cast<double>(v.size())) * sum;
}

std::vector<Vec2> subtract_mean(std::vector<Vec2> v) {
  const Vec2 v0 = weighted_mean(v);
  for (Vec2 &vi : v) vi -= v0;
  return v;
}

double dissipation_of(const std::vector<Vec2> &vhat, double m) {
  double D = 0.0;
  for (const Vec2 &w : vhat) D += dot(w, w);
  return m * D;
}

ProductionTerms production_of(const ParticleState &state, const std::vector<Vec2> &vhat,
                              const ModelParams &params, PairEventLog *log) {
  const std::size_t n = state.size();
  const KernelSplit split = KernelSplit::from_sigma(params.sigma);
  const Vec2 dir = (1.0 / norm(params.v_d)) * params.v_d;

  // The (i, j) and (j, i) summands coincide in both terms, which cancels the 1/2.
  double sym = 0.0;
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 d = state[i] - state[j];
      const double r = norm(d);
      if (r < kCoincidenceTolerance) {
        if (log) log->record(i, j);
        continue;
      }
      const Vec2 e{d.x / r, d.y / r};
      const Vec2 gw = morse_w_prime(r, params.morse) * e;
      sym += dot(gw, vhat[i] - vhat[j]);
      asym += split.asym(dot(e, dir)) * dot(gw, vhat[i] + vhat[j]);
    }
  }
  const double m2 = params.mass_weight * params.mass_weight;
  return {m2 * split.g_sym * sym, m2 * asym};
}

}  // namespace

Vec2 barycentre(const ParticleState &state) { return weighted_mean(state.positions); }

Vec2 barycentric_velocity(const ParticleState &state, const ModelParams &params) {
  return weighted_mean(velocity_field(state, params));
}

std::vector<Vec2> peculiar_velocities(const ParticleState &state, const ModelParams &params) {
  return subtract_mean(velocity_field(state, params));
}

double dissipation(const ParticleState &state, const ModelParams &params) {
  return dissipation_of(peculiar_velocities(state, params), params.mass_weight);
}

double entropy(const ParticleState &state, const ModelParams &params, PairEventLog *log) {
  const std::size_t n = state.size();
  const KernelSplit split = KernelSplit::from_sigma(params.sigma);
  const Vec2 dir = (1.0 / norm(params.v_d)) * params.v_d;

  double S = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 d = state[i] - state[j];
      const double r = norm(d);
      if (r < kCoincidenceTolerance) {
        if (log) log->record(i, j);
        continue;
      }
      const double eta = dot(d, dir) / r;
      S += morse_w(r, params.morse) * (split.weight(eta) + split.weight(-eta));
    }
  }
  return 0.5 * params.mass_weight * params.mass_weight * S;
}

ProductionTerms production_terms(const ParticleState &state, const ModelParams &params,
                                 PairEventLog *log) {
  return production_of(state, peculiar_velocities(state, params), params, log);
}

DiagnosticsSample evaluate(const ParticleState &state, const ModelParams &params, double t) {
  const auto vhat = peculiar_velocities(state, params);
  const ProductionTerms p = production_of(state, vhat, params, nullptr);
  return {t, entropy(state, params), dissipation_of(vhat, params.mass_weight), p.s_s, p.s_a};
}

std::vector<double> numeric_dSdt(const std::vector<double> &t, const std::vector<double> &S) {
  if (t.size() != S.size()) throw std::invalid_argument("numeric_dSdt: length mismatch");
  if (t.size() < 2) throw std::invalid_argument("numeric_dSdt: need at least 2 samples");
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!(t[k] > t[k - 1])) throw std::invalid_argument("numeric_dSdt: times must increase");
  }
  const std::size_t n = t.size();
  std::vector<double> out(n);
  out.front() = (S[1] - S[0]) / (t[1] - t[0]);
  out.back() = (S[n - 1] - S[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    out[k] = (S[k + 1] - S[k - 1]) / (t[k + 1] - t[k - 1]);
  }
  return out;
}

DiagnosticsSeries diagnose(const Trajectory &trajectory, const ModelParams &params) {
  DiagnosticsSeries series;
  series.samples.reserve(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    series.samples.push_back(evaluate(trajectory.states[k], params, trajectory.times[k]));
  }
  if (series.samples.size() >= 2) {
    std::vector<double> t, S;
    for (const auto &s : series.samples) {
      t.push_back(s.t);
      S.push_back(s.S);
    }
    series.dSdt_numeric = numeric_dSdt(t, S);
  } else {
    series.dSdt_numeric.assign(series.samples.size(), 0.0);
  }
  return series;
}

ConsistencyReport consistency_report(const DiagnosticsSeries &series) {
  ConsistencyReport report;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto &s = series.samples[k];
    ConsistencyRow row{s.t, s.s_s, series.dSdt_numeric[k], s.D - s.s_a};
    report.max_algebraic_dev = std::max(report.max_algebraic_dev, std::abs(row.s_s - row.D_minus_s_a));
    report.max_numeric_dev = std::max(report.max_numeric_dev, std::abs(row.dSdt_numeric - row.s_s));
    report.max_numeric_vs_balance =
        std::max(report.max_numeric_vs_balance, std::abs(row.dSdt_numeric - row.D_minus_s_a));
    report.rows.push_back(row);
  }
  return report;
}

ConsistencyReport consistency_report(const Trajectory &trajectory, const ModelParams &params) {
  if (trajectory.size() < 2) throw std::invalid_argument("consistency_report: need >= 2 records");
  return consistency_report(diagnose(trajectory, params));
}

std::vector<RatioPoint> ratio_sa_over_D(const DiagnosticsSeries &series, double d_floor) {
  std::vector<RatioPoint> out;
  for (const auto &s : series.samples) {
    if (s.D >= d_floor) out.push_back({s.t, s.s_a / s.D});
  }
  return out;
}

}  // namespace crowd
