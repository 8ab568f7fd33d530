#include "crowd/model.hpp"

#include <sstream>

namespace crowd {

namespace {

std::string join(const std::vector<std::string> &items) {
  std::ostringstream out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out << "; ";
    out << items[k];
  }
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::invalid_argument("invalid parameters: " + join(violations)),
      violations_(std::move(violations)) {}

std::vector<std::string> validate(const ModelParams &params) {
  std::vector<std::string> bad;
  const MorseParams &m = params.morse;
  auto positive = [&](double v, const char *name) {
    if (!(std::isfinite(v) && v > 0.0)) bad.push_back(std::string(name) + " > 0");
  };
  positive(m.C_a, "C_a");
  positive(m.C_r, "C_r");
  positive(m.l_a, "l_a");
  positive(m.l_r, "l_r");
  // NaN compares false, so these only fire on genuine ordering failures.
  if (m.l_r >= m.l_a) bad.emplace_back("l_r < l_a");
  if (m.l_r > 0.0 && m.l_a > 0.0 && m.C_r / m.l_r <= m.C_a / m.l_a) {
    bad.emplace_back("C_r/l_r > C_a/l_a");
  }
  if (!(params.sigma >= 0.0 && params.sigma <= 1.0)) bad.emplace_back("sigma in [0,1]");
  if (!is_finite(params.v_d) || !(norm(params.v_d) > 0.0)) bad.emplace_back("|v_d| > 0");
  positive(params.mass_weight, "mass_weight");
  return bad;
}

std::vector<std::string> validate(const ModelParams &params, const SimConfig &config) {
  std::vector<std::string> bad = validate(params);
  if (config.n_particles < 2) bad.emplace_back("n_particles >= 2");
  if (!(std::isfinite(config.dt) && config.dt > 0.0)) bad.emplace_back("dt > 0");
  if (!(std::isfinite(config.t_final) && config.t_final >= config.dt)) {
    bad.emplace_back("t_final >= dt");
  }
  if (config.record_stride < 1) bad.emplace_back("record_stride >= 1");
  if (!std::isfinite(config.init_domain.lo) ||
      !(std::isfinite(config.init_domain.side) && config.init_domain.side > 0.0)) {
    bad.emplace_back("init_domain side > 0");
  }
  return bad;
}

void require_valid(const ModelParams &params, const SimConfig &config) {
  auto bad = validate(params, config);
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

void require_valid(const ParticleState &state) {
  if (state.size() < 2) throw std::invalid_argument("particle state needs at least 2 agents");
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!is_finite(state[i])) {
      throw std::invalid_argument("non-finite position for particle " + std::to_string(i));
    }
  }
}

double total_mass(const ModelParams &params, const SimConfig &config) {
  return static_cast<double>(config.n_particles) * params.mass_weight;
}

double total_mass(const ModelParams &params, const ParticleState &state) {
  return static_cast<double>(state.size()) * params.mass_weight;
}

}  // namespace crowd
