#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "crowd/model.hpp"

namespace crowd {

/// Pairs closer than this are treated as coincident and dropped from sums.
inline constexpr double kCoincidenceTolerance = 1e-12;

/// Slack allowed on |eta| <= 1 to absorb rounding in normalized inner products.
inline constexpr double kEtaTolerance = 1e-12;

class DegeneratePairError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct DegeneratePair {
  std::size_t i;
  std::size_t j;
};

/// Collects coincident pairs skipped by pair sums. One log per run; not thread-safe.
class PairEventLog {
 public:
  void record(std::size_t i, std::size_t j) { events_.push_back({i, j}); }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const std::vector<DegeneratePair> &events() const { return events_; }
  void clear() { events_.clear(); }

 private:
  std::vector<DegeneratePair> events_;
};

/// W(s) = C_a exp(-s/l_a) - C_r exp(-s/l_r). Throws std::domain_error for s < 0.
double morse_w(double s, const MorseParams &morse);

/// W'(s). Throws std::domain_error for s <= 0.
double morse_w_prime(double s, const MorseParams &morse);

/// W'(|x - y|) (x - y) / |x - y|. Throws DegeneratePairError for coincident points.
Vec2 grad_w(const Vec2 &x, const Vec2 &y, const MorseParams &morse);

/// Linear perception weight g(eta) = (1+sigma)/2 - (1-sigma)/2 * eta.
double g_of_eta(double eta, double sigma);

/// Even/odd decomposition of the directional weight:
/// g~(xi) = g_sym + g_asym_coeff * (xi/|xi| . v_d/|v_d|).
struct KernelSplit {
  double g_sym;
  double g_asym_coeff;

  static KernelSplit from_sigma(double sigma) {
    return {0.5 * (1.0 + sigma), -0.5 * (1.0 - sigma)};
  }

  /// Odd part g~_a at a unit direction cosine eta.
  double asym(double eta) const { return g_asym_coeff * eta; }
  double weight(double eta) const { return g_sym + g_asym_coeff * eta; }
};

/// Cosine between the unit vector of `xi` and the desired direction.
double direction_cosine(const Vec2 &xi, const Vec2 &v_d);

/// g~(xi) = g(xi/|xi| . v_d/|v_d|). Throws std::invalid_argument for xi = 0.
double g_tilde(const Vec2 &xi, const ModelParams &params);

/// v_s(x_i) = sum_{j != i} m g~(x_i - x_j) grad W(|x_i - x_j|).
Vec2 social_velocity(std::size_t i, const ParticleState &state, const ModelParams &params,
                     PairEventLog *log = nullptr);

/// All social velocities at once, one pass over unordered pairs.
std::vector<Vec2> social_velocities(const ParticleState &state, const ModelParams &params,
                                    PairEventLog *log = nullptr);

/// v_i = v_d + v_s(x_i).
std::vector<Vec2> velocity_field(const ParticleState &state, const ModelParams &params,
                                 PairEventLog *log = nullptr);

}  // namespace crowd
