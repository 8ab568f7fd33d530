#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace crowd {

/// Planar vector used for positions, velocities and kernel directions.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 &operator+=(const Vec2 &o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2 &operator-=(const Vec2 &o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2 &operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
  friend constexpr Vec2 operator-(const Vec2 &a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }
inline bool is_finite(const Vec2 &a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Morse interaction potential coefficients.
struct MorseParams {
  double C_a = 1.0;  ///< attraction strength
  double C_r = 2.0;  ///< repulsion strength
  double l_a = 2.0;  ///< attraction length
  double l_r = 0.5;  ///< repulsion length

  friend bool operator==(const MorseParams &, const MorseParams &) = default;
};

struct ModelParams {
  MorseParams morse;
  double sigma = 0.5;          ///< anisotropy, 1 is isotropic
  Vec2 v_d{1.0, 0.0};          ///< desired velocity
  double mass_weight = 0.04;   ///< per-particle weight of the empirical measure

  /// Symmetric part of the anisotropy weight, (1 + sigma) / 2.
  double alpha() const { return 0.5 * (1.0 + sigma); }

  friend bool operator==(const ModelParams &, const ModelParams &) = default;
};

/// Positions of all agents at one instant. Velocities are derived, never stored.
struct ParticleState {
  std::vector<Vec2> positions;

  std::size_t size() const { return positions.size(); }
  const Vec2 &operator[](std::size_t i) const { return positions[i]; }
  Vec2 &operator[](std::size_t i) { return positions[i]; }

  friend bool operator==(const ParticleState &, const ParticleState &) = default;
};

/// Axis-aligned square [lo, lo + side]^2.
struct SquareDomain {
  double lo = 0.0;
  double side = 1.0;

  friend bool operator==(const SquareDomain &, const SquareDomain &) = default;
};

struct SimConfig {
  std::size_t n_particles = 25;
  double dt = 1e-3;
  double t_final = 5.0;
  std::size_t record_stride = 10;
  std::uint64_t seed = 0;
  SquareDomain init_domain{};

  friend bool operator==(const SimConfig &, const SimConfig &) = default;
};

/// Thrown by operations whose inputs fail `validate`.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string> &violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Every violated constraint by name; empty means the inputs are admissible.
std::vector<std::string> validate(const ModelParams &params, const SimConfig &config);
std::vector<std::string> validate(const ModelParams &params);

/// Throws ValidationError when `validate` reports anything.
void require_valid(const ModelParams &params, const SimConfig &config);

/// Throws std::invalid_argument on N < 2 or non-finite coordinates.
void require_valid(const ParticleState &state);

double total_mass(const ModelParams &params, const SimConfig &config);
double total_mass(const ModelParams &params, const ParticleState &state);

}  // namespace crowd
