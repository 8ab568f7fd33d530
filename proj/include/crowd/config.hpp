#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "crowd/diagnostics.hpp"
#include "crowd/model.hpp"

namespace crowd {

/// Everything a run needs, as read from a key=value config.
struct RunSpec {
  ModelParams params;
  SimConfig sim;
  double d_floor = kDefaultDFloor;
  /// Set when the config names mass_weight; otherwise it resolves to 1/n.
  std::optional<double> mass_weight;

  /// Fills params.mass_weight from the explicit value or from 1/n.
  void resolve();

  friend bool operator==(const RunSpec &, const RunSpec &) = default;
};

/// Malformed config text. `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string &what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses without resolving or validating; unknown and duplicate keys are errors.
RunSpec parse_config_unchecked(std::string_view text);

/// parse_config_unchecked + resolve + validation. Throws ConfigError or ValidationError.
RunSpec parse_config(std::string_view text);

RunSpec load_config(const std::string &path);

/// Violations of the run spec, including d_floor >= 0.
std::vector<std::string> validate(const RunSpec &spec);

/// Canonical text with every key; parse_config(emit_config(s)) reproduces s.
std::string emit_config(const RunSpec &spec);

/// %.17g rendering used by every output file; round-trips every double.
std::string format_real(double v);

}  // namespace crowd
