#include "crowd/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace crowd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text, std::string_view key, std::size_t line) {
  double v = 0.0;
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(line, "invalid real value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view text, std::string_view key, std::size_t line) {
  Int v = 0;
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(line, "invalid integer value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void RunSpec::resolve() {
  params.mass_weight = mass_weight ? *mass_weight
                                   : (sim.n_particles ? 1.0 / static_cast<double>(sim.n_particles) : 0.0);
}

RunSpec parse_config_unchecked(std::string_view text) {
  RunSpec spec;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (value.empty()) throw ConfigError(line_no, "missing value for " + std::string(key));
    if (!seen.emplace(key).second) throw ConfigError(line_no, "duplicate key " + std::string(key));

    if (key == "C_a") spec.params.morse.C_a = parse_real(value, key, line_no);
    else if (key == "C_r") spec.params.morse.C_r = parse_real(value, key, line_no);
    else if (key == "l_a") spec.params.morse.l_a = parse_real(value, key, line_no);
    else if (key == "l_r") spec.params.morse.l_r = parse_real(value, key, line_no);
    else if (key == "sigma") spec.params.sigma = parse_real(value, key, line_no);
    else if (key == "v_d_x") spec.params.v_d.x = parse_real(value, key, line_no);
    else if (key == "v_d_y") spec.params.v_d.y = parse_real(value, key, line_no);
    else if (key == "mass_weight") spec.mass_weight = parse_real(value, key, line_no);
    else if (key == "n") spec.sim.n_particles = parse_integer<std::size_t>(value, key, line_no);
    else if (key == "dt") spec.sim.dt = parse_real(value, key, line_no);
    else if (key == "t_final") spec.sim.t_final = parse_real(value, key, line_no);
    else if (key == "record_stride") spec.sim.record_stride = parse_integer<std::size_t>(value, key, line_no);
    else if (key == "seed") spec.sim.seed = parse_integer<std::uint64_t>(value, key, line_no);
    else if (key == "d_floor") spec.d_floor = parse_real(value, key, line_no);
    else throw ConfigError(line_no, "unknown key " + std::string(key));
  }
  return spec;
}

std::vector<std::string> validate(const RunSpec &spec) {
  auto bad = validate(spec.params, spec.sim);
  if (!(std::isfinite(spec.d_floor) && spec.d_floor >= 0.0)) bad.emplace_back("d_floor >= 0");
  return bad;
}

RunSpec parse_config(std::string_view text) {
  RunSpec spec = parse_config_unchecked(text);
  spec.resolve();
  if (auto bad = validate(spec); !bad.empty()) throw ValidationError(std::move(bad));
  return spec;
}

RunSpec load_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunSpec &spec) {
  const ModelParams &p = spec.params;
  std::ostringstream out;
  out << "C_a = " << format_real(p.morse.C_a) << '\n'
      << "C_r = " << format_real(p.morse.C_r) << '\n'
      << "l_a = " << format_real(p.morse.l_a) << '\n'
      << "l_r = " << format_real(p.morse.l_r) << '\n'
      << "sigma = " << format_real(p.sigma) << '\n'
      << "v_d_x = " << format_real(p.v_d.x) << '\n'
      << "v_d_y = " << format_real(p.v_d.y) << '\n'
      << "mass_weight = " << format_real(p.mass_weight) << '\n'
      << "n = " << spec.sim.n_particles << '\n'
      << "dt = " << format_real(spec.sim.dt) << '\n'
      << "t_final = " << format_real(spec.sim.t_final) << '\n'
      << "record_stride = " << spec.sim.record_stride << '\n'
      << "seed = " << spec.sim.seed << '\n'
      << "d_floor = " << format_real(spec.d_floor) << '\n';
  return out.str();
}

}  // namespace crowd
