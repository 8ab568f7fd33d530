#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "crowd/config.hpp"
#include "crowd/output.hpp"
#include "csv_reader.hpp"

using namespace crowd;

namespace {

bool mentions(const ValidationError &e, const std::string &name) {
  const auto &v = e.violations();
  return std::find(v.begin(), v.end(), name) != v.end();
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("empty config yields the documented defaults") {
  const RunSpec s = parse_config("");
  CHECK(s.params.morse.C_a == 1.0);
  CHECK(s.params.morse.C_r == 2.0);
  CHECK(s.params.morse.l_a == 2.0);
  CHECK(s.params.morse.l_r == 0.5);
  CHECK(s.params.sigma == 0.5);
  CHECK(s.params.v_d == Vec2{1.0, 0.0});
  CHECK(s.sim.n_particles == 25);
  CHECK(s.sim.dt == 1e-3);
  CHECK(s.sim.t_final == 5.0);
  CHECK(s.sim.record_stride == 10);
  CHECK(s.sim.seed == 0);
  CHECK(s.d_floor == 1e-4);
  CHECK(s.params.mass_weight == doctest::Approx(1.0 / 25.0).epsilon(1e-15));
}

TEST_CASE("constraint violations are reported by name") {
  try {
    parse_config("sigma = 1.5\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError &e) {
    CHECK(mentions(e, "sigma in [0,1]"));
  }
  try {
    parse_config("l_r = 3.0");
    FAIL("expected ValidationError");
  } catch (const ValidationError &e) {
    CHECK(mentions(e, "l_r < l_a"));
  }
  try {
    parse_config("sigma = 7\nl_r = 3\nn = 1\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError &e) {
    CHECK(e.violations().size() == 3);
  }
}

TEST_CASE("syntax errors carry the line number") {
  auto line_of = [](std::string_view text) {
    try {
      parse_config(text);
    } catch (const ConfigError &e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("sigma = 0.5\n# comment\nbogus = 1\n") == 3);
  CHECK(line_of("sigma 0.5\n") == 1);
  CHECK(line_of("\n\nn = 2.5\n") == 3);
  CHECK(line_of("dt = fast\n") == 1);
  CHECK(line_of("seed = -1\n") == 1);
  CHECK(line_of("sigma = 0.5\nsigma = 0.6\n") == 2);
  CHECK(line_of("sigma =\n") == 1);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const RunSpec s = parse_config("# header\n\n  sigma=0.25   # trailing\n\tn = 10\r\nseed = 18446744073709551615\n");
  CHECK(s.params.sigma == 0.25);
  CHECK(s.sim.n_particles == 10);
  CHECK(s.sim.seed == 18446744073709551615ULL);
  CHECK(s.params.mass_weight == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("explicit mass weight is kept") {
  const RunSpec s = parse_config("n = 10\nmass_weight = 1\n");
  CHECK(s.params.mass_weight == 1.0);
}

TEST_CASE("config emission round-trips the parameter set") {
  Rng rng(99);
  for (int k = 0; k < 200; ++k) {
    RunSpec s;
    s.params.morse.l_r = rng.uniform(0.1, 1.0);
    s.params.morse.l_a = s.params.morse.l_r + rng.uniform(0.01, 3.0);
    s.params.morse.C_a = rng.uniform(0.1, 3.0);
    s.params.morse.C_r = s.params.morse.C_a * s.params.morse.l_r / s.params.morse.l_a * rng.uniform(1.01, 5.0);
    s.params.sigma = rng.uniform();
    s.params.v_d = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    s.sim.n_particles = 2 + static_cast<std::size_t>(rng.uniform() * 100);
    s.sim.dt = rng.uniform(1e-5, 1e-2);
    s.sim.t_final = s.sim.dt * (1 + rng.uniform() * 1000);
    s.sim.record_stride = 1 + static_cast<std::size_t>(rng.uniform() * 50);
    s.sim.seed = static_cast<std::uint64_t>(rng.uniform() * 1e18);
    s.d_floor = rng.uniform() * 1e-3;
    s.mass_weight = rng.uniform(1e-3, 1.0);
    s.resolve();
    const RunSpec back = parse_config(emit_config(s));
    CHECK(back.params == s.params);
    CHECK(back.sim == s.sim);
    CHECK(back.d_floor == s.d_floor);
  }
}

TEST_CASE("run CSV layout") {
  ModelParams p;
  SimConfig c;
  c.t_final = c.dt;
  c.record_stride = 1;
  const DiagnosticsSeries series = diagnose(simulate(c, p), p);
  const CsvTable t = parse_csv(format_run_csv(series, kDefaultDFloor));
  CHECK(t.header == std::vector<std::string>{"t", "S", "D", "s_s", "s_a", "dSdt_num", "sa_over_D"});
  CHECK(t.rows.size() == 2);
  CHECK(t.rows[0][2] == series.samples[0].D);  // 17 digits round-trip exactly
}

TEST_CASE("run CSV content") {
  ModelParams p;
  SimConfig c;
  c.t_final = 0.3;

  SUBCASE("isotropic corrector column is zero") {
    p.sigma = 1.0;
    const CsvTable t = parse_csv(format_run_csv(diagnose(simulate(c, p), p), kDefaultDFloor));
    for (const auto &row : t.rows) CHECK(row[4] == 0.0);
  }
  SUBCASE("derivative column is reproducible from the (t, S) columns") {
    const CsvTable t = parse_csv(format_run_csv(diagnose(simulate(c, p), p), kDefaultDFloor));
    std::vector<double> ts, S;
    for (const auto &row : t.rows) {
      ts.push_back(row[0]);
      S.push_back(row[1]);
    }
    const auto d = numeric_dSdt(ts, S);
    for (std::size_t k = 0; k < d.size(); ++k) CHECK(std::abs(d[k] - t.rows[k][5]) <= 1e-12);
  }
  SUBCASE("ratio cell is empty below the floor") {
    const DiagnosticsSeries series = diagnose(simulate(c, p), p);
    const CsvTable t = parse_csv(format_run_csv(series, 1e6));
    for (const auto &raw : t.raw) {
      REQUIRE(raw.size() == 7);
      CHECK(raw[6].empty());
    }
  }
}

TEST_CASE("ensemble CSV content") {
  ModelParams p;
  SimConfig c;
  c.t_final = 0.2;

  SUBCASE("one run: min = mean = max") {
    const CsvTable t = parse_csv(format_ensemble_csv(run_ensemble(1, c, p).stats));
    CHECK(t.header == std::vector<std::string>{"t", "Dsa_min", "Dsa_mean", "Dsa_max", "S_mean", "S_min",
                                               "S_max", "limit_spread"});
    for (const auto &r : t.rows) {
      CHECK(r[1] == r[2]);
      CHECK(r[2] == r[3]);
      CHECK(r[4] == r[5]);
      CHECK(r[5] == r[6]);
    }
  }
  SUBCASE("rows are ordered envelopes with nonnegative spread") {
    const CsvTable t = parse_csv(format_ensemble_csv(run_ensemble(6, c, p).stats));
    for (const auto &r : t.rows) {
      CHECK(r[1] <= r[2]);
      CHECK(r[2] <= r[3]);
      CHECK(r[5] <= r[4]);
      CHECK(r[4] <= r[6]);
      CHECK(r[7] >= 0.0);
    }
  }
}

TEST_CASE("metadata lists everything needed to re-run") {
  RunSpec s = parse_config("sigma = 0.75\nseed = 12\n");
  const std::string text = RunMetadata::describe(s, "crowd simulate").text();
  for (const char *key : {"C_a = ", "C_r = ", "l_a = ", "l_r = ", "sigma = 0.75", "v_d_x = ", "v_d_y = ",
                          "mass_weight = ", "n = 25", "dt = ", "t_final = ", "record_stride = ", "seed = 12",
                          "d_floor = ", "scheme = ", "generator = ", "version = "}) {
    CHECK(text.find(key) != std::string::npos);
  }
}

TEST_CASE("file emission") {
  const auto dir = std::filesystem::temp_directory_path() / "crowd_test_config_output";
  std::filesystem::create_directories(dir);
  ModelParams p;
  SimConfig c;
  c.t_final = 0.05;
  const DiagnosticsSeries series = diagnose(simulate(c, p), p);
  emit_run_csv(series, kDefaultDFloor, dir / "run.csv");
  CHECK(slurp(dir / "run.csv") == format_run_csv(series, kDefaultDFloor));
  CHECK_THROWS_AS(emit_run_csv(series, kDefaultDFloor, dir / "missing" / "run.csv"), std::runtime_error);
  CHECK(run_plot_scripts().size() == 4);
  CHECK(ensemble_plot_scripts().size() == 2);
  std::filesystem::remove_all(dir);
}
