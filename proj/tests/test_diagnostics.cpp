#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "crowd/diagnostics.hpp"
#include "crowd/invariant_suite.hpp"
#include "crowd/kinetics.hpp"

using namespace crowd;

namespace {

ModelParams pair_params(double sigma) {
  ModelParams p;
  p.sigma = sigma;
  p.v_d = {1.0, 0.0};
  p.mass_weight = 0.5;
  return p;
}

ParticleState pair_state(double r) { return {{{0.0, 0.0}, {r, 0.0}}}; }

ModelParams no_interactions() {
  ModelParams p;
  p.morse.C_a = 0.0;
  p.morse.C_r = 0.0;
  return p;
}

}  // namespace

TEST_CASE("barycentric velocity") {
  Rng rng(1);
  const ParticleState s = random_state(rng, 10);

  SUBCASE("equals v_d without interactions") {
    const ModelParams p = no_interactions();
    CHECK(barycentric_velocity(s, p) == p.v_d);
  }
  SUBCASE("two-particle closed form") {
    // v_0 = v_d + (1/4)(sigma - 1) W'(r) e_x with m = 1/2
    for (double sigma : {0.0, 0.5, 1.0}) {
      const ModelParams p = pair_params(sigma);
      const double wp = morse_w_prime(0.8, p.morse);
      const Vec2 v0 = barycentric_velocity(pair_state(0.8), p);
      CHECK(v0.x == doctest::Approx(1.0 + 0.25 * (sigma - 1.0) * wp).epsilon(1e-14));
      CHECK(v0.y == 0.0);
    }
  }
  SUBCASE("peculiar velocities carry no net momentum") {
    for (int k = 0; k < 100; ++k) {
      ModelParams p;
      p.sigma = rng.uniform();
      const ParticleState st = random_state(rng, 2 + k % 24);
      p.mass_weight = 1.0 / static_cast<double>(st.size());
      Vec2 sum{};
      for (const Vec2 &w : peculiar_velocities(st, p)) sum += p.mass_weight * w;
      CHECK(std::abs(sum.x) < 1e-13);
      CHECK(std::abs(sum.y) < 1e-13);
    }
  }
}

TEST_CASE("peculiar velocities") {
  Rng rng(2);
  const ParticleState s = random_state(rng, 8);

  SUBCASE("vanish under free streaming") {
    for (const Vec2 &w : peculiar_velocities(s, no_interactions())) CHECK(norm(w) == 0.0);
  }
  SUBCASE("independent of the desired speed along a fixed axis") {
    ModelParams p;
    p.v_d = {1.0, 0.5};
    ModelParams q = p;
    q.v_d = 3.0 * p.v_d;  // same direction, so g~ is unchanged
    const auto a = peculiar_velocities(s, p);
    const auto b = peculiar_velocities(s, q);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i].x - b[i].x) < 1e-14);
      CHECK(std::abs(a[i].y - b[i].y) < 1e-14);
    }
  }
  SUBCASE("two equal weights give opposite peculiar velocities") {
    const ModelParams p = pair_params(0.5);
    const auto w = peculiar_velocities(pair_state(0.6), p);
    const double wp = morse_w_prime(0.6, p.morse);
    CHECK(w[0].x == doctest::Approx(-0.25 * 1.5 * wp).epsilon(1e-14));
    CHECK(w[1].x == doctest::Approx(-w[0].x).epsilon(1e-15));
  }
}

TEST_CASE("dissipation") {
  Rng rng(3);
  SUBCASE("zero under free streaming") {
    CHECK(dissipation(random_state(rng, 12), no_interactions()) == 0.0);
  }
  SUBCASE("two-particle closed form (1+sigma)^2 W'^2 / 16") {
    for (double sigma : {0.0, 0.3, 1.0}) {
      const ModelParams p = pair_params(sigma);
      const double wp = morse_w_prime(0.9, p.morse);
      CHECK(dissipation(pair_state(0.9), p) ==
            doctest::Approx((1 + sigma) * (1 + sigma) * wp * wp / 16.0).epsilon(1e-13));
    }
  }
  SUBCASE("equals the social-velocity form and is nonnegative") {
    for (int k = 0; k < 200; ++k) {
      ModelParams p;
      p.sigma = rng.uniform();
      const ParticleState s = random_state(rng, 2 + k % 24);
      p.mass_weight = 1.0 / static_cast<double>(s.size());
      const auto vs = social_velocities(s, p);
      const auto w = peculiar_velocities(s, p);
      double via_vs = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i) via_vs += p.mass_weight * dot(vs[i], w[i]);
      const double D = dissipation(s, p);
      CHECK(D >= 0.0);
      CHECK(std::abs(D - via_vs) <= 1e-12);
    }
  }
}

TEST_CASE("entropy") {
  Rng rng(4);
  SUBCASE("pair along v_d: m^2 W(r) alpha") {
    for (double sigma : {0.0, 0.5, 1.0}) {
      const ModelParams p = pair_params(sigma);
      CHECK(entropy(pair_state(0.7), p) ==
            doctest::Approx(0.25 * morse_w(0.7, p.morse) * p.alpha()).epsilon(1e-14));
    }
  }
  SUBCASE("far-separated agents carry no entropy") {
    ModelParams p;
    const ParticleState s{{{0, 0}, {100, 0}, {0, 100}, {100, 100}}};
    CHECK(std::abs(entropy(s, p)) < 1e-9);
  }
  SUBCASE("depends on sigma only through alpha") {
    for (int k = 0; k < 100; ++k) {
      ModelParams p;
      p.sigma = rng.uniform();
      p.v_d = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      const ParticleState s = random_state(rng, 2 + k % 24);
      ModelParams iso = p;
      iso.sigma = 1.0;
      CHECK(std::abs(entropy(s, p) - p.alpha() * entropy(s, iso)) <= 1e-12);
    }
  }
  SUBCASE("bounded by M^2 (C_a + C_r) / 2") {
    for (int k = 0; k < 100; ++k) {
      ModelParams p;
      const ParticleState s = random_state(rng, 25);
      p.mass_weight = 0.04;
      CHECK(std::abs(entropy(s, p)) <= 0.5 * (p.morse.C_a + p.morse.C_r));
    }
  }
  SUBCASE("coincident pairs are skipped") {
    ModelParams p;
    PairEventLog log;
    const double S = entropy({{{0.1, 0.1}, {0.1, 0.1}, {0.5, 0.5}}}, p, &log);
    CHECK(std::isfinite(S));
    CHECK(log.size() == 1);
  }
}

TEST_CASE("production terms") {
  Rng rng(5);
  SUBCASE("isotropic weights give no corrector") {
    for (int k = 0; k < 100; ++k) {
      ModelParams p;
      p.sigma = 1.0;
      const ParticleState s = random_state(rng, 2 + k % 24);
      p.mass_weight = 1.0 / static_cast<double>(s.size());
      const ProductionTerms t = production_terms(s, p);
      CHECK(t.s_a == 0.0);
      CHECK(std::abs(t.s_s - dissipation(s, p)) <= 1e-12);
    }
  }
  SUBCASE("split reproduces the dissipation for every sigma") {
    for (int k = 0; k < 200; ++k) {
      ModelParams p;
      p.sigma = 0.25 * static_cast<double>(k % 5);
      const ParticleState s = random_state(rng, 2 + k % 24);
      p.mass_weight = 1.0 / static_cast<double>(s.size());
      const ProductionTerms t = production_terms(s, p);
      CHECK(std::abs(t.s_s + t.s_a - dissipation(s, p)) <= 1e-12);
    }
  }
  SUBCASE("two equal agents: corrector vanishes") {
    const ModelParams p = pair_params(0.5);
    const ProductionTerms t = production_terms(pair_state(0.5), p);
    CHECK(std::abs(t.s_a) < 1e-16);
    CHECK(t.s_s == doctest::Approx(dissipation(pair_state(0.5), p)).epsilon(1e-14));
  }
}

TEST_CASE("evaluate agrees with the individual functionals") {
  Rng rng(6);
  ModelParams p;
  const ParticleState s = random_state(rng, 25);
  const DiagnosticsSample d = evaluate(s, p, 0.25);
  const ProductionTerms t = production_terms(s, p);
  CHECK(d.t == 0.25);
  CHECK(d.S == entropy(s, p));
  CHECK(d.D == dissipation(s, p));
  CHECK(d.s_s == t.s_s);
  CHECK(d.s_a == t.s_a);
}

TEST_CASE("numerical time derivative") {
  std::vector<double> t;
  for (int k = 0; k <= 10; ++k) t.push_back(0.1 * k);

  SUBCASE("constant") {
    for (double v : numeric_dSdt(t, std::vector<double>(t.size(), 3.0))) CHECK(v == 0.0);
  }
  SUBCASE("linear data is differentiated exactly") {
    std::vector<double> S;
    for (double x : t) S.push_back(2.5 * x - 1.0);
    for (double v : numeric_dSdt(t, S)) CHECK(v == doctest::Approx(2.5).epsilon(1e-12));
  }
  SUBCASE("quadratic data: exact inside, O(h) at the ends") {
    std::vector<double> S;
    for (double x : t) S.push_back(x * x);
    const auto d = numeric_dSdt(t, S);
    for (std::size_t k = 1; k + 1 < t.size(); ++k) CHECK(d[k] == doctest::Approx(2 * t[k]).epsilon(1e-12));
    CHECK(d.front() == doctest::Approx(0.1).epsilon(1e-12));        // 2*0 + h
    CHECK(d.back() == doctest::Approx(2.0 - 0.1).epsilon(1e-12));   // 2*1 - h
  }
  SUBCASE("input contract") {
    CHECK_THROWS_AS(numeric_dSdt({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(numeric_dSdt({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(numeric_dSdt({0.0, 1.0}, {1.0}), std::invalid_argument);
  }
}

TEST_CASE("consistency report along a run") {
  ModelParams p;
  SimConfig c;
  c.t_final = 0.5;

  SUBCASE("isotropic: balance channel is the dissipation") {
    p.sigma = 1.0;
    const DiagnosticsSeries series = diagnose(simulate(c, p), p);
    for (const auto &s : series.samples) {
      CHECK(s.s_a == 0.0);
      CHECK(s.D - s.s_a == s.D);
    }
    const ConsistencyReport rep = consistency_report(series);
    CHECK(rep.max_algebraic_dev <= kIdentityTolerance);
  }
  SUBCASE("algebraic channels agree and the numeric one follows") {
    const ConsistencyReport rep = consistency_report(simulate(c, p), p);
    CHECK(rep.rows.size() == 51);
    CHECK(rep.max_algebraic_dev <= kIdentityTolerance);
    CHECK(rep.max_numeric_dev <= 0.1);
  }
  SUBCASE("halving the record spacing shrinks the interior error about fourfold") {
    auto interior_dev = [&](std::size_t stride) {
      SimConfig cc = c;
      cc.record_stride = stride;
      const ConsistencyReport rep = consistency_report(simulate(cc, p), p);
      double dev = 0.0;
      for (std::size_t k = 1; k + 1 < rep.rows.size(); ++k) {
        dev = std::max(dev, std::abs(rep.rows[k].dSdt_numeric - rep.rows[k].s_s));
      }
      return dev;
    };
    const double coarse = interior_dev(20);
    const double fine = interior_dev(10);
    INFO("coarse " << coarse << " fine " << fine);
    CHECK(coarse / fine > 3.0);
    CHECK(coarse / fine < 5.0);
  }
  SUBCASE("needs two records") {
    Trajectory one;
    one.times = {0.0};
    one.states = {initial_conditions(0, c)};
    CHECK_THROWS_AS(consistency_report(one, p), std::invalid_argument);
  }
}

TEST_CASE("s_a / D filter") {
  ModelParams p;
  SimConfig c;
  c.t_final = 0.3;

  SUBCASE("isotropic ratios are zero") {
    p.sigma = 1.0;
    const auto ratios = ratio_sa_over_D(diagnose(simulate(c, p), p));
    CHECK_FALSE(ratios.empty());
    for (const auto &r : ratios) CHECK(r.ratio == 0.0);
  }
  SUBCASE("a floor above every D empties the list") {
    CHECK(ratio_sa_over_D(diagnose(simulate(c, p), p), 1e6).empty());
  }
  SUBCASE("only instants with D above the floor are reported") {
    DiagnosticsSeries series;
    series.samples = {{0.0, 0, 1e-3, 0, 2e-4}, {0.1, 0, 1e-5, 0, 1e-6}, {0.2, 0, 2e-4, 0, -2e-5}};
    series.dSdt_numeric = {0, 0, 0};
    const auto r = ratio_sa_over_D(series, 1e-4);
    REQUIRE(r.size() == 2);
    CHECK(r[0].t == 0.0);
    CHECK(r[0].ratio == doctest::Approx(0.2));
    CHECK(r[1].t == 0.2);
    CHECK(r[1].ratio == doctest::Approx(-0.1));
  }
}

TEST_CASE("diagnostics are invariant under relabeling and translation") {
  Rng rng(8);
  ModelParams p;
  const ParticleState s = random_state(rng, 25);
  ParticleState moved;
  for (std::size_t i = s.size(); i-- > 0;) moved.positions.push_back(s[i] + Vec2{-7.0, 2.5});
  const DiagnosticsSample a = evaluate(s, p);
  const DiagnosticsSample b = evaluate(moved, p);
  CHECK(std::abs(a.S - b.S) <= 1e-12);
  CHECK(std::abs(a.D - b.D) <= 1e-12);
  CHECK(std::abs(a.s_s - b.s_s) <= 1e-12);
  CHECK(std::abs(a.s_a - b.s_a) <= 1e-12);
}
