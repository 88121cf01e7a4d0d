#include "enantiosim/esst.hpp"
#include "enantiosim/presets.hpp"

#include <doctest.h>

#include <cmath>

using namespace enantiosim;

namespace {

double final_d(const EsstScenario& s) { return fidelity_D(run_esst(s)); }

EsstScenario effective_point(QShape q, double ratio, Model model) {
  const double omega = 10.0;
  const double delta = ratio * omega;
  const auto sol = solve_area_conditions(PsShape::kCosRamp, q, omega, 1.0, delta, 0, 0);
  return scenario_from_solution(sol, model, delta);
}

}  // namespace

TEST_CASE("Q waveforms all separate the enantiomers in rwa3") {
  for (QShape q : {QShape::kDelayedCosRamp, QShape::kGaussian, QShape::kCosSquared}) {
    INFO(to_string(q));
    const EsstResult r = run_esst(fig3_scenario(q));
    CHECK(r.p3_right() >= 0.99);
    CHECK(r.p3_left() <= 0.01);
    CHECK(excited_enantiomer(r) == Handedness::kRight);
    CHECK(r.distinction.back() == doctest::Approx(std::abs(r.p3_left() - r.p3_right())));
  }
}

TEST_CASE("populations stay normalized") {
  const EsstResult r = run_esst(fig3_scenario(QShape::kGaussian));
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    double l = 0.0;
    double rr = 0.0;
    for (int i = 0; i < 4; ++i) {
      l += r.populations_left[k][i];
      rr += r.populations_right[k][i];
    }
    CHECK(std::abs(l - 1.0) < 1e-9);
    CHECK(std::abs(rr - 1.0) < 1e-9);
  }
  CHECK(r.times.front() == 0.0);
  CHECK(r.times.back() == doctest::Approx(r.info.t_end));
}

TEST_CASE("lab-frame run at dt = 50 ns") {
  const EsstResult r = run_esst(fig5_scenario());
  CHECK(std::abs(fidelity_D(r) - 0.993) <= 0.003);
  CHECK(r.info.density_matrix);
}

TEST_CASE("shifting phi_q by pi swaps the excited enantiomer") {
  const EsstScenario s = fig3_scenario(QShape::kGaussian);
  const EsstResult a = phase_switch(s, 0.0, 0.0, 0.0);
  const EsstResult b = phase_switch(s, 0.0, kPi, 0.0);
  CHECK(excited_enantiomer(a) != excited_enantiomer(b));
  CHECK(std::abs(fidelity_D(a) - fidelity_D(b)) < 1e-6);
  CHECK(interference_index(0.0, kPi, 0.0) == 1);
  CHECK(interference_index(0.3, 0.3, 0.0) == 0);
}

TEST_CASE("D depends on phases only through phi_q - phi_p + phi_s") {
  const EsstScenario s = fig3_scenario(QShape::kCosSquared);
  const double ref = fidelity_D(phase_switch(s, 0.0, 0.0, 0.0));
  CHECK(std::abs(fidelity_D(phase_switch(s, 0.7, 1.2, -0.5)) - ref) < 1e-6);
  CHECK(std::abs(fidelity_D(phase_switch(s, -1.1, 0.0, -1.1)) - ref) < 1e-6);
  CHECK(std::abs(fidelity_D(phase_switch(s, 2.0, 2.0 + 2.0 * kPi, 0.0)) - ref) < 1e-6);
  CHECK_THROWS_WITH_AS(phase_switch(s, 0.0, 0.4, 0.0), doctest::Contains("not a multiple of pi"), ConfigError);
}

TEST_CASE("effective two-level model tracks rwa3 far detuned") {
  for (double ratio : {20.0, 50.0}) {
    const EsstResult full = run_esst(effective_point(QShape::kGaussian, ratio, Model::kRwa3));
    const EsstResult eff = run_esst(effective_point(QShape::kGaussian, ratio, Model::kEffective));
    CHECK(std::abs(full.p3_left() - eff.p3_left()) < 0.01);
    CHECK(std::abs(full.p3_right() - eff.p3_right()) < 0.01);
    CHECK(eff.populations_left.back()[kLevel2] == 0.0);
  }
}

TEST_CASE("halving the integrator step leaves D unchanged") {
  EsstScenario s = fig3_scenario(QShape::kDelayedCosRamp);
  const double h = default_max_step(s);
  s.max_step = h;
  const double d1 = final_d(s);
  s.max_step = h / 2.0;
  CHECK(std::abs(final_d(s) - d1) < 1e-7);
}

TEST_CASE("noisy ensembles are reproducible and thread independent") {
  EsstScenario s = fig6_scenario(Fig6Noise::kBoth);
  s.model = Model::kRwa3;
  s.initial_populations.resize(3);
  const auto a = run_ensemble(s, {.threads = 1, .realizations = 4});
  const auto b = run_ensemble(s, {.threads = 3, .realizations = 4});
  CHECK(a.final_d == b.final_d);
  CHECK(a.seeds == b.seeds);
  CHECK(a.final_d[0] != a.final_d[1]);
  EsstScenario other = s;
  reseed(other, 99);
  CHECK(run_ensemble(other, {.threads = 1, .realizations = 1}).final_d[0] != a.final_d[0]);
}

TEST_CASE("both enantiomers see the same noisy waveform") {
  EsstScenario s = fig6_scenario(Fig6Noise::kAwgn);
  const auto driven = driven_envelopes(s);
  const auto again = driven_envelopes(s);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(driven[i].is_schedule());
    CHECK(std::get<PiecewiseConstantPulse>(driven[i].shape()).schedule ==
          std::get<PiecewiseConstantPulse>(again[i].shape()).schedule);
  }
  s.model = Model::kRwa3;
  s.initial_populations.resize(3);
  const EsstResult r = run_esst(s);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::get<PiecewiseConstantPulse>(r.driven[i].shape()).schedule ==
          std::get<PiecewiseConstantPulse>(driven[i].shape()).schedule);
  }
}

TEST_CASE("two-photon transfer sweep") {
  const std::vector<double> ratios{2.5, 4.0, 10.0};
  const auto shaped = sweep_two_photon_transfer(PsShape::kCosRamp, ratios);
  const auto square = sweep_two_photon_transfer(PsShape::kSquare, ratios);
  const auto p3 = shaped.values("P3");
  CHECK(p3[0] >= 0.99);
  // Independent DOP853 integration of the same Hamiltonian.
  CHECK(std::abs(p3[1] - 0.998857910) < 1e-6);
  CHECK(square.values("P3")[2] >= 0.98);
  CHECK(shaped.values("ratio") == ratios);
  const std::vector<double> beyond{4.25, 5.0};
  const auto above = sweep_two_photon_transfer(PsShape::kCosRamp, beyond).values("P3");
  CHECK(std::abs(above[0] - 0.999092384) < 1e-6);
  CHECK(above[1] > 0.999);
}

TEST_CASE("frequency deviation sweep peaks at zero") {
  EsstScenario s = fig3_scenario(QShape::kGaussian);
  const std::vector<double> devs{-0.5, 0.0, 0.5};
  const auto t = sweep_frequency_deviation(s, FieldRole::kQ, devs, {.threads = 2, .realizations = 1});
  const auto d = t.values("D_mean");
  CHECK(d[1] > d[0]);
  CHECK(d[1] > d[2]);
  CHECK(t.values("D_std") == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("lifetimes reduce D and rwa3 ignores channels into |4>") {
  EsstScenario s = fig3_scenario(QShape::kGaussian);
  const double ideal = final_d(s);
  s.lifetimes = Lifetimes{1.0, 20.0};
  const EsstResult r = run_esst(s);
  CHECK(r.info.density_matrix);
  CHECK(fidelity_D(r) < ideal);
  double total = 0.0;
  for (int i = 0; i < 3; ++i) total += r.populations_left.back()[i];
  CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("scenario validation") {
  EsstScenario s = fig3_scenario(QShape::kGaussian);
  s.noise[0].push_back({.kind = NoiseKind::kAwgn, .snr_db = 10.0});
  CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("resolution"), ConfigError);

  EsstScenario pops = fig3_scenario(QShape::kGaussian);
  pops.initial_populations = {0.5, 0.4, 0.0};
  CHECK_THROWS_AS(pops.validate(), ConfigError);

  EsstScenario four = fig3_scenario(QShape::kGaussian);
  four.initial_populations = {0.9, 0.0, 0.0, 0.1};
  CHECK_THROWS_AS(four.validate(), ConfigError);

  EsstScenario short_run = fig3_scenario(QShape::kGaussian);
  short_run.duration *= 0.5;
  CHECK_THROWS_AS(short_run.validate(), ConfigError);

  CHECK_THROWS_AS(sweep_lifetimes(fig3_scenario(QShape::kGaussian), std::vector<double>{5.0, 1.0},
                                  std::vector<double>{1.0}),
                  ConfigError);
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  std::vector<int> hits(50, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 50);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw NumericalError("boom");
                               }),
                  NumericalError);
}
