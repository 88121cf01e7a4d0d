#include "enantiosim/m3wm.hpp"
#include "enantiosim/presets.hpp"

#include <doctest.h>

#include <cmath>

using namespace enantiosim;

namespace {

double final_coherence(const M3wmConfig& c) {
  return std::abs(coherence(prepare_coherence(c, QuantumState::basis(3, kM3wmA)), kM3wmA, kM3wmC));
}

// Resonant ladder with a full bright-state cycle: |a> picks up
// (Omega_t^2 - Omega_d^2) / Omega^2, |c> picks up -2 Omega_d Omega_t / Omega^2.
double raman_oracle(double r) { return 2.0 * r * std::abs(1.0 - r * r) / std::pow(1.0 + r * r, 2); }

}  // namespace

TEST_CASE("every method prepares |rho_ac| = 1/2") {
  for (auto m : {M3wmMethod::kDriveThenTwist, M3wmMethod::kEffectiveTwoPhoton, M3wmMethod::kResonantRaman}) {
    INFO(to_string(m));
    const M3wmConfig c = default_m3wm_config(m);
    CHECK_NOTHROW(c.validate());
    CHECK(std::abs(final_coherence(c) - 0.5) <= 5e-3);
  }
}

TEST_CASE("drive then twist oracle") {
  const M3wmConfig c = default_m3wm_config(M3wmMethod::kDriveThenTwist, 3.0);
  CHECK(c.drive_duration == doctest::Approx(kPi / (2.0 * c.drive_rabi)));
  CHECK(c.twist_duration == doctest::Approx(kPi / c.twist_rabi));
  const QuantumState st = prepare_coherence(c, QuantumState::basis(3, kM3wmA));
  CHECK(std::abs(population(st, kM3wmA) - 0.5) < 1e-8);
  CHECK(population(st, kM3wmB) < 1e-8);
  CHECK(std::abs(population(st, kM3wmC) - 0.5) < 1e-8);
}

TEST_CASE("raman scan follows the bright/dark oracle and peaks at sqrt 2 + 1") {
  std::vector<double> ratios;
  for (double r = 1.5; r <= 3.5 + 1e-9; r += 0.05) ratios.push_back(r);
  const auto scan = scan_raman_ratio(ratios);
  for (std::size_t i = 0; i < ratios.size(); ++i) CHECK(std::abs(scan[i] - raman_oracle(ratios[i])) < 1e-6);
  const auto best = std::max_element(scan.begin(), scan.end()) - scan.begin();
  CHECK(std::abs(ratios[static_cast<std::size_t>(best)] - kRamanRatio) <= 0.05 / 2.0 + 1e-12);
  CHECK(raman_oracle(kRamanRatio) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("effective method leaves little population in |b>") {
  const M3wmConfig c = default_m3wm_config(M3wmMethod::kEffectiveTwoPhoton);
  CHECK(c.detuning >= 10.0 * std::max(c.drive_rabi, c.twist_rabi));
  const QuantumState st = prepare_coherence(c, QuantumState::basis(3, kM3wmA));
  CHECK(population(st, kM3wmB) < 0.01);
}

TEST_CASE("raman is faster than the effective method") {
  const double raman = default_m3wm_config(M3wmMethod::kResonantRaman).total_duration();
  const double eff = default_m3wm_config(M3wmMethod::kEffectiveTwoPhoton).total_duration();
  CHECK(raman < eff);
}

TEST_CASE("method constraints report the measured value") {
  M3wmConfig raman = default_m3wm_config(M3wmMethod::kResonantRaman);
  raman.drive_rabi = 2.0 * raman.twist_rabi;
  CHECK_THROWS_WITH_AS(raman.validate(), doctest::Contains("sqrt(2) + 1"), ConfigError);
  M3wmConfig eff = default_m3wm_config(M3wmMethod::kEffectiveTwoPhoton);
  eff.detuning = 5.0;
  eff.drive_duration = eff.twist_duration = 0.0;
  CHECK_THROWS_AS(eff.resolved().validate(), ConfigError);
  M3wmConfig dtt = default_m3wm_config(M3wmMethod::kDriveThenTwist);
  dtt.twist_duration *= 1.1;
  CHECK_THROWS_AS(dtt.validate(), ConfigError);
  CHECK_THROWS_AS(parse_m3wm_method("adiabatic"), ConfigError);
}

TEST_CASE("listen signal and ee estimate are linear") {
  ListenSignalModel m{.ee = 0.4, .triple_product_sign = 1};
  ListenSignalModel flipped = m;
  flipped.triple_product_sign = -1;
  const double t = 0.013;
  CHECK(listen_signal(m, t) == doctest::Approx(-listen_signal(flipped, t)));
  ListenSignalModel racemic = m;
  racemic.ee = 0.0;
  CHECK(listen_signal(racemic, t) == 0.0);
  ListenSignalModel doubled = m;
  doubled.ee = 0.8;
  CHECK(listen_signal(doubled, t) == doctest::Approx(2.0 * listen_signal(m, t)));
  CHECK(estimate_ee(0.1, 0.2, 0.6, 1).ee == doctest::Approx(0.3));
  CHECK(estimate_ee(-0.1, 0.2, 0.6, -1).ee == doctest::Approx(0.3));
  const auto over = estimate_ee(0.5, 0.2, 1.0, 1);
  CHECK(over.inconsistent);
  CHECK(over.ee == 1.0);
  CHECK_THROWS_AS(estimate_ee(0.1, 0.0, 1.0, 1), ConfigError);
  ListenSignalModel bad = m;
  bad.triple_product_sign = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("ideal pipeline amplitude oracle") {
  const M3wmConfig c = default_m3wm_config(M3wmMethod::kResonantRaman);
  // |tp| 2 |rho| (x_L P3L - x_R P3R), racemic, R excited.
  CHECK(ideal_pipeline_amplitude(c, Handedness::kRight, 0.0) == doctest::Approx(-0.384 * 0.5).epsilon(1e-8));
  CHECK(ideal_pipeline_amplitude(c, Handedness::kLeft, 0.0) == doctest::Approx(0.384 * 0.5).epsilon(1e-8));
  CHECK(ideal_pipeline_amplitude(c, Handedness::kRight, 1.0) == doctest::Approx(-0.384).epsilon(1e-8));
}

TEST_CASE("racemic pipeline gives a nonzero signal close to ideal") {
  const M3wmConfig c = default_m3wm_config(M3wmMethod::kDriveThenTwist);
  const PipelineResult p = run_pipeline(fig3_scenario(QShape::kGaussian), c, 0.0);
  CHECK(p.excited == Handedness::kRight);
  CHECK(std::abs(p.amplitude) > 0.1);
  const double ideal = ideal_pipeline_amplitude(c, p.excited, 0.0);
  CHECK(std::abs(p.amplitude - ideal) < 0.01 * std::abs(ideal));
  CHECK(std::abs(p.coherence - 0.5) < 5e-3);
}

TEST_CASE("pipeline refuses a poor ESST") {
  EsstScenario s = fig3_scenario(QShape::kGaussian);
  s.fields.q.phase = kPi / 2.0;
  s.fields.p.phase = 0.0;
  s.fields.s.phase = kPi / 2.0;  // combination pi, still a valid switch
  CHECK_NOTHROW(run_pipeline(s, default_m3wm_config(M3wmMethod::kDriveThenTwist), 0.0, 0.9));
  EsstScenario weak = fig3_scenario(QShape::kGaussian);
  weak.fields.q.envelope = Envelope::off();
  CHECK_THROWS_AS(run_pipeline(weak, default_m3wm_config(M3wmMethod::kDriveThenTwist), 0.0, 0.9), ConfigError);
}
