#include "enantiosim/pulse.hpp"
#include "enantiosim/random.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace enantiosim;

namespace {

// Composite Simpson, independent of the library's quadrature.
template <class F>
double simpson(F f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("closed-form pulse areas") {
  CHECK(pulse_area(Envelope(SquarePulse{2.5, 1.0, 3.0}), 0.0, 10.0) == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(pulse_area(Envelope(CosRampPulse{4.0, 3.0}), 0.0, 3.0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(pulse_area(Envelope(CosSquaredPulse{2.0, 5.0}), 0.0, 5.0) ==
        doctest::Approx(3.0 * 2.0 * 5.0 / 8.0).epsilon(1e-12));
  CHECK(pulse_area(Envelope(GaussianPulse{1.5, 0.4, 0.2}), 0.0, 4.0) ==
        doctest::Approx(1.5 * 0.4 * std::sqrt(kPi) * std::erf(3.0)).epsilon(1e-12));
  CHECK(pulse_area(Envelope(DelayedCosRampPulse{1.0, 2.0, 0.7}), 0.0, 0.7) == doctest::Approx(0.0));
}

TEST_CASE("effective area matches direct quadrature") {
  const Envelope p(CosRampPulse{12.0, 3.0});
  const Envelope s(CosRampPulse{9.0, 3.0});
  const double direct = simpson([&](double t) { return p(t) * s(t) / (2.0 * 60.0); }, 0.0, 3.0);
  CHECK(effective_area(p, s, 60.0, 0.0, 3.0) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("T0 for (12, 60) rad/us") {
  const auto sol = solve_area_conditions(PsShape::kCosRamp, QShape::kGaussian, 12.0, 2.0, 60.0, 0, 0);
  CHECK(sol.ps_duration == doctest::Approx(8.0 * kPi * 60.0 / (3.0 * 144.0)).epsilon(1e-14));
  CHECK(std::abs(sol.ps_duration - 3.4907) < 5e-5);
  CHECK(sol.total_duration >= sol.ps_duration);
}

TEST_CASE("two-photon transfer durations") {
  CHECK(two_photon_transfer_duration(PsShape::kSquare, 1.0, 10.0) == doctest::Approx(2.0 * kPi * 10.0));
  CHECK(two_photon_transfer_duration(PsShape::kCosRamp, 2.0, 10.0) ==
        doctest::Approx(16.0 * kPi * 10.0 / (3.0 * 4.0)));
}

TEST_CASE("area solutions re-integrate to the conditions for random draws") {
  PortableRng rng(77);
  const PsShape ps_shapes[2] = {PsShape::kSquare, PsShape::kCosRamp};
  const QShape q_shapes[3] = {QShape::kDelayedCosRamp, QShape::kGaussian, QShape::kCosSquared};
  for (int draw = 0; draw < 100; ++draw) {
    const PsShape ps = ps_shapes[static_cast<int>(rng.uniform01() * 2)];
    const QShape q = q_shapes[static_cast<int>(rng.uniform01() * 3)];
    const double omega = rng.uniform(1.0, 20.0);
    const double delta = omega * rng.uniform(5.0, 50.0);
    const double q_amp = rng.uniform(0.2, 5.0);
    const int n_l = static_cast<int>(rng.uniform01() * 2);
    const int n_r = n_l + static_cast<int>(rng.uniform01() * 2);
    const auto sol = solve_area_conditions(ps, q, omega, q_amp, delta, n_l, n_r);
    const auto res = area_residuals(sol.p_envelope(), sol.q_envelope(), sol.s_envelope(), delta,
                                    sol.total_duration, n_l, n_r);
    INFO("draw " << draw);
    CHECK(std::abs(res.left) < 1e-6);
    CHECK(std::abs(res.right) < 1e-6);
    // Independent check of the Q area.
    const double q_area = simpson([&](double t) { return sol.q_envelope()(t); }, 0.0, sol.total_duration, 200000);
    CHECK(std::abs(q_area - (n_l + n_r + 0.5) * kPi) < 1e-6);
  }
}

TEST_CASE("unsolvable interference numbers are rejected") {
  CHECK_THROWS_AS(solve_area_conditions(PsShape::kCosRamp, QShape::kGaussian, 10.0, 1.0, 50.0, 2, 0),
                  ConfigError);
  CHECK_THROWS_AS(solve_area_conditions(PsShape::kCosRamp, QShape::kNone, 10.0, 1.0, 50.0, 0, 0),
                  ConfigError);
  CHECK_THROWS_AS(solve_area_conditions(PsShape::kCosRamp, QShape::kGaussian, -1.0, 1.0, 50.0, 0, 0),
                  ConfigError);
}

TEST_CASE("discretization samples bin midpoints") {
  const Envelope e(CosRampPulse{2.0, 1.0});
  const auto sched = discretize(e, 0.1, 1.0);
  REQUIRE(sched.amplitudes.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(sched.amplitudes[i] == e((i + 0.5) * 0.1));
  CHECK(sched.value(0.25) == sched.amplitudes[2]);
  CHECK(sched.value(1.0) == sched.amplitudes[9]);
  CHECK(sched.value(1.01) == 0.0);
  // Midpoint rule error for a smooth pulse.
  CHECK(std::abs(pulse_area(sched, 0.0, 1.0) - 1.0) < 0.01);
}

TEST_CASE("fluctuation noise is unbiased and bounded") {
  PulseSchedule s{0.0, 0.01, std::vector<double>(8, 2.0)};
  double sum = 0.0;
  std::size_t n = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto noisy = apply_noise(s, {.kind = NoiseKind::kUniformFluctuation, .eta = 0.5, .seed = seed});
    for (double a : noisy.amplitudes) {
      CHECK(a >= 1.0);
      CHECK(a <= 3.0);
      sum += a;
      ++n;
    }
  }
  // Uniform on [1, 3]: sd 1/sqrt(3).
  const double mean = sum / static_cast<double>(n);
  CHECK(std::abs(mean - 2.0) < 4.0 * (1.0 / std::sqrt(3.0)) / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("AWGN has zero mean and variance set by the measured power") {
  PulseSchedule s{0.0, 0.01, {0.0, 2.0, 2.0, 2.0, 2.0, 0.0}};
  double sum = 0.0;
  double sq = 0.0;
  std::size_t n = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto noisy = apply_noise(s, {.kind = NoiseKind::kAwgn, .snr_db = 10.0, .seed = seed});
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
      const double d = noisy.amplitudes[i] - s.amplitudes[i];
      sum += d;
      sq += d * d;
      ++n;
    }
  }
  const double var = 4.0 / 10.0;
  const double mean = sum / static_cast<double>(n);
  CHECK(std::abs(mean) < 4.0 * std::sqrt(var / static_cast<double>(n)));
  CHECK(sq / static_cast<double>(n) == doctest::Approx(var).epsilon(0.03));
}

TEST_CASE("AWGN reference power overrides the measurement") {
  PulseSchedule s{0.0, 0.01, std::vector<double>(4000, 3.0)};
  const auto noisy = apply_noise(s, {.kind = NoiseKind::kAwgn, .snr_db = 0.0, .reference_power = 1.0, .seed = 4});
  double sq = 0.0;
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) sq += std::pow(noisy.amplitudes[i] - 3.0, 2);
  CHECK(sq / 4000.0 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("noise is reproducible per seed") {
  PulseSchedule s{0.0, 0.05, {1.0, 2.0, 3.0}};
  const NoiseSpec a{.kind = NoiseKind::kAwgn, .snr_db = 10.0, .seed = 11};
  CHECK(apply_noise(s, a) == apply_noise(s, a));
  NoiseSpec b = a;
  b.seed = 12;
  CHECK_FALSE(apply_noise(s, a) == apply_noise(s, b));
}

TEST_CASE("derived seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t f = 0; f < 3; ++f) {
    for (std::uint64_t i = 0; i < 50; ++i) seen.insert(derive_seed(2021, f, i));
  }
  CHECK(seen.size() == 150);
  CHECK(derive_seed(5, 1, 2) == derive_seed(5, 1, 2));
  PortableRng r1(9), r2(9);
  for (int i = 0; i < 10; ++i) CHECK(r1.normal() == r2.normal());
}

TEST_CASE("noise parameters are validated") {
  NoiseSpec bad{.kind = NoiseKind::kUniformFluctuation, .eta = 1.5};
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("[0, 1]"), ConfigError);
  NoiseSpec nan_snr{.kind = NoiseKind::kAwgn, .snr_db = std::nan("")};
  CHECK_THROWS_AS(nan_snr.validate(), ConfigError);
  NoiseSpec neg_ref{.kind = NoiseKind::kAwgn, .reference_power = -1.0};
  CHECK_THROWS_AS(neg_ref.validate(), ConfigError);
  CHECK_THROWS_AS(Envelope(GaussianPulse{1.0, 0.0, 0.0}), ConfigError);
  CHECK_THROWS_AS(discretize(Envelope(CosRampPulse{1.0, 2.0}), 0.1, 1.0), ConfigError);
}
