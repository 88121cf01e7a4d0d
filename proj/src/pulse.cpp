#include "enantiosim/pulse.hpp"

#include "enantiosim/random.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace enantiosim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double cos_ramp(double amplitude, double period, double x) {
  if (x < 0.0 || x > period) return 0.0;
  return 0.5 * amplitude * (1.0 - std::cos(2.0 * kPi * x / period));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_positive_finite(double v, const std::string& name) {
  require(std::isfinite(v) && v > 0.0, name + " must be positive and finite");
}

void require_nonnegative_finite(double v, const std::string& name) {
  require(std::isfinite(v) && v >= 0.0, name + " must be non-negative and finite");
}

// Integrates f over [a, b] split at the given interior break points, each
// piece with adaptive Gauss-Kronrod.
template <typename F>
double piecewise_integral(F&& f, double a, double b, std::vector<double> breaks) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double lo = a;
  for (double x : breaks) {
    if (x <= lo) continue;
    if (x > b) x = b;
    if (x > lo) {
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, x, 15, 1e-14);
      lo = x;
    }
    if (lo >= b) break;
  }
  return total;
}

void collect_breaks(const Envelope& e, std::vector<double>& out) {
  const auto [lo, hi] = e.support();
  out.push_back(lo);
  out.push_back(hi);
  if (const auto* pc = std::get_if<PiecewiseConstantPulse>(&e.shape())) {
    for (std::size_t i = 1; i < pc->schedule.amplitudes.size(); ++i) {
      out.push_back(pc->schedule.bin_start(i));
    }
  }
}

}  // namespace

double PulseSchedule::value(double t) const {
  if (amplitudes.empty() || t < t0) return 0.0;
  const double x = (t - t0) / dt;
  const auto i = static_cast<std::size_t>(std::floor(x));
  if (i >= amplitudes.size()) {
    // The right end of the last bin belongs to it.
    return t <= end() ? amplitudes.back() : 0.0;
  }
  return amplitudes[i];
}

void PulseSchedule::validate() const {
  require_positive_finite(dt, "schedule resolution dt");
  require(std::isfinite(t0), "schedule start must be finite");
  for (double a : amplitudes) require(std::isfinite(a), "schedule amplitudes must be finite");
}

Envelope::Envelope(Shape shape) : shape_(std::move(shape)) {
  std::visit(overloaded{
                 [](const SquarePulse& p) {
                   require_nonnegative_finite(p.amplitude, "square amplitude");
                   require_nonnegative_finite(p.duration, "square duration");
                   require(std::isfinite(p.start), "square start must be finite");
                 },
                 [](const CosRampPulse& p) {
                   require_nonnegative_finite(p.amplitude, "cos-ramp amplitude");
                   require_positive_finite(p.period, "cos-ramp period");
                 },
                 [](const DelayedCosRampPulse& p) {
                   require_nonnegative_finite(p.amplitude, "delayed cos-ramp amplitude");
                   require_positive_finite(p.period, "delayed cos-ramp period");
                   require_nonnegative_finite(p.delay, "delayed cos-ramp delay");
                 },
                 [](const GaussianPulse& p) {
                   require_nonnegative_finite(p.amplitude, "Gaussian amplitude");
                   require_positive_finite(p.width, "Gaussian width");
                   require(std::isfinite(p.start), "Gaussian start must be finite");
                 },
                 [](const CosSquaredPulse& p) {
                   require_nonnegative_finite(p.amplitude, "cos^2 amplitude");
                   require_positive_finite(p.period, "cos^2 period");
                 },
                 [](const PiecewiseConstantPulse& p) { p.schedule.validate(); },
             },
             shape_);
}

std::string Envelope::kind() const {
  return std::visit(overloaded{
                        [](const SquarePulse&) { return std::string("square"); },
                        [](const CosRampPulse&) { return std::string("cos_ramp"); },
                        [](const DelayedCosRampPulse&) { return std::string("delayed_cos_ramp"); },
                        [](const GaussianPulse&) { return std::string("gaussian"); },
                        [](const CosSquaredPulse&) { return std::string("cos_squared"); },
                        [](const PiecewiseConstantPulse&) { return std::string("piecewise_constant"); },
                    },
                    shape_);
}

std::pair<double, double> Envelope::support() const {
  return std::visit(
      overloaded{
          [](const SquarePulse& p) { return std::pair{p.start, p.start + p.duration}; },
          [](const CosRampPulse& p) { return std::pair{0.0, p.period}; },
          [](const DelayedCosRampPulse& p) { return std::pair{p.delay, p.delay + p.period}; },
          [](const GaussianPulse& p) { return std::pair{p.start, p.start + 6.0 * p.width}; },
          [](const CosSquaredPulse& p) { return std::pair{0.0, p.period}; },
          [](const PiecewiseConstantPulse& p) { return std::pair{p.schedule.t0, p.schedule.end()}; },
      },
      shape_);
}

double Envelope::peak() const {
  return std::visit(overloaded{
                        [](const PiecewiseConstantPulse& p) {
                          double m = 0.0;
                          for (double a : p.schedule.amplitudes) m = std::max(m, std::abs(a));
                          return m;
                        },
                        [](const auto& p) { return p.amplitude; },
                    },
                    shape_);
}

double Envelope::operator()(double t) const {
  return std::visit(
      overloaded{
          [t](const SquarePulse& p) {
            return (t >= p.start && t <= p.start + p.duration) ? p.amplitude : 0.0;
          },
          [t](const CosRampPulse& p) { return cos_ramp(p.amplitude, p.period, t); },
          [t](const DelayedCosRampPulse& p) { return cos_ramp(p.amplitude, p.period, t - p.delay); },
          [t](const GaussianPulse& p) {
            const double x = t - p.start;
            if (x < 0.0 || x > 6.0 * p.width) return 0.0;
            const double u = (x - 3.0 * p.width) / p.width;
            return p.amplitude * std::exp(-u * u);
          },
          [t](const CosSquaredPulse& p) {
            if (t < 0.0 || t > p.period) return 0.0;
            const double c = 1.0 - std::cos(2.0 * kPi * t / p.period);
            return 0.25 * p.amplitude * c * c;
          },
          [t](const PiecewiseConstantPulse& p) { return p.schedule.value(t); },
      },
      shape_);
}

double sample_envelope(const Envelope& e, double t) { return e(t); }

PulseSchedule discretize(const Envelope& e, double dt, double horizon) {
  require_positive_finite(dt, "time resolution dt");
  require(std::isfinite(horizon) && horizon > 0.0, "discretization horizon must be positive");
  if (horizon < e.support().second - 1e-12) {
    throw ConfigError("discretization horizon ends before the envelope support");
  }
  const auto bins = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  PulseSchedule s{0.0, dt, {}};
  s.amplitudes.reserve(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    s.amplitudes.push_back(e((static_cast<double>(i) + 0.5) * dt));
  }
  return s;
}

double pulse_area(const PulseSchedule& s, double t1, double t2) {
  require(t1 < t2, "pulse area window needs t1 < t2");
  double total = 0.0;
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    const double lo = std::max(t1, s.bin_start(i));
    const double hi = std::min(t2, s.bin_start(i + 1));
    if (hi > lo) total += s.amplitudes[i] * (hi - lo);
  }
  return total;
}

double pulse_area(const Envelope& e, double t1, double t2) {
  require(t1 < t2, "pulse area window needs t1 < t2");
  if (const auto* pc = std::get_if<PiecewiseConstantPulse>(&e.shape())) {
    return pulse_area(pc->schedule, t1, t2);
  }
  std::vector<double> breaks;
  collect_breaks(e, breaks);
  return piecewise_integral([&e](double t) { return e(t); }, t1, t2, std::move(breaks));
}

double effective_area(const Envelope& p, const Envelope& s, double detuning, double t1, double t2) {
  require(t1 < t2, "pulse area window needs t1 < t2");
  require_positive_finite(detuning, "detuning");
  std::vector<double> breaks;
  collect_breaks(p, breaks);
  collect_breaks(s, breaks);
  const double scale = 1.0 / (2.0 * detuning);
  return piecewise_integral([&](double t) { return p(t) * s(t) * scale; }, t1, t2,
                            std::move(breaks));
}

std::string to_string(FieldRole role) {
  switch (role) {
    case FieldRole::kP: return "P";
    case FieldRole::kQ: return "Q";
    case FieldRole::kS: return "S";
    case FieldRole::kDrive: return "drive";
    case FieldRole::kTwist: return "twist";
  }
  return "?";
}

void DriveField::validate() const {
  require_positive_finite(carrier, to_string(role) + " carrier frequency");
  require(transition.first != transition.second, to_string(role) + " transition levels must differ");
  require(std::isfinite(phase), to_string(role) + " phase must be finite");
}

void NoiseSpec::validate() const {
  if (kind == NoiseKind::kUniformFluctuation) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      std::ostringstream msg;
      msg << "fluctuation strength eta must lie in [0, 1], got " << eta;
      throw ConfigError(msg.str());
    }
  } else {
    require(!std::isnan(snr_db), "AWGN signal-to-noise ratio must not be NaN");
    require(std::isfinite(reference_power) && reference_power >= 0.0,
            "AWGN reference power must be >= 0");
  }
}

PulseSchedule apply_noise(const PulseSchedule& s, const NoiseSpec& noise) {
  noise.validate();
  s.validate();
  if (s.amplitudes.empty()) throw ConfigError("cannot apply noise to an empty schedule");
  PulseSchedule out = s;
  PortableRng rng(noise.seed);
  if (noise.kind == NoiseKind::kUniformFluctuation) {
    for (double& a : out.amplitudes) a *= 1.0 + rng.uniform(-noise.eta, noise.eta);
    return out;
  }
  const auto first = std::find_if(s.amplitudes.begin(), s.amplitudes.end(),
                                  [](double a) { return a != 0.0; });
  if (first == s.amplitudes.end()) return out;
  const auto last = std::find_if(s.amplitudes.rbegin(), s.amplitudes.rend(),
                                 [](double a) { return a != 0.0; }).base();
  double power = noise.reference_power;
  if (power == 0.0) {
    for (auto it = first; it != last; ++it) power += (*it) * (*it);
    power /= static_cast<double>(std::distance(first, last));
  }
  const double sigma = std::sqrt(power / std::pow(10.0, noise.snr_db / 10.0));
  for (double& a : out.amplitudes) a += sigma * rng.normal();
  return out;
}

std::string to_string(PsShape shape) {
  return shape == PsShape::kSquare ? "square" : "cos_ramp";
}

std::string to_string(QShape shape) {
  switch (shape) {
    case QShape::kNone: return "none";
    case QShape::kDelayedCosRamp: return "delayed_cos_ramp";
    case QShape::kGaussian: return "gaussian";
    case QShape::kCosSquared: return "cos_squared";
  }
  return "?";
}

Envelope AreaSolution::p_envelope() const {
  if (ps_shape == PsShape::kSquare) return Envelope(SquarePulse{ps_amplitude, 0.0, ps_duration});
  return Envelope(CosRampPulse{ps_amplitude, ps_duration});
}

Envelope AreaSolution::q_envelope() const {
  switch (q_shape) {
    case QShape::kNone: return Envelope::off();
    case QShape::kDelayedCosRamp: return Envelope(DelayedCosRampPulse{q_amplitude, q_period, q_delay});
    case QShape::kGaussian: return Envelope(GaussianPulse{q_amplitude, q_width, q_delay});
    case QShape::kCosSquared: return Envelope(CosSquaredPulse{q_amplitude, q_period});
  }
  return Envelope::off();
}

namespace {

// int Omega_p Omega_s / 2 delta dt per unit T0, for P = S of peak amplitude a.
double effective_area_rate(PsShape ps, double a, double detuning) {
  // Square: a^2 / 2 delta. Cos ramp: mean of (1 - cos)^2 / 4 is 3/8.
  return ps == PsShape::kSquare ? a * a / (2.0 * detuning) : 3.0 * a * a / (16.0 * detuning);
}

}  // namespace

double two_photon_transfer_duration(PsShape ps, double ps_amplitude, double detuning) {
  require_positive_finite(ps_amplitude, "P/S amplitude");
  require_positive_finite(detuning, "detuning");
  return kPi / effective_area_rate(ps, ps_amplitude, detuning);
}

AreaSolution solve_area_conditions(PsShape ps, QShape q, double ps_amplitude, double q_amplitude,
                                   double detuning, int n_l, int n_r) {
  require_positive_finite(ps_amplitude, "P/S amplitude");
  require_positive_finite(detuning, "detuning");
  if (q == QShape::kNone) throw ConfigError("area conditions need a Q pulse");
  if (q != QShape::kCosSquared) require_positive_finite(q_amplitude, "Q amplitude");

  // Adding and subtracting the two conditions.
  const double area_q = (n_l + n_r + 0.5) * kPi;
  const double area_eff = (n_r - n_l + 0.5) * kPi;
  if (area_q <= 0.0 || area_eff <= 0.0) {
    std::ostringstream msg;
    msg << "no solution for (n_l, n_r) = (" << n_l << ", " << n_r
        << "): required areas int Omega_q = " << area_q << " and int Omega_eff = " << area_eff
        << " must both be positive";
    throw ConfigError(msg.str());
  }

  AreaSolution sol;
  sol.ps_shape = ps;
  sol.q_shape = q;
  sol.ps_amplitude = ps_amplitude;
  sol.ps_duration = area_eff / effective_area_rate(ps, ps_amplitude, detuning);
  switch (q) {
    case QShape::kDelayedCosRamp:
      sol.q_amplitude = q_amplitude;
      sol.q_period = 2.0 * area_q / q_amplitude;
      sol.q_delay = sol.ps_duration;
      sol.total_duration = sol.q_delay + sol.q_period;
      break;
    case QShape::kGaussian:
      // Area of the Gaussian truncated to +-3 widths: A w sqrt(pi) erf(3).
      sol.q_amplitude = q_amplitude;
      sol.q_width = area_q / (q_amplitude * std::sqrt(kPi) * std::erf(3.0));
      sol.total_duration = std::max(6.0 * sol.q_width, sol.ps_duration);
      break;
    case QShape::kCosSquared:
      // Same period as P/S; the amplitude follows from the Q area.
      sol.q_period = sol.ps_duration;
      sol.q_amplitude = 8.0 * area_q / (3.0 * sol.q_period);
      sol.total_duration = sol.ps_duration;
      break;
    case QShape::kNone:
      break;
  }
  return sol;
}

AreaResiduals area_residuals(const Envelope& p, const Envelope& q, const Envelope& s,
                             double detuning, double duration, int n_l, int n_r) {
  const double a_q = pulse_area(q, 0.0, duration);
  const double a_eff = effective_area(p, s, detuning, 0.0, duration);
  return {0.5 * (a_q - a_eff) - n_l * kPi, 0.5 * (a_q + a_eff) - (n_r + 0.5) * kPi};
}

}  // namespace enantiosim
