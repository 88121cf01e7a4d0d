#pragma once

#include "enantiosim/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace enantiosim {

/// Piecewise-constant waveform: bin i covers [t0 + i dt, t0 + (i+1) dt).
struct PulseSchedule {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> amplitudes;

  double bin_start(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double end() const { return bin_start(amplitudes.size()); }
  double value(double t) const;
  void validate() const;

  bool operator==(const PulseSchedule&) const = default;
};

// Envelope shapes. All amplitudes are Rabi frequencies in rad/us, times in us.

/// Constant amplitude on [start, start + duration].
struct SquarePulse {
  double amplitude = 0.0;
  double start = 0.0;
  double duration = 0.0;
};

/// (A/2)(1 - cos(2 pi t / T)) on [0, T].
struct CosRampPulse {
  double amplitude = 0.0;
  double period = 0.0;
};

/// (A/2)(1 - cos(2 pi (t - delay) / T)) on [delay, delay + T].
struct DelayedCosRampPulse {
  double amplitude = 0.0;
  double period = 0.0;
  double delay = 0.0;
};

/// A exp(-(t - start - 3 w)^2 / w^2), truncated to [start, start + 6 w].
struct GaussianPulse {
  double amplitude = 0.0;
  double width = 0.0;
  double start = 0.0;
};

/// (A/4)(1 - cos(2 pi t / T))^2 on [0, T].
struct CosSquaredPulse {
  double amplitude = 0.0;
  double period = 0.0;
};

struct PiecewiseConstantPulse {
  PulseSchedule schedule;
};

class Envelope {
 public:
  using Shape = std::variant<SquarePulse, CosRampPulse, DelayedCosRampPulse, GaussianPulse,
                             CosSquaredPulse, PiecewiseConstantPulse>;

  Envelope() : Envelope(SquarePulse{}) {}
  Envelope(Shape shape);  // NOLINT(google-explicit-constructor): shapes convert naturally

  static Envelope off() { return Envelope(SquarePulse{}); }

  const Shape& shape() const { return shape_; }
  std::string kind() const;
  /// Closed interval outside of which the envelope is zero.
  std::pair<double, double> support() const;
  /// Largest |value| the envelope can take.
  double peak() const;
  bool is_schedule() const { return std::holds_alternative<PiecewiseConstantPulse>(shape_); }

  double operator()(double t) const;

 private:
  Shape shape_;
};

double sample_envelope(const Envelope& e, double t);

/// Samples `e` at bin midpoints; ceil(horizon / dt) bins starting at t = 0.
PulseSchedule discretize(const Envelope& e, double dt, double horizon);

/// Integral of the envelope over [t1, t2] in rad.
double pulse_area(const Envelope& e, double t1, double t2);
double pulse_area(const PulseSchedule& s, double t1, double t2);

/// Integral of Omega_p Omega_s / (2 delta) over [t1, t2], the two-photon
/// effective pulse area.
double effective_area(const Envelope& p, const Envelope& s, double detuning, double t1, double t2);

enum class FieldRole { kP, kQ, kS, kDrive, kTwist };

std::string to_string(FieldRole role);

/// Classical microwave field driving transition (m, n): Omega(t) cos(w t + phi).
struct DriveField {
  FieldRole role = FieldRole::kP;
  std::pair<std::size_t, std::size_t> transition{0, 1};
  double carrier = 1.0;  // rad/us
  double phase = 0.0;    // rad
  Envelope envelope;

  void validate() const;
};

enum class NoiseKind { kAwgn, kUniformFluctuation };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kAwgn;
  double snr_db = 10.0;  // AWGN only
  double eta = 0.0;      // uniform fluctuation only, in [0, 1]
  /// AWGN signal power in (rad/us)^2; 0 measures it from the schedule.
  double reference_power = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// AWGN: per-bin additive normal noise with variance P / 10^(snr_db / 10),
/// P the mean square amplitude over the bins between the first and last
/// nonzero bin, or `reference_power` when set. Uniform fluctuation: per-bin factor (1 + u), u ~ U[-eta, eta].
/// Negative amplitudes are kept.
PulseSchedule apply_noise(const PulseSchedule& s, const NoiseSpec& noise);

enum class PsShape { kSquare, kCosRamp };
enum class QShape { kNone, kDelayedCosRamp, kGaussian, kCosSquared };

std::string to_string(PsShape shape);
std::string to_string(QShape shape);

/// Timing of a P/Q/S pulse set satisfying the interference area conditions
///   int (Omega_q - Omega_eff)/2 dt = n_l pi,
///   int (Omega_q + Omega_eff)/2 dt = (n_r + 1/2) pi.
struct AreaSolution {
  PsShape ps_shape = PsShape::kCosRamp;
  QShape q_shape = QShape::kGaussian;
  double ps_amplitude = 0.0;
  double ps_duration = 0.0;  // T0
  double q_amplitude = 0.0;
  double q_period = 0.0;  // T0' (delayed cos) or T0 (cos^2)
  double q_width = 0.0;   // t_c (Gaussian)
  double q_delay = 0.0;
  double total_duration = 0.0;  // T

  Envelope p_envelope() const;
  Envelope s_envelope() const { return p_envelope(); }
  Envelope q_envelope() const;
};

/// Solves the area conditions for P = S pulses of shape `ps` (peak
/// `ps_amplitude`) and a Q pulse of shape `q` (peak `q_amplitude`; for
/// kCosSquared the Q amplitude is an output). Throws ConfigError when the
/// requested (n_l, n_r) would need a non-positive area.
AreaSolution solve_area_conditions(PsShape ps, QShape q, double ps_amplitude, double q_amplitude,
                                   double detuning, int n_l, int n_r);

/// P = S duration for complete |1> -> |3> transfer by the two-photon path
/// alone (int Omega_eff dt = pi).
double two_photon_transfer_duration(PsShape ps, double ps_amplitude, double detuning);

struct AreaResiduals {
  double left = 0.0;   // int (Omega_q - Omega_eff)/2 - n_l pi
  double right = 0.0;  // int (Omega_q + Omega_eff)/2 - (n_r + 1/2) pi
};

AreaResiduals area_residuals(const Envelope& p, const Envelope& q, const Envelope& s,
                             double detuning, double duration, int n_l, int n_r);

}  // namespace enantiosim
