#include "enantiosim/m3wm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace enantiosim {

namespace {

constexpr double kAreaTolerance = 1e-6;

struct Segment {
  double duration = 0.0;
  Matrix h;
};

Matrix ladder(double drive, double twist, double detuning_b, double shift_c) {
  Matrix h = Matrix::Zero(3, 3);
  h(kM3wmB, kM3wmB) = detuning_b;
  h(kM3wmC, kM3wmC) = shift_c;
  h(kM3wmA, kM3wmB) = h(kM3wmB, kM3wmA) = 0.5 * drive;
  h(kM3wmB, kM3wmC) = h(kM3wmC, kM3wmB) = 0.5 * twist;
  return h;
}

// Differential Stark shift of |3_13> against |2_02>, removed by detuning the
// twist so the effective two-photon transition stays resonant.
double stark_compensation(const M3wmConfig& c) {
  return (c.twist_rabi * c.twist_rabi - c.drive_rabi * c.drive_rabi) / (4.0 * c.detuning);
}

std::vector<Segment> segments(const M3wmConfig& c) {
  switch (c.method) {
    case M3wmMethod::kDriveThenTwist:
      return {{c.drive_duration, ladder(c.drive_rabi, 0.0, 0.0, 0.0)},
              {c.twist_duration, ladder(0.0, c.twist_rabi, 0.0, 0.0)}};
    case M3wmMethod::kEffectiveTwoPhoton:
      return {{c.drive_duration,
               ladder(c.drive_rabi, c.twist_rabi, c.detuning, stark_compensation(c))}};
    case M3wmMethod::kResonantRaman:
      return {{c.drive_duration, ladder(c.drive_rabi, c.twist_rabi, 0.0, 0.0)}};
  }
  throw ConfigError("unknown M3WM method");
}

void check_area(double measured, double required, const std::string& what) {
  if (std::abs(measured - required) > kAreaTolerance * std::max(1.0, required)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << what << " must be " << required << " rad, got " << measured << " rad";
    throw ConfigError(msg.str());
  }
}

Trajectory run_segments(const std::vector<Segment>& segs, const QuantumState& initial,
                        std::size_t record_points) {
  double total = 0.0;
  double fastest = 0.0;
  for (const auto& s : segs) {
    total += s.duration;
    fastest = std::max(fastest, s.h.cwiseAbs().rowwise().sum().maxCoeff());
  }
  const double max_step = 1.0 / (32.0 * std::max(fastest, 1e-12));
  Trajectory out;
  QuantumState state = initial;
  double t0 = 0.0;
  for (const auto& seg : segs) {
    const Matrix h = seg.h;
    const TimeDependentOperator op(3, [h](double) { return h; });
    const auto points = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(static_cast<double>(record_points) * seg.duration / total)));
    const TimeGrid grid = make_grid(seg.duration, max_step, 0.0, points);
    const Trajectory part = state.kind() == StateKind::kVector
                                ? propagate_schrodinger(op, state, grid)
                                : propagate_lindblad(op, {}, state, grid);
    // The first sample repeats the previous segment's last one.
    for (std::size_t k = out.times.empty() ? 0 : 1; k < part.times.size(); ++k) {
      out.times.push_back(t0 + part.times[k]);
      out.states.push_back(part.states[k]);
    }
    state = part.final_state();
    t0 += seg.duration;
  }
  return out;
}

}  // namespace

std::string to_string(M3wmMethod m) {
  switch (m) {
    case M3wmMethod::kDriveThenTwist: return "drive_then_twist";
    case M3wmMethod::kEffectiveTwoPhoton: return "effective_two_photon";
    case M3wmMethod::kResonantRaman: return "resonant_raman";
  }
  return "?";
}

M3wmMethod parse_m3wm_method(const std::string& name) {
  for (auto m : {M3wmMethod::kDriveThenTwist, M3wmMethod::kEffectiveTwoPhoton,
                 M3wmMethod::kResonantRaman}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown M3WM method '" + name +
                    "' (expected drive_then_twist, effective_two_photon, or resonant_raman)");
}

M3wmConfig M3wmConfig::resolved() const {
  M3wmConfig c = *this;
  if (!(std::isfinite(drive_rabi) && drive_rabi > 0.0 && std::isfinite(twist_rabi) &&
        twist_rabi > 0.0)) {
    throw ConfigError("drive and twist Rabi frequencies must be positive");
  }
  switch (method) {
    case M3wmMethod::kDriveThenTwist:
      if (c.drive_duration == 0.0) c.drive_duration = 0.5 * kPi / drive_rabi;
      if (c.twist_duration == 0.0) c.twist_duration = kPi / twist_rabi;
      break;
    case M3wmMethod::kEffectiveTwoPhoton:
      if (c.drive_duration == 0.0 && detuning > 0.0) {
        c.drive_duration = kPi * detuning / (drive_rabi * twist_rabi);
      }
      c.twist_duration = c.drive_duration;
      break;
    case M3wmMethod::kResonantRaman:
      if (c.drive_duration == 0.0) {
        c.drive_duration = 2.0 * kPi / std::hypot(drive_rabi, twist_rabi);
      }
      c.twist_duration = c.drive_duration;
      break;
  }
  return c;
}

void M3wmConfig::validate() const {
  const M3wmConfig c = resolved();
  if (!(c.drive_duration > 0.0 && c.twist_duration > 0.0) || !std::isfinite(c.drive_duration) ||
      !std::isfinite(c.twist_duration)) {
    throw ConfigError("pulse durations must be positive");
  }
  if (record_points < 2) throw ConfigError("record_points must be at least 2");
  switch (method) {
    case M3wmMethod::kDriveThenTwist:
      check_area(drive_rabi * c.drive_duration, 0.5 * kPi, "drive pulse area");
      check_area(twist_rabi * c.twist_duration, kPi, "twist pulse area");
      break;
    case M3wmMethod::kEffectiveTwoPhoton: {
      const double strongest = std::max(drive_rabi, twist_rabi);
      if (!(detuning >= 10.0 * strongest)) {
        std::ostringstream msg;
        msg << "effective two-photon method needs Delta' >= 10 max(Omega_d, Omega_t) = "
            << 10.0 * strongest << " rad/us, got " << detuning;
        throw ConfigError(msg.str());
      }
      check_area(drive_rabi * twist_rabi / (2.0 * detuning) * c.drive_duration, 0.5 * kPi,
                 "effective two-photon area");
      break;
    }
    case M3wmMethod::kResonantRaman: {
      const double ratio = drive_rabi / twist_rabi;
      if (std::abs(ratio - kRamanRatio) > 1e-6 * kRamanRatio) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "resonant Raman needs Omega_d / Omega_t = sqrt(2) + 1 = " << kRamanRatio
            << ", got " << ratio;
        throw ConfigError(msg.str());
      }
      check_area(0.5 * std::hypot(drive_rabi, twist_rabi) * c.drive_duration, kPi,
                 "Raman bright-state area");
      break;
    }
  }
}

double M3wmConfig::total_duration() const {
  const M3wmConfig c = resolved();
  return method == M3wmMethod::kDriveThenTwist ? c.drive_duration + c.twist_duration
                                               : c.drive_duration;
}

M3wmConfig default_m3wm_config(M3wmMethod method, double twist_rabi) {
  M3wmConfig c;
  c.method = method;
  c.twist_rabi = twist_rabi;
  c.drive_rabi = method == M3wmMethod::kResonantRaman ? kRamanRatio * twist_rabi : twist_rabi;
  if (method == M3wmMethod::kEffectiveTwoPhoton) c.detuning = 20.0 * twist_rabi;
  return c.resolved();
}

Trajectory m3wm_trajectory(const M3wmConfig& cfg, const QuantumState& initial) {
  cfg.validate();
  if (initial.dim() != 3) throw ConfigError("M3WM initial state must be three-dimensional");
  return run_segments(segments(cfg.resolved()), initial, cfg.record_points);
}

QuantumState prepare_coherence(const M3wmConfig& cfg, const QuantumState& initial) {
  return m3wm_trajectory(cfg, initial).final_state();
}

std::vector<double> scan_raman_ratio(std::span<const double> ratios, double twist_rabi) {
  std::vector<double> out;
  out.reserve(ratios.size());
  for (double r : ratios) {
    if (!(r > 0.0)) throw ConfigError("Raman ratio must be positive");
    const double drive = r * twist_rabi;
    const Segment seg{2.0 * kPi / std::hypot(drive, twist_rabi), ladder(drive, twist_rabi, 0.0, 0.0)};
    const Trajectory t = run_segments({seg}, QuantumState::basis(3, kM3wmA), 2);
    out.push_back(std::abs(coherence(t.final_state(), kM3wmA, kM3wmC)));
  }
  return out;
}

void ListenSignalModel::validate() const {
  if (!(std::abs(ee) <= 1.0)) throw ConfigError("enantiomeric excess must lie in [-1, 1]");
  if (triple_product_sign != 1 && triple_product_sign != -1) {
    throw ConfigError("triple product sign must be +1 or -1");
  }
  if (!(triple_product_magnitude >= 0.0) || !std::isfinite(frequency)) {
    throw ConfigError("triple product magnitude must be >= 0 and frequency finite");
  }
}

double listen_signal(const ListenSignalModel& m, double t) {
  m.validate();
  if (m.ee == 0.0) return 0.0;
  return m.ee * m.triple_product_magnitude *
         std::cos(2.0 * kPi * m.frequency * t + 0.5 * kPi * m.triple_product_sign);
}

EeEstimate estimate_ee(double target_amplitude, double reference_amplitude, double reference_ee,
                       int sign) {
  if (reference_amplitude == 0.0 || !std::isfinite(reference_amplitude)) {
    throw ConfigError("reference amplitude must be nonzero");
  }
  if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
  if (!(std::abs(reference_ee) <= 1.0)) throw ConfigError("reference ee must lie in [-1, 1]");
  const double ee = sign * reference_ee * target_amplitude / reference_amplitude;
  if (std::abs(ee) > 1.0) return {std::clamp(ee, -1.0, 1.0), true};
  return {ee, false};
}

namespace {

double signal_amplitude(double coherence_per_unit, double p3_left, double p3_right, double ee) {
  const double x_left = 0.5 * (1.0 - ee);
  const double x_right = 0.5 * (1.0 + ee);
  const double tp = ListenSignalModel{}.triple_product_magnitude;
  return tp * 2.0 * coherence_per_unit * (x_left * p3_left - x_right * p3_right);
}

}  // namespace

PipelineResult run_pipeline(const EsstScenario& esst, const M3wmConfig& cfg, double ee, double gate) {
  if (!(std::abs(ee) <= 1.0)) throw ConfigError("enantiomeric excess must lie in [-1, 1]");
  cfg.validate();
  PipelineResult r;
  r.esst = run_esst(esst);
  r.d = fidelity_D(r.esst);
  if (!(r.d >= gate)) {
    std::ostringstream msg;
    msg << "ESST gate failed: D = " << r.d << " < " << gate;
    throw ConfigError(msg.str());
  }
  r.excited = excited_enantiomer(r.esst);
  r.p3_left = r.esst.p3_left();
  r.p3_right = r.esst.p3_right();
  r.m3wm_state = prepare_coherence(cfg, QuantumState::basis(3, kM3wmA));
  r.coherence = std::abs(coherence(r.m3wm_state, kM3wmA, kM3wmC));
  r.amplitude = signal_amplitude(r.coherence, r.p3_left, r.p3_right, ee);
  return r;
}

double ideal_pipeline_amplitude(const M3wmConfig& cfg, Handedness excited, double ee) {
  const QuantumState st = prepare_coherence(cfg, QuantumState::basis(3, kM3wmA));
  const double c = std::abs(coherence(st, kM3wmA, kM3wmC));
  const bool left = excited == Handedness::kLeft;
  return signal_amplitude(c, left ? 1.0 : 0.0, left ? 0.0 : 1.0, ee);
}

}  // namespace enantiosim
