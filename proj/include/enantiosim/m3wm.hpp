#pragma once

#include "enantiosim/dynamics.hpp"
#include "enantiosim/esst.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace enantiosim {

// Levels of the second cyclic configuration: |2_02> (the ESST level |3>),
// |3_03>, |3_13>.
inline constexpr std::size_t kM3wmA = 0;
inline constexpr std::size_t kM3wmB = 1;
inline constexpr std::size_t kM3wmC = 2;

enum class M3wmMethod { kDriveThenTwist, kEffectiveTwoPhoton, kResonantRaman };

std::string to_string(M3wmMethod m);
M3wmMethod parse_m3wm_method(const std::string& name);

/// Ratio Omega_d / Omega_t for the resonant Raman method.
inline const double kRamanRatio = std::sqrt(2.0) + 1.0;

/// Drive couples |2_02>-|3_03>, twist couples |3_03>-|3_13>; Rabi
/// frequencies enter as Omega/2. Durations of 0 are derived from the method's
/// area conditions.
struct M3wmConfig {
  M3wmMethod method = M3wmMethod::kDriveThenTwist;
  double drive_rabi = 2.0;  // rad/us
  double twist_rabi = 2.0;  // rad/us
  double detuning = 0.0;    // Delta' (effective method), rad/us
  double drive_duration = 0.0;  // us
  double twist_duration = 0.0;  // us
  // Quoted transition frequencies, metadata for the listen model.
  double drive_frequency = 7035.9;
  double twist_frequency = 2017.5;
  double listen_frequency = 9053.4;
  std::size_t record_points = 200;

  /// Checks the method constraints: drive-then-twist areas pi/2 and pi;
  /// effective: Delta' >= 10 max(Omega) and int Omega_d Omega_t / 2 Delta' = pi/2;
  /// resonant Raman: Omega_d = (sqrt 2 + 1) Omega_t within 1e-6 relative and
  /// int sqrt(Omega_d^2 + Omega_t^2) / 2 = pi. Violations name the measured value.
  void validate() const;
  /// Copy with zero durations replaced by the values the constraints require.
  M3wmConfig resolved() const;
  double total_duration() const;
};

/// Resolved drive-then-twist, effective, or Raman config at the given Rabi
/// scale (twist Rabi frequency; drive follows the method).
M3wmConfig default_m3wm_config(M3wmMethod method, double twist_rabi = 2.0);

/// Evolution of the 3-level M3WM system; states in the rotating frame.
Trajectory m3wm_trajectory(const M3wmConfig& cfg, const QuantumState& initial);

QuantumState prepare_coherence(const M3wmConfig& cfg, const QuantumState& initial);

/// |rho_{2_02, 3_13}| after resonant Raman pulses with Omega_d = r Omega_t and
/// int sqrt(Omega_d^2 + Omega_t^2) / 2 dt = pi, starting from |2_02>.
std::vector<double> scan_raman_ratio(std::span<const double> ratios, double twist_rabi = 2.0);

struct ListenSignalModel {
  double ee = 0.0;
  int triple_product_sign = 1;  // +1 or -1
  double triple_product_magnitude = 0.4 * 1.2 * 0.8;  // |mu_a . (mu_b x mu_c)|, Debye^3
  double frequency = 9053.4;

  void validate() const;
};

/// ee |tp| cos(2 pi f t + sign pi / 2).
double listen_signal(const ListenSignalModel& m, double t);

struct EeEstimate {
  double ee = 0.0;
  /// |ee| exceeded 1 before clamping.
  bool inconsistent = false;
};

EeEstimate estimate_ee(double target_amplitude, double reference_amplitude, double reference_ee,
                       int sign);

struct PipelineResult {
  EsstResult esst;
  double d = 0.0;
  Handedness excited = Handedness::kRight;
  /// |2_02> (ESST |3>) population handed to the M3WM stage, per enantiomer.
  double p3_left = 0.0;
  double p3_right = 0.0;
  QuantumState m3wm_state = QuantumState::basis(3, kM3wmA);
  /// |rho_{2_02, 3_13}| per unit population entering the M3WM stage.
  double coherence = 0.0;
  /// Signed listen amplitude |tp| 2|rho_ac| (x_L P3L - x_R P3R) with
  /// x_{L,R} = (1 -+ ee) / 2; the L enantiomer carries the + sign.
  double amplitude = 0.0;
};

/// ESST followed by the M3WM on the population of |2_02>. Throws ConfigError
/// when the ESST D is below `gate`.
PipelineResult run_pipeline(const EsstScenario& esst, const M3wmConfig& cfg, double ee = 0.0,
                            double gate = 0.9);

/// Listen amplitude for an ideal ESST (P3 of the excited enantiomer 1, other 0).
double ideal_pipeline_amplitude(const M3wmConfig& cfg, Handedness excited, double ee = 0.0);

}  // namespace enantiosim
