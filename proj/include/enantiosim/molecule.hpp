#pragma once

#include "enantiosim/dynamics.hpp"
#include "enantiosim/pulse.hpp"

#include <string>
#include <vector>

namespace enantiosim {

// Level indices are zero-based: |1> is 0, |2> is 1, |3> is 2, |4> is 3.
inline constexpr std::size_t kLevel1 = 0;
inline constexpr std::size_t kLevel2 = 1;
inline constexpr std::size_t kLevel3 = 2;
inline constexpr std::size_t kLevel4 = 3;

/// L takes the upper sign of the +-Omega_q coupling, R the lower one.
enum class Handedness { kLeft, kRight };

inline double handedness_sign(Handedness h) { return h == Handedness::kLeft ? 1.0 : -1.0; }
std::string to_string(Handedness h);

enum class DipoleType { kA, kB, kC };
std::string to_string(DipoleType t);

struct RotationalLevel {
  std::string label;  // J_{Ka Kc}
  double energy = 0.0;  // rad/us relative to |1>
};

struct TransitionSpec {
  std::size_t lower = 0;
  std::size_t upper = 1;
  double dipole_debye = 0.0;
  DipoleType type = DipoleType::kA;
  double frequency = 0.0;  // rad/us
  /// The Rabi frequency of this transition changes sign between enantiomers.
  bool handedness_flip = false;

  bool connects(std::size_t m, std::size_t n) const {
    return (lower == m && upper == n) || (lower == n && upper == m);
  }
};

struct MoleculeSpec {
  std::string name;
  // Rotational constants in MHz, metadata only.
  double rot_a_mhz = 0.0;
  double rot_b_mhz = 0.0;
  double rot_c_mhz = 0.0;
  std::vector<RotationalLevel> levels;
  std::vector<TransitionSpec> transitions;

  const TransitionSpec* find_transition(std::size_t m, std::size_t n) const;
  const TransitionSpec& transition(std::size_t m, std::size_t n) const;
  /// +1, or the handedness sign when the transition flips between enantiomers.
  double coupling_sign(std::size_t m, std::size_t n, Handedness h) const;
  std::vector<double> energies() const;

  /// Checks the zero-energy convention, transition frequencies against level
  /// energies, and that the cyclic triple {|1>,|2>,|3>} has an odd number of
  /// handedness-flipping transitions (opposite triple products).
  void validate() const;
};

/// Cyclohexylmethanol with |1>=1_01, |2>=2_12, |3>=2_02, |4>=1_11. The
/// quoted MHz transition frequencies are used numerically as rad/us.
MoleculeSpec cyclohexylmethanol_preset();

/// P drives |1><->|2>, Q drives |1><->|3>, S drives |2><->|3>.
struct FieldSet {
  DriveField p;
  DriveField q;
  DriveField s;

  void validate() const;
};

/// Carrier offsets, applied as two-photon/one-photon detuning shifts in the
/// rotating-frame models.
struct FrequencyDeviations {
  double p = 0.0;
  double q = 0.0;
  double s = 0.0;
};

/// Rotating-wave three-level Hamiltonian in the interaction picture:
///   (Omega_p/2 e^{-i phi_p}|2><1| + Omega_s/2 e^{-i phi_s}|2><3|) e^{i Delta t}
///   +- Omega_q/2 e^{i phi_q}|1><3| + H.c.
TimeDependentOperator build_rwa_3level(const MoleculeSpec& spec, const FieldSet& fields,
                                       Handedness h, double detuning,
                                       const FrequencyDeviations& deviations = {});

/// Adiabatically eliminated model on {|1>, |3>} (dimension 3, |2> decoupled):
/// coupling (+-Omega_q e^{i phi_q} - Omega_eff e^{i(phi_p - phi_s)})/2 with
/// Omega_eff = Omega_p Omega_s / 2 Delta, plus the differential Stark shift,
/// which vanishes for Omega_p = Omega_s.
TimeDependentOperator build_effective_2level(const MoleculeSpec& spec, const FieldSet& fields,
                                             Handedness h, double detuning,
                                             const FrequencyDeviations& deviations = {});

/// Full lab-frame four-level Hamiltonian without the rotating-wave
/// approximation. Each field drives every transition of its own dipole type
/// (Q also couples |2><->|4>, S also couples |1><->|4>) with the same Rabi
/// amplitude. Carriers are taken from the fields.
TimeDependentOperator build_lab_frame_4level(const MoleculeSpec& spec, const FieldSet& fields,
                                             Handedness h);

/// Decay of |2> into lower connected levels with branching ratios
/// proportional to |dipole|, and of |3> likewise, with total rates 1/tau2 and
/// 1/tau3. Infinite lifetimes give no channels; |4> is stable.
std::vector<RelaxationChannel> relaxation_channels(const MoleculeSpec& spec, double tau2_us,
                                                   double tau3_us);

}  // namespace enantiosim
