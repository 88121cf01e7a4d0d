#pragma once

#include "enantiosim/dynamics.hpp"
#include "enantiosim/molecule.hpp"
#include "enantiosim/pulse.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace enantiosim {

enum class Model { kRwa3, kEffective, kLab4 };

std::string to_string(Model m);

struct Lifetimes {
  double tau2_us = std::numeric_limits<double>::infinity();
  double tau3_us = std::numeric_limits<double>::infinity();
};

/// One enantiomer-selective state transfer run, executed for both
/// handednesses with identical (including noisy) pulses.
struct EsstScenario {
  Model model = Model::kRwa3;
  MoleculeSpec molecule = cyclohexylmethanol_preset();
  /// Envelopes, phases, and nominal carriers. Carriers are only read by the
  /// lab-frame model, where they must follow w_q = w13, w_p = w12 - Delta,
  /// w_s = w23 - Delta (see set_lab_frame_carriers()).
  FieldSet fields;
  double detuning = 0.0;  // Delta, rad/us
  /// Initial level populations (diagonal density matrix). Entries beyond the
  /// model dimension must be zero.
  std::vector<double> initial_populations{1.0, 0.0, 0.0, 0.0};
  /// Noise per field, in P, Q, S order; applied in list order to the
  /// discretized schedule.
  std::array<std::vector<NoiseSpec>, 3> noise;
  std::optional<Lifetimes> lifetimes;
  double resolution = 0.0;  // dt in us; 0 keeps the envelopes continuous
  FrequencyDeviations deviations;
  std::uint64_t seed = 0;
  double duration = 0.0;  // T in us
  std::size_t record_points = 200;
  double max_step = 0.0;  // 0 selects the default step rule

  std::size_t dim() const { return model == Model::kLab4 ? 4 : 3; }
  bool has_noise() const;
  void validate() const;
};

/// Sets the carriers of `fields` to the lab-frame resonance conventions.
void set_lab_frame_carriers(EsstScenario& s);

/// Sets `seed` and derives every noise seed from it (stream = field, substream
/// = position in that field's noise list).
void reseed(EsstScenario& s, std::uint64_t master_seed);

/// Integrator step upper bound used when `max_step` is 0: a fortieth of the
/// shortest carrier period for lab4, and 1/(32 w_fast) for the rotating-frame
/// models, w_fast bounding Delta plus deviations plus the peak Rabi rates.
double default_max_step(const EsstScenario& s);

struct RunInfo {
  double integrator_step = 0.0;
  std::size_t steps = 0;
  double t_end = 0.0;
  bool density_matrix = false;
};

struct EsstResult {
  std::size_t dim = 3;
  std::vector<double> times;
  std::vector<std::array<double, 4>> populations_left;  // P1..P4, P4 = 0 for dim 3
  std::vector<std::array<double, 4>> populations_right;
  std::vector<double> distinction;  // D(t) = |P3L - P3R|
  /// Envelopes as driven (after discretization and noise), P, Q, S.
  std::array<Envelope, 3> driven;
  RunInfo info;

  double p3_left() const { return populations_left.back()[kLevel3]; }
  double p3_right() const { return populations_right.back()[kLevel3]; }
};

/// Discretizes and perturbs the scenario's envelopes exactly as run_esst does.
std::array<Envelope, 3> driven_envelopes(const EsstScenario& s);

EsstResult run_esst(const EsstScenario& s);

/// Final-time D = |P3L - P3R|.
double fidelity_D(const EsstResult& r);

struct EnsembleSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> final_d;
  double mean_d = 0.0;
  double std_d = 0.0;
  double mean_p3_left = 0.0;
  double mean_p3_right = 0.0;
};

struct ExecutionOptions {
  std::size_t threads = 1;
  /// Noise realizations per point; ignored (1) for noiseless scenarios.
  std::size_t realizations = 25;
};

/// Runs `realizations` noise draws with seeds derived from (s.seed, index).
EnsembleSummary run_ensemble(const EsstScenario& s, const ExecutionOptions& opts);

/// Column-oriented result of a parameter sweep: one row per grid point.
struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

/// Final P3 of the two-photon path alone (Q absent) for P = S pulses of
/// shape `kind`, duration set for complete transfer, versus Delta / Omega_0.
/// Columns: ratio, P3.
SweepTable sweep_two_photon_transfer(PsShape kind, std::span<const double> ratios,
                                     const ExecutionOptions& opts = {});

/// Final D versus the carrier deviation of one pulse.
/// Columns: delta_rad_per_us, D_mean, D_std, P3L, P3R.
SweepTable sweep_frequency_deviation(const EsstScenario& s, FieldRole pulse,
                                     std::span<const double> deviations,
                                     const ExecutionOptions& opts = {});

/// Final D over a (tau2, tau3) grid; infinite lifetimes allowed.
/// Columns: tau2_us, tau3_us, D_mean, D_std, P3L, P3R.
SweepTable sweep_lifetimes(const EsstScenario& s, std::span<const double> tau2_us,
                           std::span<const double> tau3_us, const ExecutionOptions& opts = {});

/// Integer n with phi_q - phi_p + phi_s = n pi. Throws ConfigError when the
/// combination is more than 1e-9 away from a multiple of pi.
int interference_index(double phi_p, double phi_q, double phi_s);

/// Runs the scenario with field phases (phi_p, phi_q, phi_s). Even n excites
/// R, odd n excites L (see interference_index).
EsstResult phase_switch(const EsstScenario& s, double phi_p, double phi_q, double phi_s);

/// Handedness that ends up mostly in |3>.
Handedness excited_enantiomer(const EsstResult& r);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Rethrows the
/// first exception after all workers finish.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace enantiosim
