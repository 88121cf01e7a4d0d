#pragma once

#include "enantiosim/esst.hpp"
#include "enantiosim/m3wm.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace enantiosim {

using Json = nlohmann::json;

// JSON configuration schema. Every physical quantity carries its unit in the
// key (_rad_per_us, _us, _dB). Unknown keys are rejected with their path.

MoleculeSpec molecule_from_json(const Json& j, const std::string& path = "molecule");
Json molecule_to_json(const MoleculeSpec& m);

Envelope envelope_from_json(const Json& j, const std::string& path);
Json envelope_to_json(const Envelope& e);

/// Scenario from a config object. Pulses come either from an
/// "area_solution" block or from explicit "p", "q", "s" envelopes.
EsstScenario scenario_from_json(const Json& j, const std::string& path = "scenario");
/// Fully explicit form: envelopes, carriers, noise seeds and defaults filled.
Json scenario_to_json(const EsstScenario& s);

enum class SweepKind { kTwoPhotonTransfer, kFrequencyDeviation, kLifetimes };

struct SweepConfig {
  SweepKind kind = SweepKind::kFrequencyDeviation;
  EsstScenario scenario;  // unused by two-photon transfer
  std::vector<double> ratios;
  std::vector<PsShape> shapes{PsShape::kSquare, PsShape::kCosRamp};
  std::vector<FieldRole> pulses{FieldRole::kP, FieldRole::kQ, FieldRole::kS};
  std::vector<double> deviations;
  std::vector<double> tau2_us;
  std::vector<double> tau3_us;
  std::size_t realizations = 25;
};

SweepConfig sweep_from_json(const Json& j);
Json sweep_to_json(const SweepConfig& c);

M3wmConfig m3wm_from_json(const Json& j, const std::string& path = "m3wm");
Json m3wm_to_json(const M3wmConfig& c);

struct M3wmRunConfig {
  M3wmConfig m3wm;
  std::optional<EsstScenario> esst;  // ideal ESST when absent
  std::vector<double> ee_values{-1.0, 0.0, 1.0};
  double gate = 0.9;
};

M3wmRunConfig m3wm_run_from_json(const Json& j);
Json m3wm_run_to_json(const M3wmRunConfig& c);

/// Parses a file. Manifests are accepted wherever their resolved_config is.
Json load_config_file(const std::string& path);

/// Drops |4> and switches lab4 to rwa3 (population of |4> must be zero).
void apply_fast_model(EsstScenario& s);

}  // namespace enantiosim
