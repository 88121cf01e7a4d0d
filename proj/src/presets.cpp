#include "enantiosim/presets.hpp"

#include <cmath>

namespace enantiosim {

EsstScenario scenario_from_solution(const AreaSolution& sol, Model model, double detuning) {
  EsstScenario s;
  s.model = model;
  s.detuning = detuning;
  s.duration = sol.total_duration;
  s.fields.p = {FieldRole::kP, {kLevel1, kLevel2}, 1.0, 0.0, sol.p_envelope()};
  s.fields.q = {FieldRole::kQ, {kLevel1, kLevel3}, 1.0, 0.0, sol.q_envelope()};
  s.fields.s = {FieldRole::kS, {kLevel2, kLevel3}, 1.0, 0.0, sol.s_envelope()};
  set_lab_frame_carriers(s);
  return s;
}

EsstScenario fig3_scenario(QShape q) {
  constexpr double q_amp = 1.0;
  constexpr double ps_amp = 10.0;
  constexpr double detuning = 50.0;
  const auto sol = solve_area_conditions(PsShape::kCosRamp, q, ps_amp, q_amp, detuning, 0, 0);
  return scenario_from_solution(sol, Model::kRwa3, detuning);
}

EsstScenario fig5_scenario() {
  constexpr double detuning = 60.0;
  const auto sol = solve_area_conditions(PsShape::kCosRamp, QShape::kGaussian, 12.0, 2.0, detuning, 0, 0);
  EsstScenario s = scenario_from_solution(sol, Model::kLab4, detuning);
  s.resolution = 0.05;
  s.initial_populations = {0.998, 0.001, 0.001, 0.0};
  reseed(s, 2021);
  return s;
}

EsstScenario fig6_scenario(Fig6Noise noise) {
  EsstScenario s = fig5_scenario();
  s.resolution = 0.01;
  for (auto& list : s.noise) {
    if (noise == Fig6Noise::kAwgn || noise == Fig6Noise::kBoth) {
      list.push_back({.kind = NoiseKind::kAwgn, .snr_db = 10.0});
    }
    if (noise == Fig6Noise::kFluctuation || noise == Fig6Noise::kBoth) {
      list.push_back({.kind = NoiseKind::kUniformFluctuation, .eta = 0.5});
    }
  }
  reseed(s, 2021);
  return s;
}

std::vector<double> default_deviation_grid() {
  std::vector<double> g(41);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = -1.0 + 0.05 * static_cast<double>(i);
  g[20] = 0.0;
  return g;
}

std::vector<double> default_lifetime_grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = n == 1 ? 1.0 : std::pow(10.0, 3.0 * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return g;
}

std::vector<double> default_ratio_grid() {
  std::vector<double> g;
  for (double r = 1.0; r <= 20.0 + 1e-9; r += 0.25) g.push_back(r);
  return g;
}

}  // namespace enantiosim
