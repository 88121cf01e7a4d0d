#pragma once

#include "enantiosim/esst.hpp"

#include <string>
#include <vector>

namespace enantiosim {

/// Scenario with P = S and Q taken from an area-condition solution, phases 0,
/// lab-frame carriers set, initially in |1>.
EsstScenario scenario_from_solution(const AreaSolution& sol, Model model, double detuning);

/// Omega_0 = 10, Omega'_0 = 1, Delta = 50 (rad/us), cos-ramp P/S, rwa3, n_l = n_r = 0.
EsstScenario fig3_scenario(QShape q);

/// Cyclohexylmethanol, Omega_0 = 12, Omega'_0 = 2, Delta = 60, Gaussian Q,
/// dt = 50 ns, rho_0 = 0.998|1><1| + 0.001|2><2| + 0.001|3><3|, lab4.
EsstScenario fig5_scenario();

enum class Fig6Noise { kNone, kAwgn, kFluctuation, kBoth };

/// fig5_scenario() at dt = 10 ns with AWGN (10 dB) and/or eta = 0.5
/// fluctuations on all three pulses.
EsstScenario fig6_scenario(Fig6Noise noise);

/// Default deviation grid: 41 points over [-1, 1] rad/us.
std::vector<double> default_deviation_grid();

/// Default lifetime grid: n log-spaced points over [1, 1000] us.
std::vector<double> default_lifetime_grid(std::size_t n = 21);

/// Default Delta / Omega_0 grid for the two-photon transfer sweep.
std::vector<double> default_ratio_grid();

}  // namespace enantiosim
