#include "enantiosim/molecule.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace enantiosim {

std::string to_string(Handedness h) { return h == Handedness::kLeft ? "L" : "R"; }

std::string to_string(DipoleType t) {
  switch (t) {
    case DipoleType::kA: return "a";
    case DipoleType::kB: return "b";
    case DipoleType::kC: return "c";
  }
  return "?";
}

const TransitionSpec* MoleculeSpec::find_transition(std::size_t m, std::size_t n) const {
  for (const auto& tr : transitions) {
    if (tr.connects(m, n)) return &tr;
  }
  return nullptr;
}

const TransitionSpec& MoleculeSpec::transition(std::size_t m, std::size_t n) const {
  const auto* tr = find_transition(m, n);
  if (tr == nullptr) {
    throw ConfigError("molecule '" + name + "' has no transition between levels " +
                      std::to_string(m + 1) + " and " + std::to_string(n + 1));
  }
  return *tr;
}

double MoleculeSpec::coupling_sign(std::size_t m, std::size_t n, Handedness h) const {
  return transition(m, n).handedness_flip ? handedness_sign(h) : 1.0;
}

std::vector<double> MoleculeSpec::energies() const {
  std::vector<double> e;
  e.reserve(levels.size());
  for (const auto& l : levels) e.push_back(l.energy);
  return e;
}

void MoleculeSpec::validate() const {
  if (levels.size() < 3 || levels.size() > static_cast<std::size_t>(kMaxDim)) {
    throw ConfigError("molecule must have 3 or 4 levels");
  }
  if (levels.front().energy != 0.0) throw ConfigError("level |1> must be the zero-energy point");
  for (const auto& l : levels) {
    if (!std::isfinite(l.energy)) throw ConfigError("level energies must be finite");
  }
  for (const auto& tr : transitions) {
    if (tr.lower >= levels.size() || tr.upper >= levels.size() || tr.lower == tr.upper) {
      throw ConfigError("transition references an invalid level pair");
    }
    if (!(tr.dipole_debye >= 0.0) || !std::isfinite(tr.frequency) || !(tr.frequency > 0.0)) {
      throw ConfigError("transition dipole must be >= 0 and frequency > 0");
    }
    const double gap = std::abs(levels[tr.upper].energy - levels[tr.lower].energy);
    if (std::abs(gap - tr.frequency) > 1e-9 * std::max(1.0, gap)) {
      std::ostringstream msg;
      msg << "transition " << tr.lower + 1 << "-" << tr.upper + 1 << " frequency " << tr.frequency
          << " does not match the level energy gap " << gap;
      throw ConfigError(msg.str());
    }
  }
  int flips = 0;
  for (auto [m, n] : std::array<std::pair<std::size_t, std::size_t>, 3>{
           {{kLevel1, kLevel2}, {kLevel1, kLevel3}, {kLevel2, kLevel3}}}) {
    if (transition(m, n).handedness_flip) ++flips;
  }
  if (flips % 2 == 0) {
    throw ConfigError("cyclic triple must have an odd number of handedness-flipping transitions");
  }
}

MoleculeSpec cyclohexylmethanol_preset() {
  MoleculeSpec spec;
  spec.name = "cyclohexylmethanol";
  spec.rot_a_mhz = 3898.45;
  spec.rot_b_mhz = 1319.59;
  spec.rot_c_mhz = 1062.55;
  spec.levels = {{"1_01", 0.0}, {"2_12", 7059.0}, {"2_02", 4720.0}, {"1_11", 2575.0}};
  constexpr double mu_a = 0.4;
  constexpr double mu_b = 1.2;
  constexpr double mu_c = 0.8;
  spec.transitions = {
      {kLevel1, kLevel2, mu_b, DipoleType::kB, 7059.0, false},
      {kLevel1, kLevel3, mu_a, DipoleType::kA, 4720.0, true},
      {kLevel3, kLevel2, mu_c, DipoleType::kC, 2339.0, false},
      {kLevel1, kLevel4, mu_c, DipoleType::kC, 2575.0, false},
      {kLevel4, kLevel2, mu_a, DipoleType::kA, 4484.0, true},
  };
  return spec;
}

void FieldSet::validate() const {
  auto check = [](const DriveField& f, FieldRole role, std::size_t m, std::size_t n) {
    if (f.role != role) throw ConfigError("field in slot " + to_string(role) + " has a different role");
    const auto [a, b] = f.transition;
    if (!((a == m && b == n) || (a == n && b == m))) {
      throw ConfigError(to_string(role) + " field must drive levels " + std::to_string(m + 1) +
                        "-" + std::to_string(n + 1));
    }
    f.validate();
  };
  check(p, FieldRole::kP, kLevel1, kLevel2);
  check(q, FieldRole::kQ, kLevel1, kLevel3);
  check(s, FieldRole::kS, kLevel2, kLevel3);
}

namespace {

void check_rotating_frame_inputs(const MoleculeSpec& spec, const FieldSet& fields, double detuning,
                                 const FrequencyDeviations& dev) {
  fields.validate();
  if (!(std::isfinite(detuning) && detuning > 0.0)) {
    throw ConfigError("one-photon detuning Delta must be positive");
  }
  if (!std::isfinite(dev.p) || !std::isfinite(dev.q) || !std::isfinite(dev.s)) {
    throw ConfigError("frequency deviations must be finite");
  }
  // Sign lookups throw if the cyclic triple is incomplete.
  (void)spec.transition(kLevel1, kLevel2);
  (void)spec.transition(kLevel1, kLevel3);
  (void)spec.transition(kLevel2, kLevel3);
}

}  // namespace

TimeDependentOperator build_rwa_3level(const MoleculeSpec& spec, const FieldSet& fields,
                                       Handedness h, double detuning,
                                       const FrequencyDeviations& dev) {
  check_rotating_frame_inputs(spec, fields, detuning, dev);
  const double sp = spec.coupling_sign(kLevel1, kLevel2, h);
  const double sq = spec.coupling_sign(kLevel1, kLevel3, h);
  const double ss = spec.coupling_sign(kLevel2, kLevel3, h);
  const double detuning_p = detuning - dev.p;
  const double detuning_s = detuning - dev.s;
  auto fn = [=](double t) {
    Matrix m = Matrix::Zero(3, 3);
    const Complex h21 = 0.5 * sp * fields.p.envelope(t) *
                        std::polar(1.0, detuning_p * t - fields.p.phase);
    const Complex h23 = 0.5 * ss * fields.s.envelope(t) *
                        std::polar(1.0, detuning_s * t - fields.s.phase);
    const Complex h13 = 0.5 * sq * fields.q.envelope(t) *
                        std::polar(1.0, dev.q * t + fields.q.phase);
    m(1, 0) = h21;
    m(0, 1) = std::conj(h21);
    m(1, 2) = h23;
    m(2, 1) = std::conj(h23);
    m(0, 2) = h13;
    m(2, 0) = std::conj(h13);
    return m;
  };
  return {3, fn};
}

TimeDependentOperator build_effective_2level(const MoleculeSpec& spec, const FieldSet& fields,
                                             Handedness h, double detuning,
                                             const FrequencyDeviations& dev) {
  check_rotating_frame_inputs(spec, fields, detuning, dev);
  const double sp = spec.coupling_sign(kLevel1, kLevel2, h);
  const double sq = spec.coupling_sign(kLevel1, kLevel3, h);
  const double ss = spec.coupling_sign(kLevel2, kLevel3, h);
  const double detuning_p = detuning - dev.p;
  const double detuning_s = detuning - dev.s;
  if (!(detuning_p > 0.0 && detuning_s > 0.0)) {
    throw ConfigError("frequency deviations exceed the one-photon detuning");
  }
  auto fn = [=](double t) {
    const double op = fields.p.envelope(t);
    const double os = fields.s.envelope(t);
    const double oq = fields.q.envelope(t);
    // Two-photon coupling -V12 V23 averaged over both intermediate detunings.
    const double two_photon = sp * ss * op * os * 0.125 * (1.0 / detuning_p + 1.0 / detuning_s);
    const Complex h13 =
        0.5 * sq * oq * std::polar(1.0, dev.q * t + fields.q.phase) -
        two_photon * std::polar(1.0, (dev.p - dev.s) * t + fields.p.phase - fields.s.phase);
    const double stark1 = -op * op / (4.0 * detuning_p);
    const double stark3 = -os * os / (4.0 * detuning_s);
    // Only the differential shift matters on {|1>, |3>}; the common part is
    // a global phase and is removed.
    const double half_diff = 0.5 * (stark1 - stark3);
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = half_diff;
    m(2, 2) = -half_diff;
    m(0, 2) = h13;
    m(2, 0) = std::conj(h13);
    return m;
  };
  return {3, fn};
}

TimeDependentOperator build_lab_frame_4level(const MoleculeSpec& spec, const FieldSet& fields,
                                             Handedness h) {
  spec.validate();
  fields.validate();
  if (spec.levels.size() < 4) throw ConfigError("lab-frame model needs a four-level molecule");

  struct Coupling {
    Eigen::Index i;
    Eigen::Index j;
    int field;
    double sign;
  };
  std::vector<Coupling> couplings;
  const std::array<DriveField, 3> drive{fields.p, fields.q, fields.s};
  for (int f = 0; f < 3; ++f) {
    const auto [m, n] = drive[static_cast<std::size_t>(f)].transition;
    const DipoleType type = spec.transition(m, n).type;
    for (const auto& tr : spec.transitions) {
      if (tr.type != type) continue;
      couplings.push_back({static_cast<Eigen::Index>(tr.lower),
                           static_cast<Eigen::Index>(tr.upper), f,
                           tr.handedness_flip ? handedness_sign(h) : 1.0});
    }
  }
  const std::vector<double> energies = spec.energies();
  auto fn = [=](double t) {
    Matrix m = Matrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) m(i, i) = energies[static_cast<std::size_t>(i)];
    std::array<double, 3> value{};
    for (std::size_t f = 0; f < 3; ++f) {
      const double amp = drive[f].envelope(t);
      value[f] = amp == 0.0 ? 0.0 : amp * std::cos(drive[f].carrier * t + drive[f].phase);
    }
    for (const auto& c : couplings) {
      const double v = c.sign * value[static_cast<std::size_t>(c.field)];
      m(c.i, c.j) += v;
      m(c.j, c.i) += v;
    }
    return m;
  };
  return {4, fn, energies};
}

std::vector<RelaxationChannel> relaxation_channels(const MoleculeSpec& spec, double tau2_us,
                                                   double tau3_us) {
  std::vector<RelaxationChannel> out;
  auto add_decay = [&](std::size_t level, double tau) {
    if (std::isnan(tau) || !(tau > 0.0)) {
      throw ConfigError("lifetime of level " + std::to_string(level + 1) + " must be positive");
    }
    if (std::isinf(tau)) return;
    double total_dipole = 0.0;
    std::vector<std::pair<std::size_t, double>> targets;
    for (const auto& tr : spec.transitions) {
      if (tr.lower != level && tr.upper != level) continue;
      const std::size_t other = tr.lower == level ? tr.upper : tr.lower;
      if (spec.levels[other].energy >= spec.levels[level].energy) continue;
      targets.emplace_back(other, tr.dipole_debye);
      total_dipole += tr.dipole_debye;
    }
    if (total_dipole <= 0.0) return;
    std::sort(targets.begin(), targets.end());
    for (const auto& [to, mu] : targets) {
      out.push_back({level, to, mu / (tau * total_dipole)});
    }
  };
  add_decay(kLevel2, tau2_us);
  add_decay(kLevel3, tau3_us);
  return out;
}

}  // namespace enantiosim
