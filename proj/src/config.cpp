#include "enantiosim/config.hpp"

#include "enantiosim/presets.hpp"
#include "enantiosim/random.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace enantiosim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict view of a JSON object: every key read is marked, finish() rejects
// the rest.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("config key '" + path_ + "': expected an object");
  }

  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }

  bool has(const std::string& k) const {
    seen_.insert(k);
    return j_.contains(k) && !j_.at(k).is_null();
  }

  const Json& raw(const std::string& k) const {
    if (!has(k)) throw ConfigError("config key '" + key(k) + "' is required");
    return j_.at(k);
  }

  double number(const std::string& k) const { return to_number(raw(k), key(k)); }
  double number_or(const std::string& k, double fallback) const {
    return has(k) ? number(k) : fallback;
  }

  // Accepts numbers, null, and "inf".
  double lifetime_or(const std::string& k, double fallback) const {
    seen_.insert(k);
    if (!j_.contains(k)) return fallback;
    return to_lifetime(j_.at(k), key(k));
  }

  std::int64_t integer_or(const std::string& k, std::int64_t fallback) const {
    if (!has(k)) return fallback;
    const Json& v = j_.at(k);
    if (!v.is_number_integer()) throw ConfigError("config key '" + key(k) + "': expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t seed_or(const std::string& k, std::uint64_t fallback) const {
    if (!has(k)) return fallback;
    const Json& v = j_.at(k);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ConfigError("config key '" + key(k) + "': expected a non-negative integer seed");
  }

  bool boolean_or(const std::string& k, bool fallback) const {
    if (!has(k)) return fallback;
    const Json& v = j_.at(k);
    if (!v.is_boolean()) throw ConfigError("config key '" + key(k) + "': expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& k) const {
    const Json& v = raw(k);
    if (!v.is_string()) throw ConfigError("config key '" + key(k) + "': expected a string");
    return v.get<std::string>();
  }
  std::string string_or(const std::string& k, const std::string& fallback) const {
    return has(k) ? string(k) : fallback;
  }

  std::vector<double> numbers(const std::string& k, bool lifetimes = false) const {
    const Json& v = raw(k);
    if (!v.is_array()) throw ConfigError("config key '" + key(k) + "': expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string where = key(k) + "[" + std::to_string(i) + "]";
      out.push_back(lifetimes ? to_lifetime(v[i], where) : to_number(v[i], where));
    }
    return out;
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.contains(k)) throw ConfigError("unknown config key '" + key(k) + "'");
    }
  }

 private:
  static double to_number(const Json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("config key '" + where + "': expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("config key '" + where + "': must be finite");
    return x;
  }

  static double to_lifetime(const Json& v, const std::string& where) {
    if (v.is_null()) return kInf;
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    return to_number(v, where);
  }

  const Json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

// Runs `fn`, prefixing ConfigError messages with the key path.
template <typename F>
auto at_key(const std::string& path, F&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind("config key", 0) == 0 || what.rfind("unknown config key", 0) == 0) throw;
    throw ConfigError("config key '" + path + "': " + what);
  }
}

Json lifetime_json(double tau) { return std::isinf(tau) ? Json("inf") : Json(tau); }

Model parse_model(const std::string& s, const std::string& where) {
  for (auto m : {Model::kRwa3, Model::kEffective, Model::kLab4}) {
    if (to_string(m) == s) return m;
  }
  throw ConfigError("config key '" + where + "': unknown model '" + s +
                    "' (expected rwa3, effective, or lab4)");
}

PsShape parse_ps_shape(const std::string& s, const std::string& where) {
  for (auto p : {PsShape::kSquare, PsShape::kCosRamp}) {
    if (to_string(p) == s) return p;
  }
  throw ConfigError("config key '" + where + "': unknown P/S shape '" + s +
                    "' (expected square or cos_ramp)");
}

QShape parse_q_shape(const std::string& s, const std::string& where) {
  for (auto q : {QShape::kDelayedCosRamp, QShape::kGaussian, QShape::kCosSquared}) {
    if (to_string(q) == s) return q;
  }
  throw ConfigError("config key '" + where + "': unknown Q shape '" + s +
                    "' (expected delayed_cos_ramp, gaussian, or cos_squared)");
}

FieldRole parse_pulse(const std::string& s, const std::string& where) {
  if (s == "p") return FieldRole::kP;
  if (s == "q") return FieldRole::kQ;
  if (s == "s") return FieldRole::kS;
  throw ConfigError("config key '" + where + "': unknown pulse '" + s + "' (expected p, q, or s)");
}

std::string pulse_name(FieldRole r) {
  switch (r) {
    case FieldRole::kP: return "p";
    case FieldRole::kQ: return "q";
    case FieldRole::kS: return "s";
    default: return to_string(r);
  }
}

DipoleType parse_dipole(const std::string& s, const std::string& where) {
  if (s == "a") return DipoleType::kA;
  if (s == "b") return DipoleType::kB;
  if (s == "c") return DipoleType::kC;
  throw ConfigError("config key '" + where + "': dipole type must be a, b, or c");
}

constexpr std::array<const char*, 3> kPulseKeys{"p", "q", "s"};

DriveField& field_slot(FieldSet& f, std::size_t i) { return i == 0 ? f.p : (i == 1 ? f.q : f.s); }
const DriveField& field_slot(const FieldSet& f, std::size_t i) {
  return i == 0 ? f.p : (i == 1 ? f.q : f.s);
}

NoiseSpec noise_from_json(const Json& j, const std::string& path, bool& explicit_seed) {
  const Reader r(j, path);
  NoiseSpec n;
  const std::string kind = r.string("kind");
  if (kind == "awgn") {
    n.kind = NoiseKind::kAwgn;
    n.snr_db = r.number("snr_dB");
    n.reference_power = r.number_or("reference_power_rad2_per_us2", 0.0);
  } else if (kind == "uniform_fluctuation") {
    n.kind = NoiseKind::kUniformFluctuation;
    n.eta = r.number("eta");
  } else {
    throw ConfigError("config key '" + r.key("kind") + "': unknown noise kind '" + kind +
                      "' (expected awgn or uniform_fluctuation)");
  }
  explicit_seed = r.has("seed");
  n.seed = r.seed_or("seed", 0);
  r.finish();
  at_key(n.kind == NoiseKind::kAwgn ? r.key("snr_dB") : r.key("eta"), [&] {
    n.validate();
    return 0;
  });
  return n;
}

Json noise_to_json(const NoiseSpec& n) {
  Json j;
  if (n.kind == NoiseKind::kAwgn) {
    j["kind"] = "awgn";
    j["snr_dB"] = n.snr_db;
    j["reference_power_rad2_per_us2"] = n.reference_power;
  } else {
    j["kind"] = "uniform_fluctuation";
    j["eta"] = n.eta;
  }
  j["seed"] = n.seed;
  return j;
}

}  // namespace

MoleculeSpec molecule_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "cyclohexylmethanol") return cyclohexylmethanol_preset();
    throw ConfigError("config key '" + path + "': unknown molecule preset '" + j.get<std::string>() +
                      "'");
  }
  const Reader r(j, path);
  MoleculeSpec m;
  m.name = r.string_or("name", "custom");
  if (r.has("rotational_constants_MHz")) {
    const Reader rc(r.raw("rotational_constants_MHz"), r.key("rotational_constants_MHz"));
    m.rot_a_mhz = rc.number_or("A", 0.0);
    m.rot_b_mhz = rc.number_or("B", 0.0);
    m.rot_c_mhz = rc.number_or("C", 0.0);
    rc.finish();
  }
  const Json& levels = r.raw("levels");
  if (!levels.is_array()) throw ConfigError("config key '" + r.key("levels") + "': expected an array");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Reader lr(levels[i], r.key("levels") + "[" + std::to_string(i) + "]");
    m.levels.push_back({lr.string_or("label", ""), lr.number("energy_rad_per_us")});
    lr.finish();
  }
  const Json& trs = r.raw("transitions");
  if (!trs.is_array()) {
    throw ConfigError("config key '" + r.key("transitions") + "': expected an array");
  }
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const Reader tr(trs[i], r.key("transitions") + "[" + std::to_string(i) + "]");
    TransitionSpec t;
    const auto lower = tr.integer_or("lower", 0);
    const auto upper = tr.integer_or("upper", 0);
    if (lower < 1 || upper < 1) {
      throw ConfigError("config key '" + tr.key("lower") + "': levels are numbered from 1");
    }
    t.lower = static_cast<std::size_t>(lower - 1);
    t.upper = static_cast<std::size_t>(upper - 1);
    t.dipole_debye = tr.number("dipole_debye");
    t.type = parse_dipole(tr.string("type"), tr.key("type"));
    t.frequency = tr.number("frequency_rad_per_us");
    t.handedness_flip = tr.boolean_or("handedness_flip", false);
    tr.finish();
    m.transitions.push_back(t);
  }
  r.finish();
  at_key(path, [&] {
    m.validate();
    return 0;
  });
  return m;
}

Json molecule_to_json(const MoleculeSpec& m) {
  Json j;
  j["name"] = m.name;
  j["rotational_constants_MHz"] = {{"A", m.rot_a_mhz}, {"B", m.rot_b_mhz}, {"C", m.rot_c_mhz}};
  j["levels"] = Json::array();
  for (const auto& l : m.levels) {
    j["levels"].push_back({{"label", l.label}, {"energy_rad_per_us", l.energy}});
  }
  j["transitions"] = Json::array();
  for (const auto& t : m.transitions) {
    j["transitions"].push_back({{"lower", t.lower + 1},
                                {"upper", t.upper + 1},
                                {"dipole_debye", t.dipole_debye},
                                {"type", to_string(t.type)},
                                {"frequency_rad_per_us", t.frequency},
                                {"handedness_flip", t.handedness_flip}});
  }
  return j;
}

Envelope envelope_from_json(const Json& j, const std::string& path) {
  const Reader r(j, path);
  const std::string shape = r.string("shape");
  Envelope::Shape s;
  if (shape == "off") {
    s = SquarePulse{};
  } else if (shape == "square") {
    s = SquarePulse{r.number("amplitude_rad_per_us"), r.number_or("start_us", 0.0),
                    r.number("duration_us")};
  } else if (shape == "cos_ramp") {
    s = CosRampPulse{r.number("amplitude_rad_per_us"), r.number("period_us")};
  } else if (shape == "delayed_cos_ramp") {
    s = DelayedCosRampPulse{r.number("amplitude_rad_per_us"), r.number("period_us"),
                            r.number("delay_us")};
  } else if (shape == "gaussian") {
    s = GaussianPulse{r.number("amplitude_rad_per_us"), r.number("width_us"),
                      r.number_or("start_us", 0.0)};
  } else if (shape == "cos_squared") {
    s = CosSquaredPulse{r.number("amplitude_rad_per_us"), r.number("period_us")};
  } else if (shape == "piecewise") {
    s = PiecewiseConstantPulse{
        PulseSchedule{r.number_or("t0_us", 0.0), r.number("dt_us"), r.numbers("amplitudes_rad_per_us")}};
  } else {
    throw ConfigError("config key '" + r.key("shape") + "': unknown envelope shape '" + shape + "'");
  }
  r.finish();
  return at_key(path, [&] { return Envelope(std::move(s)); });
}

Json envelope_to_json(const Envelope& e) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SquarePulse>) {
          if (v.amplitude == 0.0 && v.duration == 0.0 && v.start == 0.0) return {{"shape", "off"}};
          return {{"shape", "square"},
                  {"amplitude_rad_per_us", v.amplitude},
                  {"start_us", v.start},
                  {"duration_us", v.duration}};
        } else if constexpr (std::is_same_v<T, CosRampPulse>) {
          return {{"shape", "cos_ramp"}, {"amplitude_rad_per_us", v.amplitude}, {"period_us", v.period}};
        } else if constexpr (std::is_same_v<T, DelayedCosRampPulse>) {
          return {{"shape", "delayed_cos_ramp"},
                  {"amplitude_rad_per_us", v.amplitude},
                  {"period_us", v.period},
                  {"delay_us", v.delay}};
        } else if constexpr (std::is_same_v<T, GaussianPulse>) {
          return {{"shape", "gaussian"},
                  {"amplitude_rad_per_us", v.amplitude},
                  {"width_us", v.width},
                  {"start_us", v.start}};
        } else if constexpr (std::is_same_v<T, CosSquaredPulse>) {
          return {{"shape", "cos_squared"}, {"amplitude_rad_per_us", v.amplitude}, {"period_us", v.period}};
        } else {
          return {{"shape", "piecewise"},
                  {"t0_us", v.schedule.t0},
                  {"dt_us", v.schedule.dt},
                  {"amplitudes_rad_per_us", v.schedule.amplitudes}};
        }
      },
      e.shape());
}

EsstScenario scenario_from_json(const Json& j, const std::string& path) {
  const Reader r(j, path);
  EsstScenario s;
  s.model = parse_model(r.string("model"), r.key("model"));
  s.molecule = r.has("molecule") ? molecule_from_json(r.raw("molecule"), r.key("molecule"))
                                 : cyclohexylmethanol_preset();
  s.detuning = r.number("detuning_rad_per_us");
  s.seed = r.seed_or("seed", 0);
  s.resolution = r.number_or("resolution_us", 0.0);
  s.max_step = r.number_or("max_step_us", 0.0);
  const auto points = r.integer_or("record_points", 200);
  if (points < 2) throw ConfigError("config key '" + r.key("record_points") + "': must be >= 2");
  s.record_points = static_cast<std::size_t>(points);
  if (r.has("initial_populations")) s.initial_populations = r.numbers("initial_populations");

  const Reader pulses(r.raw("pulses"), r.key("pulses"));
  double solved_duration = 0.0;
  if (pulses.has("area_solution")) {
    const Reader a(pulses.raw("area_solution"), pulses.key("area_solution"));
    const PsShape ps = parse_ps_shape(a.string("ps_shape"), a.key("ps_shape"));
    const QShape q = parse_q_shape(a.string("q_shape"), a.key("q_shape"));
    const double ps_amp = a.number("ps_amplitude_rad_per_us");
    const double q_amp = q == QShape::kCosSquared ? a.number_or("q_amplitude_rad_per_us", 0.0)
                                                  : a.number("q_amplitude_rad_per_us");
    const auto n_l = static_cast<int>(a.integer_or("n_l", 0));
    const auto n_r = static_cast<int>(a.integer_or("n_r", 0));
    a.finish();
    const auto sol = at_key(pulses.key("area_solution"), [&] {
      return solve_area_conditions(ps, q, ps_amp, q_amp, s.detuning, n_l, n_r);
    });
    s.fields = scenario_from_solution(sol, s.model, s.detuning).fields;
    solved_duration = sol.total_duration;
  } else {
    s.fields.p = {FieldRole::kP, {kLevel1, kLevel2}, 1.0, 0.0,
                  envelope_from_json(pulses.raw("p"), pulses.key("p"))};
    s.fields.q = {FieldRole::kQ, {kLevel1, kLevel3}, 1.0, 0.0,
                  envelope_from_json(pulses.raw("q"), pulses.key("q"))};
    s.fields.s = {FieldRole::kS, {kLevel2, kLevel3}, 1.0, 0.0,
                  envelope_from_json(pulses.raw("s"), pulses.key("s"))};
  }
  pulses.finish();
  at_key(r.key("molecule"), [&] {
    set_lab_frame_carriers(s);
    return 0;
  });
  s.duration = r.number_or("duration_us", solved_duration);

  if (r.has("carriers_rad_per_us")) {
    const Reader c(r.raw("carriers_rad_per_us"), r.key("carriers_rad_per_us"));
    for (std::size_t i = 0; i < 3; ++i) {
      auto& f = field_slot(s.fields, i);
      f.carrier = c.number_or(kPulseKeys[i], f.carrier);
    }
    c.finish();
  }
  if (r.has("phases_rad")) {
    const Reader ph(r.raw("phases_rad"), r.key("phases_rad"));
    for (std::size_t i = 0; i < 3; ++i) field_slot(s.fields, i).phase = ph.number_or(kPulseKeys[i], 0.0);
    ph.finish();
  }
  if (r.has("deviations_rad_per_us")) {
    const Reader d(r.raw("deviations_rad_per_us"), r.key("deviations_rad_per_us"));
    s.deviations = {d.number_or("p", 0.0), d.number_or("q", 0.0), d.number_or("s", 0.0)};
    d.finish();
  }
  if (r.has("noise")) {
    const Reader n(r.raw("noise"), r.key("noise"));
    for (std::size_t i = 0; i < 3; ++i) {
      if (!n.has(kPulseKeys[i])) continue;
      const Json& list = n.raw(kPulseKeys[i]);
      const std::string where = n.key(kPulseKeys[i]);
      if (!list.is_array()) throw ConfigError("config key '" + where + "': expected an array");
      for (std::size_t k = 0; k < list.size(); ++k) {
        bool explicit_seed = false;
        NoiseSpec spec = noise_from_json(list[k], where + "[" + std::to_string(k) + "]", explicit_seed);
        if (!explicit_seed) spec.seed = derive_seed(s.seed, i, k);
        s.noise[i].push_back(spec);
      }
    }
    n.finish();
  }
  if (r.has("lifetimes_us")) {
    const Reader l(r.raw("lifetimes_us"), r.key("lifetimes_us"));
    s.lifetimes = Lifetimes{l.lifetime_or("tau2_us", kInf), l.lifetime_or("tau3_us", kInf)};
    l.finish();
  }
  r.finish();
  at_key(path, [&] {
    s.validate();
    return 0;
  });
  return s;
}

Json scenario_to_json(const EsstScenario& s) {
  Json j;
  j["model"] = to_string(s.model);
  j["molecule"] = molecule_to_json(s.molecule);
  j["detuning_rad_per_us"] = s.detuning;
  j["duration_us"] = s.duration;
  j["resolution_us"] = s.resolution;
  j["max_step_us"] = s.max_step;
  j["record_points"] = s.record_points;
  j["initial_populations"] = s.initial_populations;
  j["seed"] = s.seed;
  Json pulses;
  Json carriers;
  Json phases;
  Json noise;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& f = field_slot(s.fields, i);
    pulses[kPulseKeys[i]] = envelope_to_json(f.envelope);
    carriers[kPulseKeys[i]] = f.carrier;
    phases[kPulseKeys[i]] = f.phase;
    noise[kPulseKeys[i]] = Json::array();
    for (const auto& n : s.noise[i]) noise[kPulseKeys[i]].push_back(noise_to_json(n));
  }
  j["pulses"] = pulses;
  j["carriers_rad_per_us"] = carriers;
  j["phases_rad"] = phases;
  j["deviations_rad_per_us"] = {{"p", s.deviations.p}, {"q", s.deviations.q}, {"s", s.deviations.s}};
  j["noise"] = noise;
  if (s.lifetimes) {
    j["lifetimes_us"] = {{"tau2_us", lifetime_json(s.lifetimes->tau2_us)},
                         {"tau3_us", lifetime_json(s.lifetimes->tau3_us)}};
  }
  return j;
}

SweepConfig sweep_from_json(const Json& j) {
  const Reader top(j, "");
  const Reader r(top.raw("sweep"), "sweep");
  SweepConfig c;
  const std::string kind = r.string("kind");
  const auto realizations = r.integer_or("realizations", 25);
  if (realizations < 1) throw ConfigError("config key 'sweep.realizations': must be >= 1");
  c.realizations = static_cast<std::size_t>(realizations);
  if (kind == "two_photon_transfer") {
    c.kind = SweepKind::kTwoPhotonTransfer;
    c.ratios = r.numbers("ratios");
    if (r.has("shapes")) {
      c.shapes.clear();
      const Json& shapes = r.raw("shapes");
      if (!shapes.is_array()) throw ConfigError("config key 'sweep.shapes': expected an array");
      for (std::size_t i = 0; i < shapes.size(); ++i) {
        const std::string where = "sweep.shapes[" + std::to_string(i) + "]";
        if (!shapes[i].is_string()) throw ConfigError("config key '" + where + "': expected a string");
        c.shapes.push_back(parse_ps_shape(shapes[i].get<std::string>(), where));
      }
    }
  } else if (kind == "frequency_deviation") {
    c.kind = SweepKind::kFrequencyDeviation;
    c.deviations = r.numbers("deviations_rad_per_us");
    if (r.has("pulses")) {
      c.pulses.clear();
      const Json& pulses = r.raw("pulses");
      if (!pulses.is_array()) throw ConfigError("config key 'sweep.pulses': expected an array");
      for (std::size_t i = 0; i < pulses.size(); ++i) {
        const std::string where = "sweep.pulses[" + std::to_string(i) + "]";
        if (!pulses[i].is_string()) throw ConfigError("config key '" + where + "': expected a string");
        c.pulses.push_back(parse_pulse(pulses[i].get<std::string>(), where));
      }
    }
  } else if (kind == "lifetimes") {
    c.kind = SweepKind::kLifetimes;
    c.tau2_us = r.numbers("tau2_us", true);
    c.tau3_us = r.numbers("tau3_us", true);
  } else {
    throw ConfigError("config key 'sweep.kind': unknown sweep '" + kind +
                      "' (expected two_photon_transfer, frequency_deviation, or lifetimes)");
  }
  r.finish();
  if (c.kind != SweepKind::kTwoPhotonTransfer) c.scenario = scenario_from_json(top.raw("scenario"));
  top.string_or("description", "");
  top.finish();
  return c;
}

Json sweep_to_json(const SweepConfig& c) {
  Json sweep;
  sweep["realizations"] = c.realizations;
  switch (c.kind) {
    case SweepKind::kTwoPhotonTransfer: {
      sweep["kind"] = "two_photon_transfer";
      sweep["ratios"] = c.ratios;
      Json shapes = Json::array();
      for (auto s : c.shapes) shapes.push_back(to_string(s));
      sweep["shapes"] = shapes;
      return {{"sweep", sweep}};
    }
    case SweepKind::kFrequencyDeviation: {
      sweep["kind"] = "frequency_deviation";
      sweep["deviations_rad_per_us"] = c.deviations;
      Json pulses = Json::array();
      for (auto p : c.pulses) pulses.push_back(pulse_name(p));
      sweep["pulses"] = pulses;
      break;
    }
    case SweepKind::kLifetimes: {
      sweep["kind"] = "lifetimes";
      Json t2 = Json::array();
      Json t3 = Json::array();
      for (double t : c.tau2_us) t2.push_back(lifetime_json(t));
      for (double t : c.tau3_us) t3.push_back(lifetime_json(t));
      sweep["tau2_us"] = t2;
      sweep["tau3_us"] = t3;
      break;
    }
  }
  return {{"sweep", sweep}, {"scenario", scenario_to_json(c.scenario)}};
}

M3wmConfig m3wm_from_json(const Json& j, const std::string& path) {
  const Reader r(j, path);
  M3wmConfig c;
  c.method = at_key(r.key("method"), [&] { return parse_m3wm_method(r.string("method")); });
  c.drive_rabi = r.number_or("drive_rabi_rad_per_us", c.drive_rabi);
  c.twist_rabi = r.number_or("twist_rabi_rad_per_us", c.twist_rabi);
  if (c.method == M3wmMethod::kResonantRaman && !r.has("drive_rabi_rad_per_us")) {
    c.drive_rabi = kRamanRatio * c.twist_rabi;
  }
  c.detuning = r.number_or("detuning_rad_per_us", 0.0);
  c.drive_duration = r.number_or("drive_duration_us", 0.0);
  c.twist_duration = r.number_or("twist_duration_us", 0.0);
  c.drive_frequency = r.number_or("drive_frequency_MHz", c.drive_frequency);
  c.twist_frequency = r.number_or("twist_frequency_MHz", c.twist_frequency);
  c.listen_frequency = r.number_or("listen_frequency_MHz", c.listen_frequency);
  const auto points = r.integer_or("record_points", 200);
  if (points < 2) throw ConfigError("config key '" + r.key("record_points") + "': must be >= 2");
  c.record_points = static_cast<std::size_t>(points);
  r.finish();
  return at_key(path, [&] {
    const M3wmConfig resolved = c.resolved();
    resolved.validate();
    return resolved;
  });
}

Json m3wm_to_json(const M3wmConfig& c) {
  return {{"method", to_string(c.method)},
          {"drive_rabi_rad_per_us", c.drive_rabi},
          {"twist_rabi_rad_per_us", c.twist_rabi},
          {"detuning_rad_per_us", c.detuning},
          {"drive_duration_us", c.drive_duration},
          {"twist_duration_us", c.twist_duration},
          {"drive_frequency_MHz", c.drive_frequency},
          {"twist_frequency_MHz", c.twist_frequency},
          {"listen_frequency_MHz", c.listen_frequency},
          {"record_points", c.record_points}};
}

M3wmRunConfig m3wm_run_from_json(const Json& j) {
  const Reader r(j, "");
  M3wmRunConfig c;
  c.m3wm = m3wm_from_json(r.raw("m3wm"));
  if (r.has("esst")) c.esst = scenario_from_json(r.raw("esst"), "esst");
  if (r.has("ee_values")) {
    c.ee_values = r.numbers("ee_values");
    for (double ee : c.ee_values) {
      if (std::abs(ee) > 1.0) throw ConfigError("config key 'ee_values': each ee must lie in [-1, 1]");
    }
  }
  c.gate = r.number_or("gate", 0.9);
  if (!(c.gate >= 0.0 && c.gate <= 1.0)) throw ConfigError("config key 'gate': must lie in [0, 1]");
  r.string_or("description", "");
  r.finish();
  return c;
}

Json m3wm_run_to_json(const M3wmRunConfig& c) {
  Json j{{"m3wm", m3wm_to_json(c.m3wm)}, {"ee_values", c.ee_values}, {"gate", c.gate}};
  if (c.esst) j["esst"] = scenario_to_json(*c.esst);
  return j;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("resolved_config")) return j.at("resolved_config");
  return j;
}

void apply_fast_model(EsstScenario& s) {
  if (s.model != Model::kLab4) return;
  if (s.initial_populations.size() > 3) {
    if (s.initial_populations[3] != 0.0) {
      throw ConfigError("--fast needs zero initial population in |4>");
    }
    s.initial_populations.resize(3);
  }
  s.model = Model::kRwa3;
  s.max_step = 0.0;
}

}  // namespace enantiosim
