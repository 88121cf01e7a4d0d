#include "enantiosim/esst.hpp"

#include "enantiosim/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace enantiosim {

namespace {

// Seed streams below the field indices 0..2 are reserved for noise.
constexpr std::uint64_t kEnsembleStream = 0x45;

const DriveField& field_for(const FieldSet& fs, std::size_t i) {
  return i == 0 ? fs.p : (i == 1 ? fs.q : fs.s);
}

// End time of the run: rounded up to whole bins for discretized drives.
double run_end(const EsstScenario& s) {
  if (s.resolution <= 0.0) return s.duration;
  return std::ceil(s.duration / s.resolution - 1e-9) * s.resolution;
}

double max_step_for(const EsstScenario& s, const std::array<Envelope, 3>& driven) {
  if (s.max_step > 0.0) return s.max_step;
  if (s.model == Model::kLab4) {
    double fastest = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double dev = i == 0 ? s.deviations.p : (i == 1 ? s.deviations.q : s.deviations.s);
      fastest = std::max(fastest, std::abs(field_for(s.fields, i).carrier + dev));
    }
    return 2.0 * kPi / fastest / 40.0;
  }
  double fast = s.detuning + std::max({std::abs(s.deviations.p), std::abs(s.deviations.q),
                                       std::abs(s.deviations.s)});
  for (const auto& e : driven) fast += e.peak();
  return 1.0 / (32.0 * fast);
}

std::array<double, 4> populations_of(const QuantumState& st) {
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < st.dim(); ++i) p[i] = population(st, i);
  return p;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

void require_monotone(std::span<const double> grid, const std::string& what) {
  if (grid.empty()) throw ConfigError(what + " grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError(what + " grid must be strictly increasing");
  }
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::kRwa3: return "rwa3";
    case Model::kEffective: return "effective";
    case Model::kLab4: return "lab4";
  }
  return "?";
}

bool EsstScenario::has_noise() const {
  return std::any_of(noise.begin(), noise.end(), [](const auto& v) { return !v.empty(); });
}

void EsstScenario::validate() const {
  molecule.validate();
  fields.validate();
  if (!(std::isfinite(detuning) && detuning > 0.0)) {
    throw ConfigError("one-photon detuning Delta must be positive");
  }
  if (!(std::isfinite(duration) && duration > 0.0)) throw ConfigError("duration must be positive");
  if (!(std::isfinite(resolution) && resolution >= 0.0)) {
    throw ConfigError("time resolution must be >= 0");
  }
  if (!(std::isfinite(max_step) && max_step >= 0.0)) throw ConfigError("max_step must be >= 0");
  if (record_points < 2) throw ConfigError("record_points must be at least 2");
  if (model == Model::kLab4 && molecule.levels.size() < 4) {
    throw ConfigError("lab4 model needs a four-level molecule");
  }
  if (initial_populations.size() > 4) throw ConfigError("at most 4 initial populations");
  double total = 0.0;
  for (std::size_t i = 0; i < initial_populations.size(); ++i) {
    const double p = initial_populations[i];
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("initial populations must lie in [0, 1]");
    if (i >= dim() && p != 0.0) {
      throw ConfigError("initial population of level " + std::to_string(i + 1) +
                        " is outside the " + to_string(model) + " model");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("initial populations must sum to 1");
  for (const auto& list : noise) {
    for (const auto& n : list) n.validate();
  }
  if (has_noise() && resolution <= 0.0) {
    throw ConfigError("noise needs a time resolution dt > 0");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto [lo, hi] = field_for(fields, i).envelope.support();
    if (hi > duration + 1e-9 || lo < -1e-12) {
      std::ostringstream msg;
      msg << to_string(field_for(fields, i).role) << " pulse support [" << lo << ", " << hi
          << "] exceeds the run window [0, " << duration << "]";
      throw ConfigError(msg.str());
    }
  }
  if (lifetimes) (void)relaxation_channels(molecule, lifetimes->tau2_us, lifetimes->tau3_us);
}

void set_lab_frame_carriers(EsstScenario& s) {
  const auto& m = s.molecule;
  s.fields.q.carrier = m.transition(kLevel1, kLevel3).frequency;
  s.fields.p.carrier = m.transition(kLevel1, kLevel2).frequency - s.detuning;
  s.fields.s.carrier = m.transition(kLevel2, kLevel3).frequency - s.detuning;
}

void reseed(EsstScenario& s, std::uint64_t master_seed) {
  s.seed = master_seed;
  for (std::size_t f = 0; f < 3; ++f) {
    for (std::size_t k = 0; k < s.noise[f].size(); ++k) {
      s.noise[f][k].seed = derive_seed(master_seed, f, k);
    }
  }
}

double default_max_step(const EsstScenario& s) {
  EsstScenario copy = s;
  copy.max_step = 0.0;
  return max_step_for(copy, driven_envelopes(s));
}

std::array<Envelope, 3> driven_envelopes(const EsstScenario& s) {
  std::array<Envelope, 3> out;
  const double horizon = run_end(s);
  for (std::size_t i = 0; i < 3; ++i) {
    const Envelope& e = field_for(s.fields, i).envelope;
    if (s.resolution <= 0.0) {
      out[i] = e;
      continue;
    }
    PulseSchedule sched = e.is_schedule()
                              ? std::get<PiecewiseConstantPulse>(e.shape()).schedule
                              : discretize(e, s.resolution, horizon);
    for (const auto& n : s.noise[i]) sched = apply_noise(sched, n);
    out[i] = Envelope(PiecewiseConstantPulse{std::move(sched)});
  }
  return out;
}

EsstResult run_esst(const EsstScenario& s) {
  s.validate();
  EsstResult r;
  r.dim = s.dim();
  r.driven = driven_envelopes(s);

  FieldSet fields = s.fields;
  fields.p.envelope = r.driven[0];
  fields.q.envelope = r.driven[1];
  fields.s.envelope = r.driven[2];
  if (s.model == Model::kLab4) {
    fields.p.carrier += s.deviations.p;
    fields.q.carrier += s.deviations.q;
    fields.s.carrier += s.deviations.s;
  }

  const TimeGrid grid = make_grid(run_end(s), max_step_for(s, r.driven), s.resolution,
                                  s.record_points);
  r.info.t_end = grid.t_end;
  r.info.steps = grid.step_count();
  r.info.integrator_step = grid.integrator_step;

  std::vector<RelaxationChannel> channels;
  if (s.lifetimes) {
    for (const auto& c : relaxation_channels(s.molecule, s.lifetimes->tau2_us, s.lifetimes->tau3_us)) {
      // Channels into levels the model does not carry are dropped.
      if (c.to_level < r.dim && c.from_level < r.dim) channels.push_back(c);
    }
  }

  std::vector<double> init(s.initial_populations);
  init.resize(r.dim, 0.0);
  const auto pure_level = std::find(init.begin(), init.end(), 1.0);
  const bool use_vector = channels.empty() && pure_level != init.end() && !s.lifetimes;
  r.info.density_matrix = !use_vector;

  auto run_one = [&](Handedness h) {
    auto ham = [&]() {
      switch (s.model) {
        case Model::kRwa3: return build_rwa_3level(s.molecule, fields, h, s.detuning, s.deviations);
        case Model::kEffective:
          return build_effective_2level(s.molecule, fields, h, s.detuning, s.deviations);
        case Model::kLab4: return build_lab_frame_4level(s.molecule, fields, h);
      }
      throw ConfigError("unknown model");
    }();
    if (use_vector) {
      const auto level = static_cast<std::size_t>(pure_level - init.begin());
      return propagate_schrodinger(ham, QuantumState::basis(r.dim, level), grid);
    }
    return propagate_lindblad(ham, channels, QuantumState::mixture(init), grid);
  };

  const Trajectory left = run_one(Handedness::kLeft);
  const Trajectory right = run_one(Handedness::kRight);
  r.times = left.times;
  r.populations_left.reserve(r.times.size());
  r.populations_right.reserve(r.times.size());
  r.distinction.reserve(r.times.size());
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    r.populations_left.push_back(populations_of(left.states[k]));
    r.populations_right.push_back(populations_of(right.states[k]));
    r.distinction.push_back(
        std::abs(r.populations_left.back()[kLevel3] - r.populations_right.back()[kLevel3]));
  }
  return r;
}

double fidelity_D(const EsstResult& r) {
  if (r.distinction.empty()) throw ConfigError("result has no samples");
  return r.distinction.back();
}

EnsembleSummary run_ensemble(const EsstScenario& s, const ExecutionOptions& opts) {
  const std::size_t n = s.has_noise() ? std::max<std::size_t>(1, opts.realizations) : 1;
  EnsembleSummary out;
  out.seeds.resize(n);
  out.final_d.resize(n);
  std::vector<double> p3l(n);
  std::vector<double> p3r(n);
  for (std::size_t i = 0; i < n; ++i) out.seeds[i] = derive_seed(s.seed, kEnsembleStream, i);
  parallel_for(n, opts.threads, [&](std::size_t i) {
    EsstScenario run = s;
    reseed(run, out.seeds[i]);
    run.record_points = 2;
    const EsstResult r = run_esst(run);
    out.final_d[i] = fidelity_D(r);
    p3l[i] = r.p3_left();
    p3r[i] = r.p3_right();
  });
  out.mean_d = mean(out.final_d);
  out.std_d = sample_std(out.final_d);
  out.mean_p3_left = mean(p3l);
  out.mean_p3_right = mean(p3r);
  return out;
}

std::size_t SweepTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ConfigError("sweep table has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

SweepTable sweep_two_photon_transfer(PsShape kind, std::span<const double> ratios,
                                     const ExecutionOptions& opts) {
  require_monotone(ratios, "ratio");
  SweepTable t;
  t.columns = {"ratio", "P3"};
  t.rows.resize(ratios.size());
  parallel_for(ratios.size(), opts.threads, [&](std::size_t i) {
    constexpr double amplitude = 1.0;
    const double ratio = ratios[i];
    if (!(ratio > 0.0)) throw ConfigError("ratio Delta/Omega_0 must be positive");
    const double detuning = ratio * amplitude;
    const double duration = two_photon_transfer_duration(kind, amplitude, detuning);
    const Envelope ps = kind == PsShape::kSquare ? Envelope(SquarePulse{amplitude, 0.0, duration})
                                                 : Envelope(CosRampPulse{amplitude, duration});
    EsstScenario s;
    s.model = Model::kRwa3;
    s.detuning = detuning;
    s.duration = duration;
    s.record_points = 2;
    s.fields.p = {FieldRole::kP, {kLevel1, kLevel2}, 1.0, 0.0, ps};
    s.fields.q = {FieldRole::kQ, {kLevel1, kLevel3}, 1.0, 0.0, Envelope::off()};
    s.fields.s = {FieldRole::kS, {kLevel2, kLevel3}, 1.0, 0.0, ps};
    const EsstResult r = run_esst(s);
    // Without Q both enantiomers evolve identically.
    t.rows[i] = {ratio, r.p3_left()};
  });
  return t;
}

SweepTable sweep_frequency_deviation(const EsstScenario& s, FieldRole pulse,
                                     std::span<const double> deviations,
                                     const ExecutionOptions& opts) {
  require_monotone(deviations, "deviation");
  if (pulse != FieldRole::kP && pulse != FieldRole::kQ && pulse != FieldRole::kS) {
    throw ConfigError("frequency deviation sweep needs the P, Q, or S pulse");
  }
  SweepTable t;
  t.columns = {"delta_rad_per_us", "D_mean", "D_std", "P3L", "P3R"};
  t.rows.resize(deviations.size());
  // Points run one after another; each ensemble is parallel over seeds.
  for (std::size_t i = 0; i < deviations.size(); ++i) {
    EsstScenario point = s;
    double& target = pulse == FieldRole::kP   ? point.deviations.p
                     : pulse == FieldRole::kQ ? point.deviations.q
                                              : point.deviations.s;
    target = deviations[i];
    const EnsembleSummary e = run_ensemble(point, opts);
    t.rows[i] = {deviations[i], e.mean_d, e.std_d, e.mean_p3_left, e.mean_p3_right};
  }
  return t;
}

SweepTable sweep_lifetimes(const EsstScenario& s, std::span<const double> tau2_us,
                           std::span<const double> tau3_us, const ExecutionOptions& opts) {
  require_monotone(tau2_us, "tau2");
  require_monotone(tau3_us, "tau3");
  SweepTable t;
  t.columns = {"tau2_us", "tau3_us", "D_mean", "D_std", "P3L", "P3R"};
  t.rows.resize(tau2_us.size() * tau3_us.size());
  const std::size_t n = t.rows.size();
  const bool noisy = s.has_noise();
  // Noiseless points are parallelized across the grid, noisy ones across seeds.
  ExecutionOptions inner = opts;
  if (!noisy) inner.threads = 1;
  parallel_for(n, noisy ? 1 : opts.threads, [&](std::size_t k) {
    EsstScenario point = s;
    const double t2 = tau2_us[k / tau3_us.size()];
    const double t3 = tau3_us[k % tau3_us.size()];
    point.lifetimes = Lifetimes{t2, t3};
    const EnsembleSummary e = run_ensemble(point, inner);
    t.rows[k] = {t2, t3, e.mean_d, e.std_d, e.mean_p3_left, e.mean_p3_right};
  });
  return t;
}

int interference_index(double phi_p, double phi_q, double phi_s) {
  const double combo = phi_q - phi_p + phi_s;
  if (!std::isfinite(combo)) throw ConfigError("phases must be finite");
  const double n = std::round(combo / kPi);
  const double violation = std::abs(combo - n * kPi);
  if (violation > 1e-9) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "phase combination phi_q - phi_p + phi_s = " << combo
        << " is not a multiple of pi (off by " << violation
        << " rad); the interference would be neither fully constructive nor destructive";
    throw ConfigError(msg.str());
  }
  return static_cast<int>(n);
}

EsstResult phase_switch(const EsstScenario& s, double phi_p, double phi_q, double phi_s) {
  (void)interference_index(phi_p, phi_q, phi_s);
  EsstScenario run = s;
  run.fields.p.phase = phi_p;
  run.fields.q.phase = phi_q;
  run.fields.s.phase = phi_s;
  return run_esst(run);
}

Handedness excited_enantiomer(const EsstResult& r) {
  return r.p3_left() > r.p3_right() ? Handedness::kLeft : Handedness::kRight;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(std::max<std::size_t>(1, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace enantiosim
