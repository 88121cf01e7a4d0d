#include "enantiosim/cli.hpp"

#include "enantiosim/config.hpp"
#include "enantiosim/csv.hpp"
#include "enantiosim/presets.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#ifndef ENANTIOSIM_VERSION
#define ENANTIOSIM_VERSION "0.0.0"
#endif

namespace enantiosim {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::size_t threads = 0;
  bool fast = false;
  std::string figure;
  std::string preset;
};

using Clock = std::chrono::steady_clock;

std::size_t resolve_threads(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ENANTIOSIM_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("ENANTIOSIM_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---- preset configs -------------------------------------------------------

Json area_pulses(const std::string& q_shape, double ps_amp, double q_amp) {
  Json a{{"ps_shape", "cos_ramp"}, {"q_shape", q_shape}, {"ps_amplitude_rad_per_us", ps_amp},
         {"n_l", 0}, {"n_r", 0}};
  if (q_shape != "cos_squared") a["q_amplitude_rad_per_us"] = q_amp;
  return {{"area_solution", a}};
}

Json fig3_preset(const std::string& q_shape) {
  return {{"description", "Q waveform " + q_shape + ", Omega_0 = 10 Omega'_0, Delta = 50 Omega'_0"},
          {"scenario",
           {{"model", "rwa3"},
            {"detuning_rad_per_us", 50.0},
            {"pulses", area_pulses(q_shape, 10.0, 1.0)}}}};
}

Json fig5_scenario_json() {
  return {{"model", "lab4"},
          {"molecule", "cyclohexylmethanol"},
          {"detuning_rad_per_us", 60.0},
          {"resolution_us", 0.05},
          {"initial_populations", {0.998, 0.001, 0.001, 0.0}},
          {"seed", 2021},
          {"pulses", area_pulses("gaussian", 12.0, 2.0)}};
}

Json fig6_scenario_json(const std::string& noise) {
  Json s = fig5_scenario_json();
  s["resolution_us"] = 0.01;
  Json entry;
  if (noise == "awgn") entry = {{"kind", "awgn"}, {"snr_dB", 10.0}};
  if (noise == "fluctuation") entry = {{"kind", "uniform_fluctuation"}, {"eta", 0.5}};
  if (!entry.is_null()) s["noise"] = {{"p", {entry}}, {"q", {entry}}, {"s", {entry}}};
  return s;
}

Json grid_json(const std::vector<double>& g) { return Json(g); }

Json m3wm_preset(const std::string& method) {
  const M3wmConfig c = default_m3wm_config(parse_m3wm_method(method));
  Json m{{"method", method},
         {"drive_rabi_rad_per_us", c.drive_rabi},
         {"twist_rabi_rad_per_us", c.twist_rabi}};
  if (c.method == M3wmMethod::kEffectiveTwoPhoton) m["detuning_rad_per_us"] = c.detuning;
  return {{"description", "lab-frame ESST (fig5 preset) followed by M3WM (" + method + ")"},
          {"m3wm", m},
          {"esst", fig5_scenario_json()},
          {"ee_values", {-1.0, 0.0, 1.0}},
          {"gate", 0.9}};
}

Json preset_json(const std::string& name) {
  if (name == "cyclohexylmethanol") return molecule_to_json(cyclohexylmethanol_preset());
  if (name == "fig2") {
    return {{"description", "two-photon transfer versus Delta / Omega_0"},
            {"sweep",
             {{"kind", "two_photon_transfer"},
              {"shapes", {"square", "cos_ramp"}},
              {"ratios", grid_json(default_ratio_grid())}}}};
  }
  if (name == "fig3_delayed_cos_ramp") return fig3_preset("delayed_cos_ramp");
  if (name == "fig3_gaussian") return fig3_preset("gaussian");
  if (name == "fig3_cos_squared") return fig3_preset("cos_squared");
  if (name == "fig5") {
    return {{"description", "lab-frame four-level run, dt = 50 ns, mixed initial state"},
            {"scenario", fig5_scenario_json()}};
  }
  if (name == "fig6_awgn") {
    return {{"description", "AWGN with R_SN = 10 dB on all pulses, dt = 10 ns"},
            {"scenario", fig6_scenario_json("awgn")}};
  }
  if (name == "fig6_fluctuation") {
    return {{"description", "uniform amplitude fluctuation eta = 0.5 on all pulses, dt = 10 ns"},
            {"scenario", fig6_scenario_json("fluctuation")}};
  }
  if (name == "fig7") {
    return {{"description", "final D versus the carrier deviation of each pulse"},
            {"sweep",
             {{"kind", "frequency_deviation"},
              {"pulses", {"p", "q", "s"}},
              {"deviations_rad_per_us", grid_json(default_deviation_grid())},
              {"realizations", 25}}},
            {"scenario", fig6_scenario_json("none")}};
  }
  if (name == "fig8") {
    return {{"description", "final D over a (tau2, tau3) lifetime grid"},
            {"sweep",
             {{"kind", "lifetimes"},
              {"tau2_us", grid_json(default_lifetime_grid())},
              {"tau3_us", grid_json(default_lifetime_grid())},
              {"realizations", 25}}},
            {"scenario", fig6_scenario_json("none")}};
  }
  if (name.rfind("m3wm_", 0) == 0) return m3wm_preset(name.substr(5));
  throw ConfigError("unknown preset '" + name + "'");
}

// ---- tables ---------------------------------------------------------------

CsvTable trajectory_table(const EsstResult& r) {
  CsvTable t{{"t_us", "P1L", "P2L", "P3L", "P4L", "P1R", "P2R", "P3R", "P4R", "D"}, {}};
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const auto& l = r.populations_left[k];
    const auto& rr = r.populations_right[k];
    t.add({r.times[k], l[0], l[1], l[2], l[3], rr[0], rr[1], rr[2], rr[3], r.distinction[k]});
  }
  return t;
}

// Stair-step samples for discretized drives (value of the bin starting at
// t), uniform samples otherwise.
CsvTable waveform_table(const EsstScenario& s, const std::array<Envelope, 3>& driven, double t_end,
                        bool with_effective) {
  CsvTable t{{"t_us", "Omega_p", "Omega_q", "Omega_s"}, {}};
  if (with_effective) t.header.push_back("Omega_eff");
  std::vector<double> times;
  if (s.resolution > 0.0) {
    const auto bins = static_cast<std::size_t>(std::llround(t_end / s.resolution));
    for (std::size_t k = 0; k <= bins; ++k) times.push_back(static_cast<double>(k) * s.resolution);
  } else {
    constexpr std::size_t n = 400;
    for (std::size_t k = 0; k <= n; ++k) times.push_back(t_end * static_cast<double>(k) / n);
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    // The last stair-step row repeats the final bin.
    const double probe = s.resolution > 0.0
                             ? std::min(times[k], t_end - 0.5 * s.resolution) + 0.5 * s.resolution
                             : times[k];
    std::vector<double> row{times[k], driven[0](probe), driven[1](probe), driven[2](probe)};
    if (with_effective) row.push_back(row[1] * row[3] / (2.0 * s.detuning));
    t.add(std::move(row));
  }
  return t;
}

// ---- manifest -------------------------------------------------------------

Json seeds_json(const EsstScenario& s) {
  Json noise;
  const char* keys[3] = {"p", "q", "s"};
  for (std::size_t i = 0; i < 3; ++i) {
    noise[keys[i]] = Json::array();
    for (const auto& n : s.noise[i]) noise[keys[i]].push_back(n.seed);
  }
  return {{"master", s.seed}, {"noise", noise}};
}

Json solver_json(const EsstScenario& s, const RunInfo& info) {
  return {{"integrator", "classical Runge-Kutta 4, fixed step"},
          {"model", to_string(s.model)},
          {"frame", s.model == Model::kLab4 ? "interaction picture of the level energies"
                                             : "rotating frame"},
          {"step_us", info.integrator_step},
          {"steps", info.steps},
          {"t_end_us", info.t_end},
          {"density_matrix", info.density_matrix},
          {"awgn_power", "mean square between the first and last nonzero bin unless "
                         "reference_power_rad2_per_us2 is set"}};
}

class Manifest {
 public:
  Manifest(std::string command, const Options& opt) : start_(Clock::now()) {
    j_["tool"] = "enantiosim";
    j_["version"] = ENANTIOSIM_VERSION;
    j_["command"] = std::move(command);
    j_["threads"] = opt.threads;
    j_["fast"] = opt.fast;
    j_["outputs"] = Json::array();
  }
  Json& operator[](const char* k) { return j_[k]; }
  void output(const fs::path& dir, const std::string& name, const CsvTable& t) {
    write_csv(dir / name, t);
    j_["outputs"].push_back(name);
  }
  void write(const fs::path& dir) {
    j_["timing"] = {{"wall_seconds", std::chrono::duration<double>(Clock::now() - start_).count()}};
    write_file_atomic(dir / "manifest.json", j_.dump(2) + "\n");
  }

 private:
  Json j_;
  Clock::time_point start_;
};

// ---- commands -------------------------------------------------------------

Json read_config(const Options& opt) {
  if (opt.config.empty()) throw ConfigError("--config is required for this command");
  return load_config_file(opt.config);
}

EsstScenario scenario_from_top(const Json& top, const Options& opt) {
  if (!top.is_object() || !top.contains("scenario")) {
    throw ConfigError("config key 'scenario' is required");
  }
  for (const auto& [k, v] : top.items()) {
    if (k != "scenario" && k != "description") throw ConfigError("unknown config key '" + k + "'");
  }
  EsstScenario s = scenario_from_json(top.at("scenario"));
  if (opt.seed) reseed(s, *opt.seed);
  if (opt.fast) apply_fast_model(s);
  return s;
}

void apply_overrides(SweepConfig& c, const Options& opt) {
  if (c.kind == SweepKind::kTwoPhotonTransfer) return;
  if (opt.seed) reseed(c.scenario, *opt.seed);
  if (opt.fast) apply_fast_model(c.scenario);
}

EsstResult simulate_into(const EsstScenario& s, const fs::path& dir, const std::string& prefix,
                         Manifest& m, std::ostream& out, bool with_effective = false) {
  const EsstResult r = run_esst(s);
  m.output(dir, prefix.empty() ? "trajectory.csv" : prefix + "_trajectory.csv", trajectory_table(r));
  m.output(dir, prefix.empty() ? "waveforms.csv" : prefix + "_waveforms.csv",
           waveform_table(s, r.driven, r.info.t_end, with_effective));
  out << (prefix.empty() ? std::string("simulate") : prefix) << ": final D = " << format_number(fidelity_D(r))
      << " (P3L = " << format_number(r.p3_left()) << ", P3R = " << format_number(r.p3_right()) << ")\n";
  return r;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  const Json top = read_config(opt);
  const EsstScenario s = scenario_from_top(top, opt);
  const fs::path dir(opt.out_dir);
  Manifest m("simulate", opt);
  const EsstResult r = simulate_into(s, dir, "", m, out);
  m["resolved_config"] = {{"scenario", scenario_to_json(s)}};
  m["solver"] = solver_json(s, r.info);
  m["seeds"] = seeds_json(s);
  m["results"] = {{"final_D", fidelity_D(r)}, {"P3L", r.p3_left()}, {"P3R", r.p3_right()}};
  m.write(dir);
  return kExitOk;
}

std::string shape_column(PsShape s) { return s == PsShape::kSquare ? "P3_square" : "P3_shaped"; }

std::string pulse_column(FieldRole r) {
  return r == FieldRole::kP ? "D_P" : (r == FieldRole::kQ ? "D_Q" : "D_S");
}

// Writes `<stem>.csv` in the compact figure schema plus per-pulse detail.
void run_sweep(const SweepConfig& c, const Options& opt, const fs::path& dir, const std::string& stem,
               Manifest& m, std::ostream& out) {
  ExecutionOptions exec{opt.threads, c.realizations};
  switch (c.kind) {
    case SweepKind::kTwoPhotonTransfer: {
      CsvTable t{{"ratio"}, {}};
      std::vector<SweepTable> parts;
      for (auto shape : c.shapes) {
        t.header.push_back(shape_column(shape));
        parts.push_back(sweep_two_photon_transfer(shape, c.ratios, exec));
      }
      for (std::size_t i = 0; i < c.ratios.size(); ++i) {
        std::vector<double> row{c.ratios[i]};
        for (const auto& p : parts) row.push_back(p.rows[i][1]);
        t.add(std::move(row));
      }
      m.output(dir, stem + ".csv", t);
      break;
    }
    case SweepKind::kFrequencyDeviation: {
      CsvTable t{{"delta"}, {}};
      std::vector<SweepTable> parts;
      for (auto pulse : c.pulses) {
        t.header.push_back(pulse_column(pulse));
        parts.push_back(sweep_frequency_deviation(c.scenario, pulse, c.deviations, exec));
        const SweepTable& p = parts.back();
        CsvTable detail{p.columns, p.rows};
        std::string suffix = pulse_column(pulse).substr(2);
        for (auto& ch : suffix) ch = static_cast<char>(std::tolower(ch));
        m.output(dir, stem + "_" + suffix + "_detail.csv", detail);
      }
      for (std::size_t i = 0; i < c.deviations.size(); ++i) {
        std::vector<double> row{c.deviations[i]};
        for (const auto& p : parts) row.push_back(p.rows[i][1]);
        t.add(std::move(row));
      }
      m.output(dir, stem + ".csv", t);
      break;
    }
    case SweepKind::kLifetimes: {
      const SweepTable p = sweep_lifetimes(c.scenario, c.tau2_us, c.tau3_us, exec);
      CsvTable t{{"tau2_us", "tau3_us", "D_final"}, {}};
      for (const auto& row : p.rows) t.add({row[0], row[1], row[2]});
      m.output(dir, stem + ".csv", t);
      m.output(dir, stem + "_detail.csv", CsvTable{p.columns, p.rows});
      break;
    }
  }
  out << stem << ": wrote " << (dir / (stem + ".csv")).string() << "\n";
}

Json sweep_manifest_config(const SweepConfig& c) { return sweep_to_json(c); }

int cmd_sweep(const Options& opt, std::ostream& out) {
  SweepConfig c = sweep_from_json(read_config(opt));
  apply_overrides(c, opt);
  const fs::path dir(opt.out_dir);
  Manifest m("sweep", opt);
  run_sweep(c, opt, dir, "sweep", m, out);
  m["resolved_config"] = sweep_manifest_config(c);
  if (c.kind != SweepKind::kTwoPhotonTransfer) m["seeds"] = seeds_json(c.scenario);
  m.write(dir);
  return kExitOk;
}

EsstScenario preset_scenario(const std::string& name, const Options& opt) {
  return scenario_from_top(preset_json(name), opt);
}

int cmd_reproduce(const Options& opt, std::ostream& out) {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), opt.figure) == ids.end()) {
    throw ConfigError("unknown figure '" + opt.figure + "' (expected fig2, fig3, fig5, fig6, fig7, or fig8)");
  }
  const fs::path dir(opt.out_dir);
  Manifest m("reproduce " + opt.figure, opt);
  const std::string& fig = opt.figure;
  if (fig == "fig2" || fig == "fig7" || fig == "fig8") {
    SweepConfig c = sweep_from_json(opt.config.empty() ? preset_json(fig) : read_config(opt));
    apply_overrides(c, opt);
    run_sweep(c, opt, dir, fig, m, out);
    m["resolved_config"] = sweep_manifest_config(c);
  } else if (fig == "fig3") {
    const std::array<std::pair<const char*, const char*>, 3> panels{
        {{"fig3_delayed_cos_ramp", "b"}, {"fig3_gaussian", "d"}, {"fig3_cos_squared", "f"}}};
    Json resolved = Json::object();
    for (const auto& [preset, panel] : panels) {
      const EsstScenario s = preset_scenario(preset, opt);
      const EsstResult r = run_esst(s);
      const std::string wave_panel(1, static_cast<char>(panel[0] - 1));
      m.output(dir, "fig3_" + wave_panel + ".csv", waveform_table(s, r.driven, r.info.t_end, true));
      m.output(dir, std::string("fig3_") + panel + ".csv", trajectory_table(r));
      out << preset << ": final D = " << format_number(fidelity_D(r)) << "\n";
      resolved[preset] = {{"scenario", scenario_to_json(s)}};
    }
    m["resolved_config"] = resolved;
  } else if (fig == "fig5") {
    const EsstScenario s = opt.config.empty() ? preset_scenario("fig5", opt)
                                              : scenario_from_top(read_config(opt), opt);
    const EsstResult r = run_esst(s);
    m.output(dir, "fig5_a.csv", waveform_table(s, r.driven, r.info.t_end, false));
    m.output(dir, "fig5_b.csv", trajectory_table(r));
    out << "fig5: final D = " << format_number(fidelity_D(r)) << "\n";
    m["resolved_config"] = {{"scenario", scenario_to_json(s)}};
    m["solver"] = solver_json(s, r.info);
    m["seeds"] = seeds_json(s);
  } else if (fig == "fig6") {
    Json resolved = Json::object();
    const std::array<std::pair<const char*, const char*>, 2> panels{
        {{"fig6_awgn", "a"}, {"fig6_fluctuation", "c"}}};
    for (const auto& [preset, panel] : panels) {
      const EsstScenario s = preset_scenario(preset, opt);
      const EsstResult r = run_esst(s);
      const std::string d_panel(1, static_cast<char>(panel[0] + 1));
      m.output(dir, std::string("fig6_") + panel + ".csv", waveform_table(s, r.driven, r.info.t_end, false));
      m.output(dir, "fig6_" + d_panel + ".csv", trajectory_table(r));
      out << preset << ": final D = " << format_number(fidelity_D(r)) << " (one realization)\n";
      resolved[preset] = {{"scenario", scenario_to_json(s)}};
    }
    m["resolved_config"] = resolved;
  }
  m.write(dir);
  return kExitOk;
}

int cmd_m3wm(const Options& opt, std::ostream& out) {
  M3wmRunConfig c = m3wm_run_from_json(read_config(opt));
  if (c.esst) {
    if (opt.seed) reseed(*c.esst, *opt.seed);
    if (opt.fast) apply_fast_model(*c.esst);
  }
  const fs::path dir(opt.out_dir);
  Manifest m("m3wm", opt);

  const Trajectory traj = m3wm_trajectory(c.m3wm, QuantumState::basis(3, kM3wmA));
  CsvTable coh{{"t_us", "P_202", "P_303", "P_313", "abs_rho_202_313"}, {}};
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& st = traj.states[k];
    coh.add({traj.times[k], population(st, kM3wmA), population(st, kM3wmB), population(st, kM3wmC),
             std::abs(coherence(st, kM3wmA, kM3wmC))});
  }
  m.output(dir, "coherence.csv", coh);

  CsvTable summary{{"ee", "D", "P3L", "P3R", "coherence", "amplitude"}, {}};
  std::optional<PipelineResult> pipe;
  if (c.esst) pipe = run_pipeline(*c.esst, c.m3wm, 0.0, c.gate);
  const double coherence_value = std::abs(coherence(traj.final_state(), kM3wmA, kM3wmC));
  for (double ee : c.ee_values) {
    if (pipe) {
      const double x_l = 0.5 * (1.0 - ee);
      const double x_r = 0.5 * (1.0 + ee);
      const double amp = ListenSignalModel{}.triple_product_magnitude * 2.0 * pipe->coherence *
                         (x_l * pipe->p3_left - x_r * pipe->p3_right);
      summary.add({ee, pipe->d, pipe->p3_left, pipe->p3_right, pipe->coherence, amp});
    } else {
      summary.add({ee, 1.0, 0.0, 1.0, coherence_value,
                   ideal_pipeline_amplitude(c.m3wm, Handedness::kRight, ee)});
    }
  }
  m.output(dir, "m3wm_summary.csv", summary);
  out << "m3wm (" << to_string(c.m3wm.method) << "): |rho_13| = " << format_number(coherence_value)
      << ", duration = " << format_number(c.m3wm.total_duration()) << " us\n";
  m["resolved_config"] = m3wm_run_to_json(c);
  if (c.esst) m["seeds"] = seeds_json(*c.esst);
  m.write(dir);
  return kExitOk;
}

int cmd_export(const Options& opt, std::ostream& out) {
  const Json j = preset_json(opt.preset);
  const std::string text = j.dump(2) + "\n";
  if (opt.out_dir.empty() || opt.out_dir == "-") {
    out << text;
  } else {
    write_file_atomic(fs::path(opt.out_dir) / (opt.preset + ".json"), text);
  }
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig2", "fig3", "fig5", "fig6", "fig7", "fig8"};
  return ids;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "cyclohexylmethanol", "fig2",      "fig3_delayed_cos_ramp",  "fig3_gaussian",
      "fig3_cos_squared",   "fig5",      "fig6_awgn",              "fig6_fluctuation",
      "fig7",               "fig8",      "m3wm_drive_then_twist",  "m3wm_effective_two_photon",
      "m3wm_resonant_raman"};
  return names;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Enantiomer-selective state transfer simulator", "enantiosim"};
  app.set_version_flag("--version", ENANTIOSIM_VERSION);
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed overriding the config");
  app.add_option("--config", opt.config, "JSON config or manifest");
  app.add_option("--out-dir", opt.out_dir, "Output directory");
  app.add_option("--threads", opt.threads, "Worker threads (default ENANTIOSIM_THREADS or all cores)");
  app.add_flag("--fast", opt.fast, "Use the rotating-wave three-level model instead of lab4");

  auto* simulate = app.add_subcommand("simulate", "Run one scenario for both enantiomers");
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate the data behind a figure");
  reproduce->add_option("figure", opt.figure, "fig2, fig3, fig5, fig6, fig7, or fig8")->required();
  auto* m3wm = app.add_subcommand("m3wm", "Prepare M3WM coherence and predict the listen signal");
  auto* exporter = app.add_subcommand("export-preset", "Print a bundled config or the molecule preset");
  exporter->add_option("name", opt.preset, "Preset name")->required();
  for (auto* sub : {simulate, sweep, reproduce, m3wm, exporter}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ENANTIOSIM_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (seed_opt->count() > 0) opt.seed = seed;
    if (*exporter && exporter->parsed() && app.get_option("--out-dir")->count() == 0) {
      opt.out_dir = "-";
    }
    opt.threads = resolve_threads(opt.threads);
    if (simulate->parsed()) return cmd_simulate(opt, out);
    if (sweep->parsed()) return cmd_sweep(opt, out);
    if (reproduce->parsed()) return cmd_reproduce(opt, out);
    if (m3wm->parsed()) return cmd_m3wm(opt, out);
    return cmd_export(opt, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace enantiosim
