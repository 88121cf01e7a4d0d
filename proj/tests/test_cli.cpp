#include "enantiosim/cli.hpp"
#include "enantiosim/config.hpp"
#include "enantiosim/csv.hpp"
#include "enantiosim/presets.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace enantiosim;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "enantiosim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("enantiosim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_json(const fs::path& dir, const std::string& name, const Json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

Json preset(const std::string& name) {
  const Run r = cli({"export-preset", name});
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

const fs::path kConfigs = fs::path(ENANTIOSIM_SOURCE_DIR) / "configs";

}  // namespace

TEST_CASE("exit codes") {
  CHECK(cli({}).code == kExitConfig);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"frobnicate"}).code == kExitConfig);
  const Run unknown = cli({"reproduce", "fig9"});
  CHECK(unknown.code == kExitConfig);
  CHECK(unknown.err.find("fig9") != std::string::npos);
  CHECK(cli({"simulate"}).code == kExitConfig);
  CHECK(cli({"simulate", "--config", "/nonexistent/x.json"}).code == kExitConfig);
  CHECK(cli({"export-preset", "fig4"}).code == kExitConfig);
}

TEST_CASE("eta = 1.5 is a config error naming the key") {
  const fs::path dir = scratch("eta");
  Json j = preset("fig6_fluctuation");
  j["scenario"]["noise"]["q"][0]["eta"] = 1.5;
  const Run r = cli({"simulate", "--config", write_json(dir, "c.json", j).string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("noise.q[0].eta") != std::string::npos);
  CHECK(r.err.find("[0, 1]") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "trajectory.csv"));
}

TEST_CASE("unknown config keys are rejected with their path") {
  const fs::path dir = scratch("keys");
  Json j = preset("fig3_gaussian");
  j["scenario"]["pulses"]["area_solution"]["q_amplitude"] = 1.0;
  const Run r = cli({"simulate", "--config", write_json(dir, "c.json", j).string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("scenario.pulses.area_solution.q_amplitude") != std::string::npos);

  Json top = preset("fig3_gaussian");
  top["seeed"] = 3;
  CHECK(cli({"simulate", "--config", write_json(dir, "d.json", top).string()}).code == kExitConfig);
}

TEST_CASE("numerical diagnostics exit with 3") {
  const fs::path dir = scratch("numerical");
  Json j = preset("fig3_gaussian");
  j["scenario"]["max_step_us"] = 0.5;
  const Run r = cli({"simulate", "--config", write_json(dir, "c.json", j).string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitNumerical);
}

TEST_CASE("bad ENANTIOSIM_THREADS is a config error, the flag wins") {
  const fs::path dir = scratch("threads");
  ::setenv("ENANTIOSIM_THREADS", "zero", 1);
  CHECK(cli({"reproduce", "fig3", "--out-dir", dir.string()}).code == kExitConfig);
  CHECK(cli({"reproduce", "fig3", "--out-dir", dir.string(), "--threads", "2"}).code == kExitOk);
  ::unsetenv("ENANTIOSIM_THREADS");
}

TEST_CASE("bundled fig5 config and byte-identical rerun from the manifest") {
  const fs::path a = scratch("fig5a");
  const fs::path b = scratch("fig5b");
  const Run r = cli({"simulate", "--config", (kConfigs / "fig5.json").string(), "--out-dir", a.string()});
  REQUIRE(r.code == 0);
  const CsvTable t = read_csv(a / "trajectory.csv");
  const std::vector<std::string> header{"t_us", "P1L", "P2L", "P3L", "P4L", "P1R", "P2R", "P3R", "P4R", "D"};
  CHECK(t.header == header);
  CHECK(std::abs(t.rows.back().back() - 0.993) <= 0.003);

  const Json manifest = Json::parse(slurp(a / "manifest.json"));
  CHECK(manifest.at("tool") == "enantiosim");
  CHECK(manifest.contains("version"));
  CHECK(manifest.at("solver").at("model") == "lab4");
  CHECK(manifest.contains("seeds"));
  CHECK(manifest.at("timing").at("wall_seconds").get<double>() >= 0.0);

  REQUIRE(cli({"simulate", "--config", (a / "manifest.json").string(), "--out-dir", b.string()}).code == 0);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
  CHECK(slurp(a / "waveforms.csv") == slurp(b / "waveforms.csv"));
}

TEST_CASE("noisy runs rerun identically and --seed changes them") {
  const fs::path a = scratch("noisy_a");
  const fs::path b = scratch("noisy_b");
  const fs::path c = scratch("noisy_c");
  const std::string cfg = (kConfigs / "fig6_awgn.json").string();
  REQUIRE(cli({"simulate", "--config", cfg, "--out-dir", a.string(), "--fast", "--seed", "7"}).code == 0);
  REQUIRE(cli({"simulate", "--config", (a / "manifest.json").string(), "--out-dir", b.string()}).code == 0);
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
  REQUIRE(cli({"simulate", "--config", cfg, "--out-dir", c.string(), "--fast", "--seed", "8"}).code == 0);
  CHECK(slurp(a / "waveforms.csv") != slurp(c / "waveforms.csv"));
  const Json m = Json::parse(slurp(a / "manifest.json"));
  CHECK(m.at("solver").at("model") == "rwa3");
  CHECK(m.at("seeds").at("master") == 7);
}

TEST_CASE("bundled configs are the exported presets") {
  for (const auto& name : preset_names()) {
    INFO(name);
    const fs::path file = kConfigs / (name + ".json");
    REQUIRE(fs::exists(file));
    const Run r = cli({"export-preset", name});
    REQUIRE(r.code == 0);
    CHECK(slurp(file) == r.out);
  }
}

TEST_CASE("bundled scenarios match the library presets") {
  auto scenario = [](const std::string& name) {
    return scenario_from_json(load_config_file((kConfigs / (name + ".json")).string()).at("scenario"));
  };
  CHECK(scenario_to_json(scenario("fig5")) == scenario_to_json(fig5_scenario()));
  CHECK(scenario_to_json(scenario("fig6_awgn")) == scenario_to_json(fig6_scenario(Fig6Noise::kAwgn)));
  CHECK(scenario_to_json(scenario("fig6_fluctuation")) ==
        scenario_to_json(fig6_scenario(Fig6Noise::kFluctuation)));
  CHECK(scenario_to_json(scenario("fig3_gaussian")) == scenario_to_json(fig3_scenario(QShape::kGaussian)));
  CHECK(scenario_to_json(scenario("fig3_cos_squared")) == scenario_to_json(fig3_scenario(QShape::kCosSquared)));
}

TEST_CASE("scenario json round trip") {
  EsstScenario s = fig6_scenario(Fig6Noise::kBoth);
  s.lifetimes = Lifetimes{50.0, INFINITY};
  s.deviations.q = 0.2;
  const Json j = scenario_to_json(s);
  CHECK(scenario_to_json(scenario_from_json(j)) == j);
  CHECK(j.at("lifetimes_us").at("tau3_us") == "inf");
}

TEST_CASE("figure CSV schemas") {
  const fs::path dir = scratch("schemas");
  using Header = std::vector<std::string>;

  Json f2 = preset("fig2");
  f2["sweep"]["ratios"] = {2.5, 4.0, 10.0};
  REQUIRE(cli({"reproduce", "fig2", "--config", write_json(dir, "f2.json", f2).string(), "--out-dir", dir.string()})
              .code == 0);
  CHECK(read_csv(dir / "fig2.csv").header == Header{"ratio", "P3_square", "P3_shaped"});
  CHECK(read_csv(dir / "fig2.csv").rows.size() == 3);

  REQUIRE(cli({"reproduce", "fig3", "--out-dir", dir.string()}).code == 0);
  for (const char* p : {"b", "d", "f"}) {
    CHECK(read_csv(dir / (std::string("fig3_") + p + ".csv")).header.back() == "D");
  }
  for (const char* p : {"a", "c", "e"}) {
    CHECK(read_csv(dir / (std::string("fig3_") + p + ".csv")).header ==
          Header{"t_us", "Omega_p", "Omega_q", "Omega_s", "Omega_eff"});
  }

  REQUIRE(cli({"reproduce", "fig6", "--out-dir", dir.string(), "--fast"}).code == 0);
  const CsvTable wave = read_csv(dir / "fig6_a.csv");
  CHECK(wave.header == Header{"t_us", "Omega_p", "Omega_q", "Omega_s"});
  // Stair steps on the 10 ns grid.
  CHECK(wave.rows[1][0] == doctest::Approx(0.01));
  CHECK(fs::exists(dir / "fig6_b.csv"));
  CHECK(fs::exists(dir / "fig6_c.csv"));
  CHECK(fs::exists(dir / "fig6_d.csv"));

  Json f7 = preset("fig7");
  f7["sweep"]["deviations_rad_per_us"] = {-0.5, 0.0, 0.5};
  REQUIRE(cli({"reproduce", "fig7", "--config", write_json(dir, "f7.json", f7).string(), "--out-dir", dir.string(),
               "--fast"})
              .code == 0);
  CHECK(read_csv(dir / "fig7.csv").header == Header{"delta", "D_P", "D_Q", "D_S"});

  Json f8 = preset("fig8");
  f8["sweep"]["tau2_us"] = {1.0, "inf"};
  f8["sweep"]["tau3_us"] = {400.0};
  REQUIRE(cli({"reproduce", "fig8", "--config", write_json(dir, "f8.json", f8).string(), "--out-dir", dir.string(),
               "--fast"})
              .code == 0);
  const CsvTable t8 = read_csv(dir / "fig8.csv");
  CHECK(t8.header == Header{"tau2_us", "tau3_us", "D_final"});
  CHECK(t8.rows.size() == 2);

  const Json m = Json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("command") == "reproduce fig8");
}

TEST_CASE("m3wm command writes coherence and summary") {
  for (const char* method : {"drive_then_twist", "resonant_raman"}) {
    const fs::path dir = scratch(std::string("m3wm_") + method);
    Json j = preset(std::string("m3wm_") + method);
    j.erase("esst");
    const Run r = cli({"m3wm", "--config", write_json(dir, "c.json", j).string(), "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    const CsvTable coh = read_csv(dir / "coherence.csv");
    CHECK(coh.header == std::vector<std::string>{"t_us", "P_202", "P_303", "P_313", "abs_rho_202_313"});
    CHECK(std::abs(coh.rows.back()[4] - 0.5) <= 5e-3);
    const CsvTable sum = read_csv(dir / "m3wm_summary.csv");
    CHECK(sum.header == std::vector<std::string>{"ee", "D", "P3L", "P3R", "coherence", "amplitude"});
    REQUIRE(sum.rows.size() == 3);
    // Linear in ee.
    CHECK(sum.rows[1][5] == doctest::Approx(0.5 * (sum.rows[0][5] + sum.rows[2][5])));
    CHECK(sum.rows[1][5] != 0.0);
  }
}

TEST_CASE("csv number format") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-10) == "-2.5e-10");
  CHECK(to_csv(CsvTable{{"a", "b"}, {{1.0, 2.0}}}) == "a,b\n1,2\n");
}
