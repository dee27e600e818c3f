// Scenario-driven front end: single runs, AFSMC-vs-SMC comparisons and
// parameter sweeps, emitting CSV traces and flat metrics files.

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "afsmc/scenario_io.hpp"
#include "afsmc/sim.hpp"
#include "afsmc/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRunFault = 1;
constexpr int kExitConfigError = 2;

std::string default_out_dir() {
  if (const char* env = std::getenv("AFSMC_OUT_DIR"); env && *env) return env;
  return ".";
}

void print_summary(const std::string& label, const afsmc::Metrics& m) {
  std::printf(
      "%s: rms_error_post=%.6g m, max_abs_error_post=%.6g m, "
      "control_tv=%.6g V, comp_rms_post=%.6g V, s_in_layer=%.4f, "
      "cavitation_faults=%ld%s\n",
      label.c_str(), m.rms_error_post, m.max_abs_error_post,
      m.control_total_variation, m.comp_error_rms_post,
      m.s_in_layer_fraction_post, m.cavitation_faults,
      m.diverged ? " [DIVERGED]" : "");
}

void write_artifacts(const fs::path& out_dir, const std::string& stem,
                     const afsmc::RunResult& result) {
  fs::create_directories(out_dir);
  afsmc::write_trace_csv(out_dir / (stem + "_trace.csv"), result.trace);
  afsmc::write_metrics(out_dir / (stem + "_metrics.txt"), result.metrics);
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir) {
  const afsmc::Scenario scenario = afsmc::load_scenario(scenario_path);
  const std::string stem = fs::path(scenario_path).stem().string();
  const afsmc::RunResult result = afsmc::run(scenario);
  write_artifacts(out_dir, stem, result);
  print_summary(stem, result.metrics);
  return result.metrics.diverged ? kExitRunFault : kExitOk;
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir) {
  const afsmc::Scenario scenario = afsmc::load_scenario(scenario_path);
  afsmc::Scenario plain = scenario;
  plain.fuzzy.gamma = 0.0;  // compensation frozen: plain sliding mode

  auto adaptive_future =
      std::async(std::launch::async, [&] { return afsmc::run(scenario); });
  const afsmc::RunResult plain_result = afsmc::run(plain);
  const afsmc::RunResult adaptive_result = adaptive_future.get();

  const std::string stem = fs::path(scenario_path).stem().string();
  write_artifacts(out_dir, stem + "_afsmc", adaptive_result);
  write_artifacts(out_dir, stem + "_smc", plain_result);

  const double afsmc_rms = adaptive_result.metrics.rms_error_post;
  const double smc_rms = plain_result.metrics.rms_error_post;
  const double ratio = smc_rms > 0.0 ? afsmc_rms / smc_rms : 1.0;

  std::string report = "metric, afsmc, smc\n";
  const auto a_items = afsmc::metrics_items(adaptive_result.metrics);
  const auto p_items = afsmc::metrics_items(plain_result.metrics);
  char line[160];
  for (std::size_t i = 0; i < a_items.size(); ++i) {
    std::snprintf(line, sizeof(line), "%s, %.17g, %.17g\n",
                  a_items[i].first.c_str(), a_items[i].second,
                  p_items[i].second);
    report += line;
  }
  std::snprintf(line, sizeof(line),
                "rms_ratio = %.17g\nafsmc_rms < smc_rms: %s\n", ratio,
                afsmc_rms < smc_rms ? "true" : "false");
  report += line;
  afsmc::atomic_write(fs::path(out_dir) / (stem + "_compare.txt"), report);

  print_summary(stem + "_afsmc", adaptive_result.metrics);
  print_summary(stem + "_smc", plain_result.metrics);
  std::printf("rms_ratio=%.6g\nafsmc_rms < smc_rms: %s\n", ratio,
              afsmc_rms < smc_rms ? "true" : "false");

  const bool fault = adaptive_result.metrics.diverged ||
                     plain_result.metrics.diverged;
  return fault ? kExitRunFault : kExitOk;
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_dir,
              const std::string& param, const std::string& values_csv) {
  std::vector<std::string> values;
  {
    std::string item;
    for (char c : values_csv) {
      if (c == ',') {
        if (!item.empty()) values.push_back(item);
        item.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        item += c;
      }
    }
    if (!item.empty()) values.push_back(item);
  }
  if (values.empty()) {
    std::cerr << "sweep: --values must list at least one value\n";
    return kExitConfigError;
  }

  // Validate every override up front so a typo fails before any run starts.
  std::vector<afsmc::Scenario> scenarios;
  for (const auto& value : values)
    scenarios.push_back(afsmc::load_scenario(scenario_path, {{param, value}}));

  std::vector<std::future<afsmc::RunResult>> futures;
  futures.reserve(scenarios.size());
  for (const auto& sc : scenarios)
    futures.push_back(
        std::async(std::launch::async, [&sc] { return afsmc::run(sc); }));

  const std::string stem = fs::path(scenario_path).stem().string();
  std::string param_tag = param;
  for (char& c : param_tag)
    if (c == '.') c = '_';

  std::string table;
  bool fault = false;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const afsmc::RunResult result = futures[i].get();
    const std::string run_stem = stem + "_" + param_tag + "_" + values[i];
    write_artifacts(out_dir, run_stem, result);
    print_summary(run_stem, result.metrics);

    const auto items = afsmc::metrics_items(result.metrics);
    if (table.empty()) {
      table = param;
      for (const auto& [key, _] : items) table += "," + key;
      table += "\n";
    }
    table += values[i];
    char cell[48];
    for (const auto& [_, value] : items) {
      std::snprintf(cell, sizeof(cell), ",%.17g", value);
      table += cell;
    }
    table += "\n";
    fault = fault || result.metrics.diverged;
  }
  afsmc::atomic_write(fs::path(out_dir) / (stem + "_sweep.csv"), table);
  return fault ? kExitRunFault : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Sliding-mode tracking control with adaptive fuzzy dead-zone "
      "compensation: scenario runner"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = default_out_dir();
  std::string param;
  std::string values;

  auto* run_cmd = app.add_subcommand("run", "simulate one scenario");
  run_cmd->add_option("scenario", scenario_path, "scenario file")->required();
  run_cmd->add_option("--out", out_dir, "output directory");

  auto* compare_cmd = app.add_subcommand(
      "compare", "run the scenario with and without adaptation");
  compare_cmd->add_option("scenario", scenario_path, "scenario file")
      ->required();
  compare_cmd->add_option("--out", out_dir, "output directory");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "run the scenario over a parameter grid");
  sweep_cmd->add_option("scenario", scenario_path, "scenario file")
      ->required();
  sweep_cmd->add_option("--param", param, "config key, e.g. controller.phi")
      ->required();
  sweep_cmd->add_option("--values", values, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(scenario_path, out_dir);
    if (compare_cmd->parsed()) return cmd_compare(scenario_path, out_dir);
    return cmd_sweep(scenario_path, out_dir, param, values);
  } catch (const afsmc::ScenarioError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFault;
  }
}
