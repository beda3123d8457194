// epistral-sim: run, validate and hash simulation scenarios.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "epistral/error.hpp"
#include "epistral/scenario.hpp"
#include "epistral/simulation.hpp"
#include "epistral/trace_io.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct RunOptions {
  std::string scenario;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> ticks;
  double scale = 1.0;
};

void add_overrides(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("scenario", opts.scenario, "Scenario JSON file")->required();
  cmd->add_option("--seed", opts.seed, "Override the scenario seed");
  cmd->add_option("--ticks", opts.ticks, "Override the number of ticks")->check(CLI::NonNegativeNumber);
  cmd->add_option("--scale", opts.scale, "Divide agent counts by FACTOR")->check(CLI::PositiveNumber);
}

epistral::ScenarioConfig load(const RunOptions& opts) {
  auto config = epistral::load_scenario(opts.scenario);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.ticks) config.ticks = *opts.ticks;
  if (opts.scale != 1.0) epistral::apply_scale(config, opts.scale);
  return config;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const epistral::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool invalid = e.code() == epistral::Errc::ValidationError || e.code() == epistral::Errc::ParseError;
    return invalid ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic token-economy and feed-diversity simulator"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a scenario, write the trace and print the final state hash");
  add_overrides(run, run_opts);
  run->add_option("--out", run_opts.out, "Trace output path");
  run->add_option("--format", run_opts.format, "Trace format")->check(CLI::IsMember({"csv", "jsonl"}));

  RunOptions hash_opts;
  auto* hash = app.add_subcommand("hash", "Run a scenario and print only the final state hash");
  add_overrides(hash, hash_opts);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", validate_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  if (*run) {
    return guarded([&] {
      const auto trace = epistral::run_scenario(load(run_opts));
      if (!run_opts.out.empty()) {
        const auto fmt = run_opts.format == "jsonl" ? epistral::TraceFormat::Jsonl : epistral::TraceFormat::Csv;
        epistral::export_trace(run_opts.out, fmt, trace.records, trace.witnesses);
      }
      std::cout << epistral::to_hex(trace.final_hash) << '\n';
      return 0;
    });
  }
  if (*hash) {
    return guarded([&] {
      std::cout << epistral::to_hex(epistral::run_scenario(load(hash_opts)).final_hash) << '\n';
      return 0;
    });
  }
  return guarded([&] {
    const auto config = epistral::load_scenario(validate_path);
    std::cout << "ok: " << (config.name.empty() ? validate_path : config.name) << '\n';
    return 0;
  });
}
