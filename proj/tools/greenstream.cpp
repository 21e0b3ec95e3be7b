// greenstream: carbon-cap quality planning for video streaming.
//
//   greenstream plan     --config run.json --local-ci gr.csv --cap 280 --out out/
//   greenstream sweep    --local-ci gr.csv --cap 280 --cap 240 --cap 200
//   greenstream cdn-days --local-ci gr.csv --remote-ci nl.csv --cap 280

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greenstream/commands.hpp"
#include "greenstream/run_config.hpp"

namespace {

struct Overrides {
  std::string config;
  std::string local_ci;
  std::string remote_ci;
  std::vector<double> caps;
  std::string strategy;
  std::string out;
};

void add_common_options(CLI::App& sub, Overrides& o) {
  sub.add_option("--config", o.config, "JSON run configuration");
  sub.add_option("--local-ci", o.local_ci, "CSV of daily local carbon intensity");
  sub.add_option("--remote-ci", o.remote_ci, "CSV of daily remote carbon intensity");
  sub.add_option("--cap", o.caps, "average carbon-intensity cap in gCO2e/kWh (repeatable)")
      ->allow_extra_args(false);
  sub.add_option("--strategy", o.strategy, "single-fhd | single:<tier> | mixed:<n>:<deep>:<rest>");
  sub.add_option("--out", o.out, "output directory");
}

greenstream::RunConfig build_config(const Overrides& o) {
  greenstream::RunConfig cfg =
      o.config.empty() ? greenstream::RunConfig{} : greenstream::load_run_config(o.config);
  if (!o.local_ci.empty()) cfg.local_ci = o.local_ci;
  if (!o.remote_ci.empty()) cfg.remote_ci = o.remote_ci;
  if (!o.caps.empty()) cfg.caps = o.caps;
  if (!o.strategy.empty()) cfg.strategy = o.strategy;
  if (!o.out.empty()) cfg.out_dir = o.out;
  greenstream::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Carbon-intensity cap planning for video streaming quality and subscriptions"};
  app.require_subcommand(1);

  Overrides overrides;
  auto* plan = app.add_subcommand("plan", "plan one cap; writes schedule.csv and plan.json");
  auto* sweep = app.add_subcommand("sweep", "plan every cap; writes sweep.csv");
  auto* cdn_days =
      app.add_subcommand("cdn-days", "remote-preferred day counts per CDN pair; cdn_days.csv");
  for (auto* sub : {plan, sweep, cdn_days}) {
    add_common_options(*sub, overrides);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every usage error maps to the generic error code.
    return app.exit(e) == 0 ? greenstream::cli::kExitOk : greenstream::cli::kExitError;
  }

  greenstream::RunConfig config;
  try {
    config = build_config(overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return greenstream::cli::kExitError;
  }

  if (plan->parsed()) return greenstream::cli::cmd_plan(config, std::cerr);
  if (sweep->parsed()) return greenstream::cli::cmd_sweep(config, std::cerr);
  return greenstream::cli::cmd_cdn_days(config, std::cerr);
}
