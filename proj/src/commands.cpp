#include "greenstream/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

#include "greenstream/error.hpp"
#include "greenstream/report.hpp"

namespace greenstream::cli {

namespace {

namespace fs = std::filesystem;

struct LoadedSeries {
  CarbonIntensitySeries local;
  std::optional<CarbonIntensitySeries> remote;
};

LoadedSeries load_series(const RunConfig& config, bool need_remote) {
  if (!config.local_ci) {
    throw Error("no local carbon intensity CSV given (--local-ci or \"local_ci\")");
  }
  if (need_remote && !config.remote_ci) {
    throw Error("no remote carbon intensity CSV given (--remote-ci or \"remote_ci\")");
  }
  LoadedSeries out{load_intensity_csv(*config.local_ci, config.local_region), std::nullopt};
  if (config.remote_ci) {
    out.remote = load_intensity_csv(*config.remote_ci, config.remote_region);
    require_aligned(out.local, *out.remote);
  }
  return out;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  return out;
}

int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace

int cmd_plan(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    if (config.caps.size() != 1) {
      throw ConfigError("plan needs exactly one cap (got " + std::to_string(config.caps.size()) +
                        "); use sweep for several");
    }
    const auto series = load_series(config, false);
    const auto setup = config.setup();
    const Schedule schedule =
        plan(series.local, series.remote ? &*series.remote : nullptr, setup, config.caps.front());

    std::optional<TwoTierPlan> subscription;
    std::string subscription_error;
    if (schedule.feasible) {
      try {
        subscription = synthesize(schedule, config.profiles, config.reward_rate);
      } catch (const ArgumentError& e) {
        subscription_error = e.what();
      }
    } else {
      subscription_error = "schedule is infeasible under this cap";
    }
    std::optional<ScheduleAggregates> weighted;
    if (config.demand_weights) {
      weighted = plan_metrics_weighted(schedule, *config.demand_weights);
    }

    {
      auto csv = open_output(config.out_dir, "schedule.csv");
      write_schedule_csv(schedule, csv);
    }
    {
      auto json_out = open_output(config.out_dir, "plan.json");
      json_out << plan_report(schedule,
                              {series.local.region(),
                               series.remote ? series.remote->region() : std::string()},
                              subscription, subscription_error, weighted)
                      .dump(2)
               << '\n';
    }

    const auto& agg = schedule.aggregates;
    log << "cap " << format_number(schedule.cap) << ": " << agg.reduced_day_count << " of "
        << agg.period_days << " days reduced, bitrate reduction "
        << format_number(agg.avg_bitrate_reduction) << '\n';
    if (!subscription_error.empty()) {
      log << "no subscription: " << subscription_error << '\n';
    }
    if (!schedule.feasible) {
      for (const auto& line : schedule.diagnostics) {
        log << "infeasible: " << line << '\n';
      }
      return kExitInfeasible;
    }
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    if (config.caps.empty()) {
      throw ConfigError("sweep needs at least one cap (--cap or \"caps\")");
    }
    const auto series = load_series(config, false);
    const auto sweep = sweep_caps(series.local, series.remote ? &*series.remote : nullptr,
                                  config.setup(), config.caps);
    auto csv = open_output(config.out_dir, "sweep.csv");
    write_sweep_csv(sweep, csv);
    for (const auto& entry : sweep.entries) {
      log << "cap " << format_number(entry.cap) << ": " << entry.aggregates.reduced_day_count
          << " days reduced" << (entry.feasible ? "" : " (infeasible)") << '\n';
    }
    if (!sweep.monotone) {
      log << "warning: reduced-day counts are not monotone in the cap for this series\n";
    }
    return kExitOk;
  });
}

int cmd_cdn_days(const RunConfig& config, std::ostream& log) {
  return guarded(log, [&] {
    const auto series = load_series(config, true);
    const auto grid = config.grid_labels();
    const bool with_plan = !config.caps.empty();
    auto setup = config.setup();

    auto csv = open_output(config.out_dir, "cdn_days.csv");
    csv << "local_dc,remote_dc,threshold,remote_days";
    if (with_plan) {
      csv << ",reduced_days";
    }
    csv << '\n';
    for (const auto& local_label : grid) {
      for (const auto& remote_label : grid) {
        setup.path.local_dc = config.resolve(local_label, SegmentKind::kDataCenter);
        setup.path.remote_dc = config.resolve(remote_label, SegmentKind::kDataCenter);
        const auto days = count_remote_days(series.local, *series.remote, setup.path);
        csv << local_label << ',' << remote_label << ','
            << format_number(remote_threshold(setup.path)) << ',' << days;
        if (with_plan) {
          const auto schedule = plan(series.local, &*series.remote, setup, config.caps.front());
          csv << ',' << schedule.aggregates.reduced_day_count;
        }
        csv << '\n';
      }
    }
    log << "wrote " << grid.size() * grid.size() << " combinations to "
        << (config.out_dir / "cdn_days.csv").string() << '\n';
    return kExitOk;
  });
}

}  // namespace greenstream::cli
