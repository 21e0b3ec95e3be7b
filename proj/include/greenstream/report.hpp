#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "greenstream/scheduler.hpp"
#include "greenstream/subscription.hpp"

namespace greenstream {

/// Six significant digits, printf %.6g style. Every number written to an
/// output file goes through this.
std::string format_number(double value);
/// `value` rounded to what format_number prints.
double round_reported(double value);

inline constexpr std::string_view kScheduleCsvHeader =
    "date,ci_local,ci_remote,cdn,tier,effective_intensity,budget";

void write_schedule_csv(const Schedule& schedule, std::ostream& out);

/// Reads a schedule CSV back into day records, resolving tier names against
/// `ladder`. Throws ParseError with line numbers.
std::vector<DayRecord> parse_schedule_csv(std::string_view text, const QualityLadder& ladder);

nlohmann::json aggregates_json(const ScheduleAggregates& aggregates);
nlohmann::json plan_json(const TwoTierPlan& plan);

struct PlanReportContext {
  std::string local_region;
  std::string remote_region;
};

/// Document written as plan.json. `subscription` is null when the schedule
/// could not be turned into a two-tier plan; `subscription_error` then says
/// why.
nlohmann::json plan_report(const Schedule& schedule, const PlanReportContext& context,
                           const std::optional<TwoTierPlan>& subscription,
                           const std::string& subscription_error,
                           const std::optional<ScheduleAggregates>& weighted);

void write_sweep_csv(const CapSweepResult& sweep, std::ostream& out);

}  // namespace greenstream
