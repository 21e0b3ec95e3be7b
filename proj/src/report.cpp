#include "greenstream/report.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "greenstream/error.hpp"

namespace greenstream {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_field(std::string_view text, std::size_t line, std::string_view column) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "bad " + std::string(column) + " '" + std::string(text) + "'");
  }
  return value;
}

json profile_json(const UserProfile& profile) {
  return {{"label", profile.label}, {"gamma", round_reported(profile.gamma)}};
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

double round_reported(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

void write_schedule_csv(const Schedule& schedule, std::ostream& out) {
  out << kScheduleCsvHeader << '\n';
  for (const auto& day : schedule.days) {
    out << format_iso_date(day.date) << ',' << format_number(day.ci_local) << ','
        << (day.ci_remote ? format_number(*day.ci_remote) : "") << ',' << to_string(day.cdn)
        << ',' << day.tier.name << ',' << format_number(day.effective_intensity) << ','
        << format_number(day.budget) << '\n';
  }
}

std::vector<DayRecord> parse_schedule_csv(std::string_view text, const QualityLadder& ladder) {
  std::vector<DayRecord> days;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != kScheduleCsvHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kScheduleCsvHeader) + "'");
      }
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 7) {
      throw ParseError(line_no, "expected 7 fields, got " + std::to_string(fields.size()));
    }
    DayRecord day;
    if (!parse_iso_date(fields[0], day.date)) {
      throw ParseError(line_no, "invalid date '" + std::string(fields[0]) + "'");
    }
    day.ci_local = parse_field(fields[1], line_no, "ci_local");
    if (!fields[2].empty()) {
      day.ci_remote = parse_field(fields[2], line_no, "ci_remote");
    }
    try {
      day.cdn = cdn_choice_from_string(fields[3]);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    const auto tier = ladder.find(fields[4]);
    if (!tier) {
      throw ParseError(line_no, "unknown tier '" + std::string(fields[4]) + "'");
    }
    day.tier = *tier;
    day.effective_intensity = parse_field(fields[5], line_no, "effective_intensity");
    day.budget = parse_field(fields[6], line_no, "budget");
    days.push_back(std::move(day));
  }
  if (line_no == 0) {
    throw EmptyInputError("schedule CSV is empty");
  }
  return days;
}

json aggregates_json(const ScheduleAggregates& aggregates) {
  json profiles = json::array();
  for (const auto& loss : aggregates.losses) {
    profiles.push_back({{"label", loss.profile.label},
                        {"gamma", round_reported(loss.profile.gamma)},
                        {"total_utility_loss", round_reported(loss.total_utility_loss)},
                        {"avg_utility_reduction", round_reported(loss.avg_utility_reduction)}});
  }
  return {{"period_days", aggregates.period_days},
          {"reduced_day_count", aggregates.reduced_day_count},
          {"avg_bitrate_reduction", round_reported(aggregates.avg_bitrate_reduction)},
          {"profiles", std::move(profiles)}};
}

json plan_json(const TwoTierPlan& plan) {
  json incentives = json::array();
  for (const auto& inc : plan.incentives) {
    json entry = profile_json(inc.profile);
    entry["utility_loss"] = round_reported(inc.utility_loss);
    entry["net_utility_loss"] = round_reported(inc.net_utility_loss);
    entry["reward_points"] = round_reported(inc.reward_points);
    incentives.push_back(std::move(entry));
  }
  return {{"period_days", plan.period_days},
          {"reduced_days", plan.reduced_days},
          {"max_reduced_fraction", round_reported(plan.max_reduced_fraction)},
          {"top_tier", plan.top_tier.name},
          {"reduced_tier", plan.reduced_tier.name},
          {"discount_fraction", round_reported(plan.discount_fraction)},
          {"reward_rate", round_reported(plan.reward_rate)},
          {"incentives", std::move(incentives)},
          {"advisory", kDiscountAdvisory}};
}

json plan_report(const Schedule& schedule, const PlanReportContext& context,
                 const std::optional<TwoTierPlan>& subscription,
                 const std::string& subscription_error,
                 const std::optional<ScheduleAggregates>& weighted) {
  json doc;
  doc["cap"] = round_reported(schedule.cap);
  doc["strategy"] = schedule.setup.strategy.to_string();
  doc["local_region"] = context.local_region;
  doc["remote_region"] =
      schedule.dual_cdn() ? json(context.remote_region) : json(nullptr);
  doc["feasible"] = schedule.feasible;
  doc["diagnostics"] = schedule.diagnostics;
  doc["aggregates"] = aggregates_json(schedule.aggregates);
  doc["subscription"] = subscription ? plan_json(*subscription) : json(nullptr);
  if (!subscription_error.empty()) {
    doc["subscription_error"] = subscription_error;
  }
  if (weighted) {
    doc["weighted_aggregates"] = aggregates_json(*weighted);
  }
  return doc;
}

void write_sweep_csv(const CapSweepResult& sweep, std::ostream& out) {
  out << "cap,reduced_days,bitrate_reduction,feasible";
  const auto& first = sweep.entries.front().aggregates.losses;
  for (const auto& loss : first) {
    out << ',' << loss.profile.label << "_utility_loss," << loss.profile.label
        << "_avg_utility_reduction";
  }
  out << '\n';
  for (const auto& entry : sweep.entries) {
    const auto& agg = entry.aggregates;
    out << format_number(entry.cap) << ',' << agg.reduced_day_count << ','
        << format_number(agg.avg_bitrate_reduction) << ',' << (entry.feasible ? "true" : "false");
    for (const auto& loss : agg.losses) {
      out << ',' << format_number(loss.total_utility_loss) << ','
          << format_number(loss.avg_utility_reduction);
    }
    out << '\n';
  }
}

}  // namespace greenstream
