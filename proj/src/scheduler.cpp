#include "greenstream/scheduler.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "greenstream/error.hpp"

namespace greenstream {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void check_target(const QualityTier& tier, const QualityLadder& ladder) {
  const auto found = ladder.find(tier.name);
  if (!found || found->bitrate_mbps != tier.bitrate_mbps) {
    throw ConfigError("strategy tier '" + tier.name + "' is not part of the ladder");
  }
  if (!(tier.bitrate_mbps < ladder.top().bitrate_mbps)) {
    throw ConfigError("strategy tier '" + tier.name + "' must be below the top tier '" +
                      ladder.top().name + "'");
  }
}

// Per-day utility loss for each profile, indexed [profile][day].
std::vector<std::vector<double>> day_losses(const Schedule& schedule) {
  const auto& ladder = schedule.setup.ladder;
  std::vector<std::vector<double>> out;
  for (const auto& profile : schedule.setup.profiles) {
    std::vector<double> losses;
    losses.reserve(schedule.days.size());
    for (const auto& day : schedule.days) {
      losses.push_back(utility_loss(ladder.top(), day.tier, ladder, profile));
    }
    out.push_back(std::move(losses));
  }
  return out;
}

std::string format_budget(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

}  // namespace

ReductionStrategy ReductionStrategy::parse(std::string_view text, const QualityLadder& ladder) {
  if (text == "single-fhd") {
    ReductionStrategy s{SingleTier{ladder.at("FHD")}};
    s.validate(ladder);
    return s;
  }
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "single") {
    ReductionStrategy s{SingleTier{ladder.at(parts[1])}};
    s.validate(ladder);
    return s;
  }
  if (parts.size() == 4 && parts[0] == "mixed") {
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), n);
    if (ec != std::errc{} || ptr != parts[1].data() + parts[1].size()) {
      throw ConfigError("strategy '" + std::string(text) + "': n must be a positive integer");
    }
    ReductionStrategy s{MixedFirstN{n, ladder.at(parts[2]), ladder.at(parts[3])}};
    s.validate(ladder);
    return s;
  }
  throw ConfigError("unknown strategy '" + std::string(text) +
                    "' (expected single-fhd, single:<tier> or mixed:<n>:<deep>:<rest>)");
}

const QualityTier& ReductionStrategy::tier_for_event(std::size_t event) const noexcept {
  if (const auto* single = std::get_if<SingleTier>(&kind_)) {
    return single->to;
  }
  const auto& mixed = std::get<MixedFirstN>(kind_);
  return event < mixed.n ? mixed.deep : mixed.rest;
}

void ReductionStrategy::validate(const QualityLadder& ladder) const {
  if (const auto* single = std::get_if<SingleTier>(&kind_)) {
    check_target(single->to, ladder);
    return;
  }
  const auto& mixed = std::get<MixedFirstN>(kind_);
  if (mixed.n == 0) {
    throw ConfigError("mixed strategy needs n >= 1");
  }
  check_target(mixed.deep, ladder);
  check_target(mixed.rest, ladder);
}

std::string ReductionStrategy::to_string() const {
  if (const auto* single = std::get_if<SingleTier>(&kind_)) {
    return "single:" + single->to.name;
  }
  const auto& mixed = std::get<MixedFirstN>(kind_);
  return "mixed:" + std::to_string(mixed.n) + ":" + mixed.deep.name + ":" + mixed.rest.name;
}

std::string_view to_string(CdnChoice cdn) {
  switch (cdn) {
    case CdnChoice::kLocal:
      return "local";
    case CdnChoice::kRemote:
      return "remote";
    case CdnChoice::kNone:
      return "n/a";
  }
  return "n/a";
}

CdnChoice cdn_choice_from_string(std::string_view text) {
  if (text == "local") return CdnChoice::kLocal;
  if (text == "remote") return CdnChoice::kRemote;
  if (text == "n/a") return CdnChoice::kNone;
  throw ArgumentError("unknown cdn choice '" + std::string(text) + "'");
}

bool Schedule::dual_cdn() const noexcept {
  return !days.empty() && days.front().ci_remote.has_value();
}

std::vector<QualityTier> Schedule::reduced_tiers() const {
  std::vector<QualityTier> tiers;
  const double top = setup.ladder.top().bitrate_mbps;
  for (const auto& day : days) {
    if (day.tier.bitrate_mbps < top &&
        std::find(tiers.begin(), tiers.end(), day.tier) == tiers.end()) {
      tiers.push_back(day.tier);
    }
  }
  return tiers;
}

double effective_intensity(const DualPathConfig& path, CdnChoice cdn, double ci_local,
                           double ci_remote, double bitrate_mbps, double top_bitrate_mbps) {
  const double baseline = path.access + path.core + path.local_dc;
  if (!(baseline > 0.0) || !(top_bitrate_mbps > 0.0)) {
    throw DegenerateInputError("local full-quality path has zero power");
  }
  const double bitrate_ratio = bitrate_mbps / top_bitrate_mbps;
  if (cdn != CdnChoice::kRemote) {
    return ci_local * bitrate_ratio;
  }
  const double mixed_intensity =
      ((path.access + path.core) * ci_local + (path.core + path.remote_dc) * ci_remote) / baseline;
  return mixed_intensity * bitrate_ratio;
}

Schedule plan(const CarbonIntensitySeries& local, const CarbonIntensitySeries* remote,
              const PlanSetup& setup, double cap) {
  if (!std::isfinite(cap) || cap <= 0.0) {
    throw ArgumentError("carbon intensity cap must be positive and finite");
  }
  validate(setup.path);
  setup.strategy.validate(setup.ladder);
  for (const auto& profile : setup.profiles) {
    validate(profile);
  }
  if (remote != nullptr) {
    require_aligned(local, *remote);
  }

  Schedule schedule;
  schedule.cap = cap;
  schedule.setup = setup;
  schedule.days.reserve(local.size());

  const QualityTier& top = setup.ladder.top();
  double budget = 0.0;
  std::size_t reduction_events = 0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    DayRecord day;
    day.date = local[i].date;
    day.ci_local = local[i].g_per_kwh;
    double ci_remote = 0.0;
    if (remote != nullptr) {
      ci_remote = (*remote)[i].g_per_kwh;
      day.ci_remote = ci_remote;
      day.cdn = remote_preferred(setup.path, day.ci_local, ci_remote) ? CdnChoice::kRemote
                                                                      : CdnChoice::kLocal;
    }
    const auto intensity_at = [&](const QualityTier& tier) {
      return effective_intensity(setup.path, day.cdn, day.ci_local, ci_remote, tier.bitrate_mbps,
                                 top.bitrate_mbps);
    };

    const double full = intensity_at(top);
    const double candidate = budget + cap - full;
    if (candidate >= 0.0) {
      day.tier = top;
      day.effective_intensity = full;
      budget = candidate;
    } else {
      day.tier = setup.strategy.tier_for_event(reduction_events++);
      day.effective_intensity = intensity_at(day.tier);
      budget = budget + cap - day.effective_intensity;
      if (budget < 0.0) {
        schedule.feasible = false;
        schedule.diagnostics.push_back(format_iso_date(day.date) + ": budget " +
                                       format_budget(budget) + " after reducing to " +
                                       day.tier.name);
      }
    }
    day.budget = budget;
    schedule.days.push_back(std::move(day));
  }
  schedule.aggregates = aggregate(schedule);
  return schedule;
}

ScheduleAggregates aggregate(const Schedule& schedule) {
  const double top = schedule.setup.ladder.top().bitrate_mbps;
  const auto period = static_cast<double>(schedule.days.size());
  ScheduleAggregates agg;
  agg.period_days = schedule.days.size();
  double bitrate_reduction = 0.0;
  for (const auto& day : schedule.days) {
    if (day.tier.bitrate_mbps < top) {
      ++agg.reduced_day_count;
    }
    bitrate_reduction += 1.0 - day.tier.bitrate_mbps / top;
  }
  agg.avg_bitrate_reduction = bitrate_reduction / period;

  const auto losses = day_losses(schedule);
  for (std::size_t p = 0; p < losses.size(); ++p) {
    ProfileLoss pl{schedule.setup.profiles[p]};
    for (const double l : losses[p]) {
      pl.total_utility_loss += l;
    }
    pl.avg_utility_reduction = pl.total_utility_loss / period;
    agg.losses.push_back(std::move(pl));
  }
  return agg;
}

ScheduleAggregates plan_metrics_weighted(const Schedule& schedule,
                                         std::span<const double> demand_weights) {
  if (demand_weights.size() != schedule.days.size()) {
    throw ArgumentError("expected " + std::to_string(schedule.days.size()) +
                        " demand weights, got " + std::to_string(demand_weights.size()));
  }
  double sum = 0.0;
  for (const double w : demand_weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ArgumentError("demand weights must be finite and >= 0");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ArgumentError("demand weights must sum to 1");
  }

  const double top = schedule.setup.ladder.top().bitrate_mbps;
  const auto period = static_cast<double>(schedule.days.size());
  ScheduleAggregates agg;
  agg.period_days = schedule.days.size();
  for (std::size_t d = 0; d < schedule.days.size(); ++d) {
    const auto& day = schedule.days[d];
    if (day.tier.bitrate_mbps < top) {
      ++agg.reduced_day_count;
    }
    agg.avg_bitrate_reduction += demand_weights[d] * (1.0 - day.tier.bitrate_mbps / top);
  }
  const auto losses = day_losses(schedule);
  for (std::size_t p = 0; p < losses.size(); ++p) {
    ProfileLoss pl{schedule.setup.profiles[p]};
    for (std::size_t d = 0; d < losses[p].size(); ++d) {
      pl.avg_utility_reduction += demand_weights[d] * losses[p][d];
    }
    pl.total_utility_loss = pl.avg_utility_reduction * period;
    agg.losses.push_back(std::move(pl));
  }
  return agg;
}

CapSweepResult sweep_caps(const CarbonIntensitySeries& local, const CarbonIntensitySeries* remote,
                          const PlanSetup& setup, std::span<const double> caps) {
  if (caps.empty()) {
    throw ArgumentError("cap sweep needs at least one cap");
  }
  std::vector<double> ordered(caps.begin(), caps.end());
  std::sort(ordered.begin(), ordered.end(), std::greater<>());

  CapSweepResult result;
  for (const double cap : ordered) {
    const Schedule schedule = plan(local, remote, setup, cap);
    if (!result.entries.empty() && schedule.aggregates.reduced_day_count <
                                       result.entries.back().aggregates.reduced_day_count) {
      result.monotone = false;
    }
    result.entries.push_back({cap, schedule.feasible, schedule.aggregates});
  }
  return result;
}

}  // namespace greenstream
