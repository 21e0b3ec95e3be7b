#include "greenstream/subscription.hpp"

#include <algorithm>
#include <cmath>

#include "greenstream/error.hpp"

namespace greenstream {

namespace {

QualityTier plan_tier(const Schedule& schedule) {
  const auto used = schedule.reduced_tiers();
  if (used.size() > 1) {
    std::string names;
    for (const auto& t : used) {
      names += (names.empty() ? "" : ", ") + t.name;
    }
    throw ArgumentError("schedule reduces to several tiers (" + names +
                        "); a two-tier subscription needs a single reduced tier, plan with a "
                        "single-tier strategy such as single-fhd");
  }
  if (!used.empty()) {
    return used.front();
  }
  const auto& kind = schedule.setup.strategy.kind();
  if (const auto* single = std::get_if<SingleTier>(&kind)) {
    return single->to;
  }
  return std::get<MixedFirstN>(kind).rest;
}

}  // namespace

TwoTierPlan synthesize(const Schedule& schedule, std::span<const UserProfile> profiles,
                       double reward_rate) {
  if (!schedule.feasible) {
    throw ArgumentError("cannot build a subscription from an infeasible schedule");
  }
  if (schedule.days.empty()) {
    throw EmptyInputError("schedule has no days");
  }
  if (!std::isfinite(reward_rate) || reward_rate < 0.0) {
    throw ArgumentError("reward rate must be finite and >= 0");
  }

  const auto& ladder = schedule.setup.ladder;
  TwoTierPlan out;
  out.period_days = schedule.days.size();
  out.reduced_days = schedule.aggregates.reduced_day_count;
  out.max_reduced_fraction =
      static_cast<double>(out.reduced_days) / static_cast<double>(out.period_days);
  out.top_tier = ladder.top();
  out.reduced_tier = plan_tier(schedule);
  out.discount_fraction = schedule.aggregates.avg_bitrate_reduction;
  out.reward_rate = reward_rate;

  for (const auto& profile : profiles) {
    validate(profile);
    ProfileIncentive incentive{profile};
    for (const auto& day : schedule.days) {
      incentive.utility_loss += utility_loss(ladder.top(), day.tier, ladder, profile);
    }
    incentive.net_utility_loss =
        incentive.utility_loss - out.discount_fraction * static_cast<double>(out.reduced_days);
    incentive.reward_points = reward_rate * std::max(0.0, incentive.net_utility_loss);
    out.incentives.push_back(std::move(incentive));
  }
  return out;
}

TwoTierPlan synthesize(const Schedule& schedule, const UserProfile& profile, double reward_rate) {
  return synthesize(schedule, std::span<const UserProfile>(&profile, 1), reward_rate);
}

MultiMonthPlan aggregate_months(std::span<const TwoTierPlan> months) {
  if (months.empty()) {
    throw ArgumentError("need at least one month to aggregate");
  }
  const auto& first = months.front();
  MultiMonthPlan out;
  out.totals.reserve(first.incentives.size());
  for (const auto& inc : first.incentives) {
    out.totals.push_back({inc.profile});
  }

  double weighted_discount = 0.0;
  for (const auto& month : months) {
    if (month.reduced_tier != first.reduced_tier || month.top_tier != first.top_tier) {
      throw ArgumentError("months disagree on tiers (" + first.top_tier.name + "->" +
                          first.reduced_tier.name + " vs " + month.top_tier.name + "->" +
                          month.reduced_tier.name + ")");
    }
    if (month.reward_rate != first.reward_rate) {
      throw ArgumentError("months disagree on reward rate");
    }
    if (month.incentives.size() != first.incentives.size()) {
      throw ArgumentError("months disagree on user profiles");
    }
    for (std::size_t p = 0; p < month.incentives.size(); ++p) {
      const auto& inc = month.incentives[p];
      if (inc.profile != out.totals[p].profile) {
        throw ArgumentError("months disagree on user profiles");
      }
      out.totals[p].utility_loss += inc.utility_loss;
      out.totals[p].net_utility_loss += inc.net_utility_loss;
      out.totals[p].reward_points += inc.reward_points;
    }
    out.period_days += month.period_days;
    out.reduced_days += month.reduced_days;
    weighted_discount += month.discount_fraction * static_cast<double>(month.period_days);
  }
  if (out.period_days == 0) {
    throw ArgumentError("months cover zero days");
  }
  const auto days = static_cast<double>(out.period_days);
  out.max_reduced_fraction = static_cast<double>(out.reduced_days) / days;
  out.discount_fraction = weighted_discount / days;
  out.months.assign(months.begin(), months.end());
  return out;
}

}  // namespace greenstream
