#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "greenstream/scheduler.hpp"
#include "greenstream/utility_model.hpp"

namespace greenstream {

inline constexpr double kDefaultRewardRate = 100.0;

/// Carried alongside every plan: the discount tracks incremental energy only.
inline constexpr std::string_view kDiscountAdvisory =
    "discount is proportional to the average bitrate reduction, which tracks incremental "
    "(traffic-dependent) energy only; idle device power is unaffected, so realized cost "
    "savings are smaller";

struct ProfileIncentive {
  UserProfile profile;
  /// Summed over reduced days.
  double utility_loss = 0.0;
  /// utility_loss minus the discount credited once per reduced day. May be negative.
  double net_utility_loss = 0.0;
  /// reward_rate * max(0, net_utility_loss).
  double reward_points = 0.0;

  bool operator==(const ProfileIncentive&) const = default;
};

/// Subscription option letting the provider serve up to max_reduced_fraction
/// of videos at reduced_tier in exchange for a discount plus carbon rewards.
struct TwoTierPlan {
  std::size_t period_days = 0;
  std::size_t reduced_days = 0;
  double max_reduced_fraction = 0.0;
  QualityTier top_tier;
  QualityTier reduced_tier;
  /// Fraction of the full-quality price, equal to the average bitrate reduction.
  double discount_fraction = 0.0;
  double reward_rate = kDefaultRewardRate;
  std::vector<ProfileIncentive> incentives;

  bool operator==(const TwoTierPlan&) const = default;
};

/// Throws ArgumentError for an infeasible schedule, for a schedule that uses
/// more than one reduced tier, or for a negative reward rate.
TwoTierPlan synthesize(const Schedule& schedule, std::span<const UserProfile> profiles,
                       double reward_rate = kDefaultRewardRate);
TwoTierPlan synthesize(const Schedule& schedule, const UserProfile& profile,
                       double reward_rate = kDefaultRewardRate);

struct MultiMonthPlan {
  std::vector<TwoTierPlan> months;
  std::size_t period_days = 0;
  std::size_t reduced_days = 0;
  /// Total reduced days over total days.
  double max_reduced_fraction = 0.0;
  /// Day-weighted mean of the monthly discounts.
  double discount_fraction = 0.0;
  /// Per-profile sums of the monthly figures.
  std::vector<ProfileIncentive> totals;
};

/// Throws ArgumentError on an empty list or when months disagree on tiers,
/// profiles or reward rate.
MultiMonthPlan aggregate_months(std::span<const TwoTierPlan> months);

}  // namespace greenstream
