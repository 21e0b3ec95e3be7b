#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greenstream/carbon.hpp"
#include "greenstream/utility_model.hpp"

namespace greenstream {

/// Every reduction event uses the same tier.
struct SingleTier {
  QualityTier to;
};

/// The first `n` reduction events use `deep`; later ones use `rest`.
/// Events are counted, not calendar days.
struct MixedFirstN {
  std::size_t n = 1;
  QualityTier deep;
  QualityTier rest;
};

class ReductionStrategy {
 public:
  using Kind = std::variant<SingleTier, MixedFirstN>;

  ReductionStrategy(SingleTier single) : kind_(std::move(single)) {}
  ReductionStrategy(MixedFirstN mixed) : kind_(std::move(mixed)) {}

  /// Parses `single-fhd`, `single:<tier>` or `mixed:<n>:<deep>:<rest>`,
  /// resolving tier names against the ladder. Throws ConfigError.
  static ReductionStrategy parse(std::string_view text, const QualityLadder& ladder);

  const Kind& kind() const noexcept { return kind_; }
  bool is_single_tier() const noexcept { return std::holds_alternative<SingleTier>(kind_); }

  /// Tier used for the `event`-th reduction (0-based).
  const QualityTier& tier_for_event(std::size_t event) const noexcept;

  /// Throws ConfigError if a target tier is missing from the ladder or is not
  /// strictly below its top tier, or n == 0.
  void validate(const QualityLadder& ladder) const;

  /// Canonical text form, accepted by parse().
  std::string to_string() const;

 private:
  Kind kind_;
};

enum class CdnChoice { kLocal, kRemote, kNone };

std::string_view to_string(CdnChoice cdn);
CdnChoice cdn_choice_from_string(std::string_view text);

/// Everything the planner needs apart from the series and the cap.
struct PlanSetup {
  DualPathConfig path;
  QualityLadder ladder = QualityLadder::standard();
  ReductionStrategy strategy = SingleTier{{"FHD", 8.0}};
  std::vector<UserProfile> profiles = {UserProfile::high_quality(), UserProfile::green()};
};

struct DayRecord {
  Date date;
  double ci_local = 0.0;
  std::optional<double> ci_remote;
  CdnChoice cdn = CdnChoice::kNone;
  QualityTier tier;
  double effective_intensity = 0.0;
  double budget = 0.0;

  bool operator==(const DayRecord&) const = default;
};

struct ProfileLoss {
  UserProfile profile;
  double total_utility_loss = 0.0;
  /// Mean per-video utility reduction over the period.
  double avg_utility_reduction = 0.0;

  bool operator==(const ProfileLoss&) const = default;
};

struct ScheduleAggregates {
  std::size_t period_days = 0;
  std::size_t reduced_day_count = 0;
  double avg_bitrate_reduction = 0.0;
  std::vector<ProfileLoss> losses;

  bool operator==(const ScheduleAggregates&) const = default;
};

struct Schedule {
  double cap = 0.0;
  PlanSetup setup;
  std::vector<DayRecord> days;
  ScheduleAggregates aggregates;
  bool feasible = true;
  /// One entry per day whose budget stayed negative after reduction.
  std::vector<std::string> diagnostics;

  bool dual_cdn() const noexcept;
  /// Distinct tiers below the top that the schedule actually uses.
  std::vector<QualityTier> reduced_tiers() const;
};

/// A day's attributable emissions divided by the emissions of serving the
/// full tier locally, scaled so a full-quality local day equals its raw
/// intensity. Reduced days scale by bitrate / top bitrate; remote days use
/// the path-weighted mix of the two intensities. Throws DegenerateInputError
/// when the local path has zero power.
double effective_intensity(const DualPathConfig& path, CdnChoice cdn, double ci_local,
                           double ci_remote, double bitrate_mbps, double top_bitrate_mbps);

/// Greedy forward pass keeping the running mean effective intensity at or
/// below `cap`. Pass `remote` to let each day pick the lower-emission data
/// center first. A day whose budget stays negative after reduction is still
/// reduced; the negative budget carries forward and the schedule is marked
/// infeasible.
Schedule plan(const CarbonIntensitySeries& local, const CarbonIntensitySeries* remote,
              const PlanSetup& setup, double cap);

/// Uniform-demand aggregates of the schedule's day records (weight 1/D per
/// day). Depends only on the tiers served, not on intensities or budgets.
ScheduleAggregates aggregate(const Schedule& schedule);

/// Aggregates recomputed with per-day demand weights (non-negative, summing
/// to 1) instead of the uniform 1/D. total_utility_loss is expressed in
/// uniform-day equivalents (D times the weighted mean) so uniform weights
/// reproduce plan()'s figures.
ScheduleAggregates plan_metrics_weighted(const Schedule& schedule,
                                         std::span<const double> demand_weights);

struct CapSweepEntry {
  double cap = 0.0;
  bool feasible = true;
  ScheduleAggregates aggregates;
};

struct CapSweepResult {
  /// Ordered by cap, descending.
  std::vector<CapSweepEntry> entries;
  /// Whether reduced_day_count is non-decreasing down the list. The greedy
  /// pass does not guarantee this for every series.
  bool monotone = true;
};

CapSweepResult sweep_caps(const CarbonIntensitySeries& local, const CarbonIntensitySeries* remote,
                          const PlanSetup& setup, std::span<const double> caps);

}  // namespace greenstream
