#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greenstream {

/// One resolution tier of a streaming ladder.
struct QualityTier {
  std::string name;
  double bitrate_mbps = 0.0;

  friend bool operator==(const QualityTier&, const QualityTier&) = default;
};

/// Ordered set of tiers, highest bitrate first, plus the minimum bitrate at
/// which MOS is 1. The top tier's bitrate is the bitrate at which a
/// high-quality user reaches MOS 5.
class QualityLadder {
 public:
  /// Throws ConfigError unless tiers are non-empty, strictly descending in
  /// bitrate, uniquely named, and min_bitrate is positive and below the last
  /// tier.
  QualityLadder(std::vector<QualityTier> tiers, double min_bitrate_mbps);

  /// 4K 20 Mbps, FHD 8 Mbps, HD 2.5 Mbps, minimum 0.2 Mbps.
  static QualityLadder standard();

  const std::vector<QualityTier>& tiers() const noexcept { return tiers_; }
  const QualityTier& top() const noexcept { return tiers_.front(); }
  double min_bitrate() const noexcept { return min_bitrate_; }
  double max_bitrate() const noexcept { return tiers_.front().bitrate_mbps; }

  std::optional<QualityTier> find(std::string_view name) const;
  /// Like find() but throws ConfigError naming the known tiers.
  const QualityTier& at(std::string_view name) const;

  friend bool operator==(const QualityLadder&, const QualityLadder&) = default;

 private:
  std::vector<QualityTier> tiers_;
  double min_bitrate_;
};

/// A user type. gamma = 1 is the high-quality user; gamma > 1 a green user
/// who reaches maximum satisfaction at top bitrate / gamma.
struct UserProfile {
  std::string label;
  double gamma = 1.0;

  static UserProfile high_quality() { return {"high-quality", 1.0}; }
  static UserProfile green(double gamma = 1.5) { return {"green", gamma}; }

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

void validate(const UserProfile& profile);

/// Logarithmic MOS model anchored at MOS 1 for the ladder minimum and MOS 5
/// for max_bitrate / gamma, clamped to [1, 5]. The log base cancels, so the
/// natural log is used.
double mos(double bitrate_mbps, const QualityLadder& ladder, const UserProfile& profile);

/// mos / 5; lies in [0.2, 1].
double utility(double bitrate_mbps, const QualityLadder& ladder, const UserProfile& profile);

/// utility(from) - utility(to). Throws ArgumentError when `to` has the higher
/// bitrate.
double utility_loss(const QualityTier& from, const QualityTier& to, const QualityLadder& ladder,
                    const UserProfile& profile);

/// Utility loss minus the monetary discount, both on the normalized [0, 1]
/// scale. Negative means the discount over-compensates.
double net_utility_loss(double utility_loss, double discount);

/// Smallest bitrate at which `utility` reaches `target` (inverse of the
/// unclamped curve). target must lie in [0.2, 1].
double bitrate_for_utility(double target, const QualityLadder& ladder, const UserProfile& profile);

}  // namespace greenstream
