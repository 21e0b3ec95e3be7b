#include "greenstream/utility_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "greenstream/error.hpp"

namespace greenstream {

namespace {

constexpr double kMinMos = 1.0;
constexpr double kMaxMos = 5.0;

// Bitrate at which the profile reaches MOS 5.
double saturation_bitrate(const QualityLadder& ladder, const UserProfile& profile) {
  validate(profile);
  const double saturation = ladder.max_bitrate() / profile.gamma;
  if (!(saturation > ladder.min_bitrate())) {
    std::ostringstream msg;
    msg << "gamma " << profile.gamma << " pushes the saturation bitrate " << saturation
        << " Mbps to or below the ladder minimum " << ladder.min_bitrate() << " Mbps";
    throw ConfigError(msg.str());
  }
  return saturation;
}

}  // namespace

QualityLadder::QualityLadder(std::vector<QualityTier> tiers, double min_bitrate_mbps)
    : tiers_(std::move(tiers)), min_bitrate_(min_bitrate_mbps) {
  if (tiers_.empty()) {
    throw ConfigError("quality ladder has no tiers");
  }
  if (!std::isfinite(min_bitrate_) || min_bitrate_ <= 0.0) {
    throw ConfigError("ladder minimum bitrate must be positive and finite");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < tiers_.size(); ++i) {
    const auto& tier = tiers_[i];
    if (tier.name.empty()) {
      throw ConfigError("quality tier " + std::to_string(i) + " has an empty name");
    }
    if (!names.insert(tier.name).second) {
      throw ConfigError("duplicate quality tier '" + tier.name + "'");
    }
    if (!std::isfinite(tier.bitrate_mbps) || tier.bitrate_mbps <= 0.0) {
      throw ConfigError("tier '" + tier.name + "' must have a positive finite bitrate");
    }
    if (i > 0 && !(tier.bitrate_mbps < tiers_[i - 1].bitrate_mbps)) {
      throw ConfigError("tiers must be strictly descending in bitrate ('" + tier.name +
                        "' is not below '" + tiers_[i - 1].name + "')");
    }
  }
  if (!(min_bitrate_ < tiers_.back().bitrate_mbps)) {
    throw ConfigError("ladder minimum bitrate must lie below the lowest tier '" +
                      tiers_.back().name + "'");
  }
}

QualityLadder QualityLadder::standard() {
  return QualityLadder({{"4K", 20.0}, {"FHD", 8.0}, {"HD", 2.5}}, 0.2);
}

std::optional<QualityTier> QualityLadder::find(std::string_view name) const {
  const auto it = std::find_if(tiers_.begin(), tiers_.end(),
                               [&](const QualityTier& t) { return t.name == name; });
  if (it == tiers_.end()) {
    return std::nullopt;
  }
  return *it;
}

const QualityTier& QualityLadder::at(std::string_view name) const {
  for (const auto& tier : tiers_) {
    if (tier.name == name) {
      return tier;
    }
  }
  std::string known;
  for (const auto& tier : tiers_) {
    known += (known.empty() ? "" : ", ") + tier.name;
  }
  throw ConfigError("unknown quality tier '" + std::string(name) + "' (ladder has: " + known +
                    ")");
}

void validate(const UserProfile& profile) {
  if (!std::isfinite(profile.gamma) || profile.gamma < 1.0) {
    throw ConfigError("user profile '" + profile.label + "': gamma must be finite and >= 1");
  }
}

double mos(double bitrate_mbps, const QualityLadder& ladder, const UserProfile& profile) {
  const double saturation = saturation_bitrate(ladder, profile);
  if (std::isnan(bitrate_mbps) || bitrate_mbps < ladder.min_bitrate()) {
    std::ostringstream msg;
    msg << "bitrate " << bitrate_mbps << " Mbps is below the ladder minimum "
        << ladder.min_bitrate() << " Mbps";
    throw DomainError(msg.str());
  }
  const double log_min = std::log(ladder.min_bitrate());
  const double span = std::log(saturation) - log_min;
  const double raw = kMinMos + (kMaxMos - kMinMos) * (std::log(bitrate_mbps) - log_min) / span;
  return std::clamp(raw, kMinMos, kMaxMos);
}

double utility(double bitrate_mbps, const QualityLadder& ladder, const UserProfile& profile) {
  return mos(bitrate_mbps, ladder, profile) / kMaxMos;
}

double utility_loss(const QualityTier& from, const QualityTier& to, const QualityLadder& ladder,
                    const UserProfile& profile) {
  if (from.bitrate_mbps < to.bitrate_mbps) {
    throw ArgumentError("utility loss needs from ('" + from.name + "') at or above to ('" +
                        to.name + "')");
  }
  return std::max(0.0, utility(from.bitrate_mbps, ladder, profile) -
                           utility(to.bitrate_mbps, ladder, profile));
}

double net_utility_loss(double utility_loss, double discount) {
  if (!(utility_loss >= 0.0)) {
    throw ArgumentError("utility loss must be >= 0");
  }
  if (!(discount >= 0.0 && discount <= 1.0)) {
    throw ArgumentError("discount must lie in [0, 1]");
  }
  return utility_loss - discount;
}

double bitrate_for_utility(double target, const QualityLadder& ladder,
                           const UserProfile& profile) {
  const double floor = kMinMos / kMaxMos;
  if (!(target >= floor && target <= 1.0)) {
    throw DomainError("target utility must lie in [0.2, 1]");
  }
  const double saturation = saturation_bitrate(ladder, profile);
  const double log_min = std::log(ladder.min_bitrate());
  const double fraction = (target * kMaxMos - kMinMos) / (kMaxMos - kMinMos);
  return std::exp(log_min + fraction * (std::log(saturation) - log_min));
}

}  // namespace greenstream
