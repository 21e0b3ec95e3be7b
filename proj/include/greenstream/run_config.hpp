#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greenstream/carbon.hpp"
#include "greenstream/energy_path.hpp"
#include "greenstream/scheduler.hpp"
#include "greenstream/subscription.hpp"
#include "greenstream/utility_model.hpp"

namespace greenstream {

/// A path segment given either as a catalog label or as explicit W/Mbps.
using SegmentRef = std::variant<std::string, double>;

struct RunConfig {
  QualityLadder ladder = QualityLadder::standard();
  SegmentCatalog catalog = SegmentCatalog::builtin();
  SegmentRef access = std::string("wired");
  SegmentRef core = std::string("core");
  SegmentRef local_dc = std::string("cdn-small");
  SegmentRef remote_dc = std::string("cdn-very-large");
  std::vector<UserProfile> profiles = {UserProfile::high_quality(), UserProfile::green()};
  std::vector<double> caps;
  std::string strategy = "single-fhd";
  std::optional<std::filesystem::path> local_ci;
  std::optional<std::filesystem::path> remote_ci;
  std::string local_region;
  std::string remote_region;
  double reward_rate = kDefaultRewardRate;
  std::filesystem::path out_dir = ".";
  /// Data-center labels for the cdn-days grid; empty means every
  /// data_center entry of the catalog.
  std::vector<std::string> cdn_grid;
  std::optional<std::vector<double>> demand_weights;

  /// W/Mbps of a reference, checking that a label names a segment of `kind`.
  double resolve(const SegmentRef& ref, SegmentKind kind) const;
  DualPathConfig dual_path() const;
  PlanSetup setup() const;
  std::vector<std::string> grid_labels() const;
};

/// Parses the JSON config document. Relative CSV and output paths resolve
/// against `base_dir`. Unknown keys at any level are rejected with
/// ConfigError, and the whole document is validated before returning.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Checks cross-field consistency (strategy against ladder, profiles,
/// segment references, caps, reward rate).
void validate(const RunConfig& config);

}  // namespace greenstream
