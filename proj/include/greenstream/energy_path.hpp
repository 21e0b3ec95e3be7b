#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "greenstream/utility_model.hpp"

namespace greenstream {

enum class SegmentKind { kAccess, kCore, kDataCenter };

std::string_view to_string(SegmentKind kind);
/// Accepts "access", "core", "data_center". Throws ConfigError otherwise.
SegmentKind segment_kind_from_string(std::string_view text);

/// Incremental (traffic-dependent) power of one segment, in W per Mbps.
/// Idle power is not modeled.
struct SegmentProfile {
  SegmentKind kind = SegmentKind::kAccess;
  std::string label;
  double w_per_mbps = 0.0;

  friend bool operator==(const SegmentProfile&, const SegmentProfile&) = default;
};

void validate(const SegmentProfile& segment);

/// Access, core and data-center segments of one end-to-end path.
class PathProfile {
 public:
  /// Throws ConfigError if a segment has the wrong kind or an invalid intensity.
  PathProfile(SegmentProfile access, SegmentProfile core, SegmentProfile data_center);

  const SegmentProfile& access() const noexcept { return access_; }
  const SegmentProfile& core() const noexcept { return core_; }
  const SegmentProfile& data_center() const noexcept { return data_center_; }

  /// Sum of the three intensities, W per Mbps.
  double total_w_per_mbps() const noexcept;

 private:
  SegmentProfile access_;
  SegmentProfile core_;
  SegmentProfile data_center_;
};

/// Per-segment watts (or fractions), indexed like SegmentKind.
struct SegmentBreakdown {
  double access = 0.0;
  double core = 0.0;
  double data_center = 0.0;

  double total() const noexcept { return access + core + data_center; }
  double operator[](SegmentKind kind) const noexcept;
};

/// Named segment profiles. The built-in set holds the reference incremental
/// energy figures; user entries are layered on a copy and may not shadow a
/// built-in label.
class SegmentCatalog {
 public:
  static const SegmentCatalog& builtin();

  /// Copy of this catalog with `segment` added. Throws ConfigError on a
  /// duplicate label.
  SegmentCatalog with(SegmentProfile segment) const;

  const SegmentProfile& at(std::string_view label) const;
  bool contains(std::string_view label) const;
  std::vector<std::string> labels() const;
  /// Labels of a given kind, in ascending intensity.
  std::vector<std::string> labels_of(SegmentKind kind) const;

 private:
  std::map<std::string, SegmentProfile, std::less<>> entries_;
};

/// (a + c + d) * bitrate, in W. Throws ArgumentError on a negative bitrate.
double path_power(const PathProfile& path, double bitrate_mbps);

/// Power saved per segment when streaming `to` instead of `from`.
SegmentBreakdown energy_reduction(const PathProfile& path, const QualityTier& from,
                                  const QualityTier& to);

/// Fraction of the path's incremental power attributable to each segment.
/// Bitrate-independent. Throws DegenerateInputError for an all-zero path.
SegmentBreakdown segment_shares(const PathProfile& path);

}  // namespace greenstream
