#include "greenstream/energy_path.hpp"

#include <algorithm>
#include <cmath>

#include "greenstream/error.hpp"

namespace greenstream {

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kAccess:
      return "access";
    case SegmentKind::kCore:
      return "core";
    case SegmentKind::kDataCenter:
      return "data_center";
  }
  return "unknown";
}

SegmentKind segment_kind_from_string(std::string_view text) {
  if (text == "access") return SegmentKind::kAccess;
  if (text == "core") return SegmentKind::kCore;
  if (text == "data_center") return SegmentKind::kDataCenter;
  throw ConfigError("unknown segment kind '" + std::string(text) +
                    "' (expected access, core or data_center)");
}

void validate(const SegmentProfile& segment) {
  if (!std::isfinite(segment.w_per_mbps) || segment.w_per_mbps < 0.0) {
    throw ConfigError("segment '" + segment.label + "' needs a finite intensity >= 0 W/Mbps");
  }
}

PathProfile::PathProfile(SegmentProfile access, SegmentProfile core, SegmentProfile data_center)
    : access_(std::move(access)), core_(std::move(core)), data_center_(std::move(data_center)) {
  const auto expect = [](const SegmentProfile& s, SegmentKind kind) {
    if (s.kind != kind) {
      throw ConfigError("segment '" + s.label + "' is a " + std::string(to_string(s.kind)) +
                        " segment, expected " + std::string(to_string(kind)));
    }
    validate(s);
  };
  expect(access_, SegmentKind::kAccess);
  expect(core_, SegmentKind::kCore);
  expect(data_center_, SegmentKind::kDataCenter);
}

double PathProfile::total_w_per_mbps() const noexcept {
  return access_.w_per_mbps + core_.w_per_mbps + data_center_.w_per_mbps;
}

double SegmentBreakdown::operator[](SegmentKind kind) const noexcept {
  switch (kind) {
    case SegmentKind::kAccess:
      return access;
    case SegmentKind::kCore:
      return core;
    case SegmentKind::kDataCenter:
      return data_center;
  }
  return 0.0;
}

const SegmentCatalog& SegmentCatalog::builtin() {
  static const SegmentCatalog catalog = [] {
    using K = SegmentKind;
    SegmentCatalog c;
    for (SegmentProfile s : {
             SegmentProfile{K::kCore, "core", 0.03},
             SegmentProfile{K::kAccess, "wired", 0.02},
             SegmentProfile{K::kAccess, "4g-suburban", 1.5},
             SegmentProfile{K::kAccess, "4g-dense-urban", 8.86},
             SegmentProfile{K::kAccess, "4g-wilderness-to-urban", 14.9},
             SegmentProfile{K::kAccess, "5g-dense-urban", 4.2},
             SegmentProfile{K::kAccess, "5g-wilderness-to-urban", 6.3},
             SegmentProfile{K::kAccess, "6g", 0.42},
             SegmentProfile{K::kDataCenter, "cdn-very-large", 0.01},
             SegmentProfile{K::kDataCenter, "cdn-large", 0.025},
             SegmentProfile{K::kDataCenter, "cdn-medium", 0.05},
             SegmentProfile{K::kDataCenter, "cdn-small", 0.09},
         }) {
      c.entries_.emplace(s.label, s);
    }
    return c;
  }();
  return catalog;
}

SegmentCatalog SegmentCatalog::with(SegmentProfile segment) const {
  if (segment.label.empty()) {
    throw ConfigError("segment label must not be empty");
  }
  validate(segment);
  SegmentCatalog copy = *this;
  const std::string label = segment.label;
  if (!copy.entries_.emplace(label, std::move(segment)).second) {
    throw ConfigError("segment label '" + label + "' is already defined");
  }
  return copy;
}

const SegmentProfile& SegmentCatalog::at(std::string_view label) const {
  const auto it = entries_.find(label);
  if (it == entries_.end()) {
    std::string known;
    for (const auto& [name, _] : entries_) {
      known += (known.empty() ? "" : ", ") + name;
    }
    throw ConfigError("unknown segment label '" + std::string(label) + "' (known: " + known +
                      ")");
  }
  return it->second;
}

bool SegmentCatalog::contains(std::string_view label) const {
  return entries_.find(label) != entries_.end();
}

std::vector<std::string> SegmentCatalog::labels() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, _] : entries_) {
    out.push_back(name);
  }
  return out;
}

std::vector<std::string> SegmentCatalog::labels_of(SegmentKind kind) const {
  std::vector<const SegmentProfile*> matching;
  for (const auto& [_, s] : entries_) {
    if (s.kind == kind) {
      matching.push_back(&s);
    }
  }
  std::stable_sort(matching.begin(), matching.end(),
                   [](const auto* l, const auto* r) { return l->w_per_mbps < r->w_per_mbps; });
  std::vector<std::string> out;
  for (const auto* s : matching) {
    out.push_back(s->label);
  }
  return out;
}

double path_power(const PathProfile& path, double bitrate_mbps) {
  if (!(bitrate_mbps >= 0.0)) {
    throw ArgumentError("bitrate must be >= 0");
  }
  return path.total_w_per_mbps() * bitrate_mbps;
}

SegmentBreakdown energy_reduction(const PathProfile& path, const QualityTier& from,
                                  const QualityTier& to) {
  if (from.bitrate_mbps < to.bitrate_mbps) {
    throw ArgumentError("energy reduction needs from ('" + from.name + "') at or above to ('" +
                        to.name + "')");
  }
  const double delta = from.bitrate_mbps - to.bitrate_mbps;
  return {path.access().w_per_mbps * delta, path.core().w_per_mbps * delta,
          path.data_center().w_per_mbps * delta};
}

SegmentBreakdown segment_shares(const PathProfile& path) {
  const double total = path.total_w_per_mbps();
  if (!(total > 0.0)) {
    throw DegenerateInputError("segment shares are undefined for a path with zero power");
  }
  return {path.access().w_per_mbps / total, path.core().w_per_mbps / total,
          path.data_center().w_per_mbps / total};
}

}  // namespace greenstream
