#include "greenstream/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "greenstream/error.hpp"

namespace greenstream {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const auto a : allowed) {
      ok = ok || key == a;
    }
    if (!ok) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double number(const json& value, std::string_view what) {
  if (!value.is_number()) {
    throw ConfigError(std::string(what) + " must be a number");
  }
  return value.get<double>();
}

std::string text(const json& value, std::string_view what) {
  if (!value.is_string()) {
    throw ConfigError(std::string(what) + " must be a string");
  }
  return value.get<std::string>();
}

template <typename Fn>
void for_each_element(const json& value, std::string_view what, Fn&& fn) {
  if (!value.is_array()) {
    throw ConfigError(std::string(what) + " must be an array");
  }
  for (std::size_t i = 0; i < value.size(); ++i) {
    fn(value[i], std::string(what) + "[" + std::to_string(i) + "]");
  }
}

SegmentRef segment_ref(const json& value, std::string_view what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.get<double>();
  throw ConfigError(std::string(what) + " must be a segment label or a W/Mbps number");
}

std::filesystem::path resolve_path(const std::string& p, const std::filesystem::path& base) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

double RunConfig::resolve(const SegmentRef& ref, SegmentKind kind) const {
  if (const auto* value = std::get_if<double>(&ref)) {
    if (!std::isfinite(*value) || *value < 0.0) {
      throw ConfigError("explicit segment intensity must be finite and >= 0 W/Mbps");
    }
    return *value;
  }
  const auto& segment = catalog.at(std::get<std::string>(ref));
  if (segment.kind != kind) {
    throw ConfigError("segment '" + segment.label + "' is a " +
                      std::string(to_string(segment.kind)) + " segment, expected " +
                      std::string(to_string(kind)));
  }
  return segment.w_per_mbps;
}

DualPathConfig RunConfig::dual_path() const {
  return {resolve(access, SegmentKind::kAccess), resolve(core, SegmentKind::kCore),
          resolve(local_dc, SegmentKind::kDataCenter),
          resolve(remote_dc, SegmentKind::kDataCenter)};
}

PlanSetup RunConfig::setup() const {
  return {dual_path(), ladder, ReductionStrategy::parse(strategy, ladder), profiles};
}

std::vector<std::string> RunConfig::grid_labels() const {
  if (!cdn_grid.empty()) {
    return cdn_grid;
  }
  return catalog.labels_of(SegmentKind::kDataCenter);
}

void validate(const RunConfig& config) {
  (void)config.setup();
  for (const auto& label : config.grid_labels()) {
    (void)config.resolve(label, SegmentKind::kDataCenter);
  }
  std::set<std::string> labels;
  for (const auto& profile : config.profiles) {
    validate(profile);
    if (profile.label.empty() || !labels.insert(profile.label).second) {
      throw ConfigError("user profile labels must be non-empty and unique");
    }
    if (profile.label.find_first_of(",\r\n\"") != std::string::npos) {
      throw ConfigError("user profile label '" + profile.label +
                        "' must not contain commas, quotes or line breaks");
    }
    // Rejects gammas that push the saturation bitrate below the ladder minimum.
    (void)utility(config.ladder.top().bitrate_mbps, config.ladder, profile);
  }
  for (const double cap : config.caps) {
    if (!std::isfinite(cap) || cap <= 0.0) {
      throw ConfigError("caps must be positive and finite");
    }
  }
  if (!std::isfinite(config.reward_rate) || config.reward_rate < 0.0) {
    throw ConfigError("reward_rate must be finite and >= 0");
  }
}

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config",
                 {"ladder", "segments", "path", "profiles", "caps", "strategy", "local_ci",
                  "remote_ci", "local_region", "remote_region", "reward_rate", "out", "cdn_grid",
                  "demand_weights"});

  RunConfig cfg;
  if (doc.contains("ladder")) {
    const auto& ladder = doc["ladder"];
    reject_unknown(ladder, "ladder", {"min_bitrate_mbps", "tiers"});
    if (!ladder.contains("min_bitrate_mbps") || !ladder.contains("tiers")) {
      throw ConfigError("ladder needs min_bitrate_mbps and tiers");
    }
    std::vector<QualityTier> tiers;
    for_each_element(ladder["tiers"], "ladder.tiers", [&](const json& t, const std::string& w) {
      reject_unknown(t, w, {"name", "bitrate_mbps"});
      if (!t.contains("name") || !t.contains("bitrate_mbps")) {
        throw ConfigError(w + " needs name and bitrate_mbps");
      }
      tiers.push_back({text(t["name"], w + ".name"), number(t["bitrate_mbps"], w + ".bitrate_mbps")});
    });
    cfg.ladder = QualityLadder(std::move(tiers),
                               number(ladder["min_bitrate_mbps"], "ladder.min_bitrate_mbps"));
  }
  if (doc.contains("segments")) {
    for_each_element(doc["segments"], "segments", [&](const json& s, const std::string& w) {
      reject_unknown(s, w, {"label", "kind", "w_per_mbps"});
      if (!s.contains("label") || !s.contains("kind") || !s.contains("w_per_mbps")) {
        throw ConfigError(w + " needs label, kind and w_per_mbps");
      }
      cfg.catalog = cfg.catalog.with({segment_kind_from_string(text(s["kind"], w + ".kind")),
                                      text(s["label"], w + ".label"),
                                      number(s["w_per_mbps"], w + ".w_per_mbps")});
    });
  }
  if (doc.contains("path")) {
    const auto& path = doc["path"];
    reject_unknown(path, "path", {"access", "core", "local_dc", "remote_dc"});
    if (path.contains("access")) cfg.access = segment_ref(path["access"], "path.access");
    if (path.contains("core")) cfg.core = segment_ref(path["core"], "path.core");
    if (path.contains("local_dc")) cfg.local_dc = segment_ref(path["local_dc"], "path.local_dc");
    if (path.contains("remote_dc")) {
      cfg.remote_dc = segment_ref(path["remote_dc"], "path.remote_dc");
    }
  }
  if (doc.contains("profiles")) {
    cfg.profiles.clear();
    for_each_element(doc["profiles"], "profiles", [&](const json& p, const std::string& w) {
      reject_unknown(p, w, {"label", "gamma"});
      if (!p.contains("label") || !p.contains("gamma")) {
        throw ConfigError(w + " needs label and gamma");
      }
      cfg.profiles.push_back({text(p["label"], w + ".label"), number(p["gamma"], w + ".gamma")});
    });
  }
  if (doc.contains("caps")) {
    for_each_element(doc["caps"], "caps", [&](const json& c, const std::string& w) {
      cfg.caps.push_back(number(c, w));
    });
  }
  if (doc.contains("strategy")) cfg.strategy = text(doc["strategy"], "strategy");
  if (doc.contains("local_ci")) {
    cfg.local_ci = resolve_path(text(doc["local_ci"], "local_ci"), base_dir);
  }
  if (doc.contains("remote_ci")) {
    cfg.remote_ci = resolve_path(text(doc["remote_ci"], "remote_ci"), base_dir);
  }
  if (doc.contains("local_region")) cfg.local_region = text(doc["local_region"], "local_region");
  if (doc.contains("remote_region")) {
    cfg.remote_region = text(doc["remote_region"], "remote_region");
  }
  if (doc.contains("reward_rate")) cfg.reward_rate = number(doc["reward_rate"], "reward_rate");
  if (doc.contains("out")) cfg.out_dir = resolve_path(text(doc["out"], "out"), base_dir);
  if (doc.contains("cdn_grid")) {
    for_each_element(doc["cdn_grid"], "cdn_grid", [&](const json& l, const std::string& w) {
      cfg.cdn_grid.push_back(text(l, w));
    });
  }
  if (doc.contains("demand_weights")) {
    std::vector<double> weights;
    for_each_element(doc["demand_weights"], "demand_weights",
                     [&](const json& v, const std::string& w) { weights.push_back(number(v, w)); });
    cfg.demand_weights = std::move(weights);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

}  // namespace greenstream
