#include "greenstream/carbon.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "greenstream/error.hpp"

namespace greenstream {

namespace {

// W * (g/kWh) -> g/h.
constexpr double kWattsPerKilowatt = 1000.0;

bool parse_digits(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (const char ch : text) {
    if (ch < '0' || ch > '9') return false;
  }
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  // from_chars rejects a leading '+', which is fine for this format.
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

void check_days(const std::vector<DailyIntensity>& days) {
  using std::chrono::sys_days;
  for (std::size_t i = 0; i < days.size(); ++i) {
    const auto& day = days[i];
    if (!std::isfinite(day.g_per_kwh) || day.g_per_kwh < 0.0) {
      throw ArgumentError("intensity on " + format_iso_date(day.date) +
                          " must be finite and >= 0");
    }
    if (i == 0) continue;
    const auto step = sys_days{day.date} - sys_days{days[i - 1].date};
    if (step.count() <= 0) {
      throw ArgumentError("dates must be strictly increasing (" + format_iso_date(day.date) +
                          " follows " + format_iso_date(days[i - 1].date) + ")");
    }
    if (step.count() != 1) {
      throw ArgumentError("gap in series between " + format_iso_date(days[i - 1].date) +
                          " and " + format_iso_date(day.date));
    }
  }
}

}  // namespace

bool parse_iso_date(std::string_view text, Date& out) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
    return false;
  }
  int y = 0, m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d)) {
    return false;
  }
  const Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) {
    return false;
  }
  out = date;
  return true;
}

std::string format_iso_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

CarbonIntensitySeries::CarbonIntensitySeries(std::string region, std::vector<DailyIntensity> days)
    : region_(std::move(region)), days_(std::move(days)) {
  if (days_.empty()) {
    throw EmptyInputError("carbon intensity series for '" + region_ + "' has no days");
  }
  check_days(days_);
}

CarbonIntensitySeries parse_intensity_csv(std::string_view text, std::string region) {
  constexpr std::string_view kBom = "\xEF\xBB\xBF";
  if (text.substr(0, kBom.size()) == kBom) {
    text.remove_prefix(kBom.size());
  }
  if (trim(text).empty()) {
    throw EmptyInputError("carbon intensity CSV is empty");
  }

  std::vector<DailyIntensity> days;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(line);

    if (!header_seen) {
      if (line != kIntensityCsvHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kIntensityCsvHeader) +
                                      "', got '" + std::string(line) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) {
      // Only trailing blank lines are tolerated.
      if (!trim(text).empty()) {
        throw ParseError(line_no, "blank line inside data");
      }
      break;
    }

    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly 2 fields");
    }
    const auto date_text = trim(line.substr(0, comma));
    const auto value_text = trim(line.substr(comma + 1));

    DailyIntensity day;
    if (!parse_iso_date(date_text, day.date)) {
      throw ParseError(line_no, "invalid date '" + std::string(date_text) + "'");
    }
    if (!parse_number(value_text, day.g_per_kwh) || !std::isfinite(day.g_per_kwh)) {
      throw ParseError(line_no, "non-numeric intensity '" + std::string(value_text) + "'");
    }
    if (day.g_per_kwh < 0.0) {
      throw ParseError(line_no, "negative intensity " + std::string(value_text));
    }
    if (!days.empty()) {
      using std::chrono::sys_days;
      const auto step = (sys_days{day.date} - sys_days{days.back().date}).count();
      if (step <= 0) {
        throw ParseError(line_no, "date " + std::string(date_text) +
                                      " does not follow the previous row (duplicate or "
                                      "out of order)");
      }
      if (step != 1) {
        throw ParseError(line_no, "gap of " + std::to_string(step - 1) + " day(s) before " +
                                      std::string(date_text));
      }
    }
    days.push_back(day);
  }
  if (days.empty()) {
    throw EmptyInputError("carbon intensity CSV has a header but no rows");
  }
  return CarbonIntensitySeries(std::move(region), std::move(days));
}

CarbonIntensitySeries load_intensity_csv(const std::filesystem::path& path, std::string region) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open carbon intensity file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (region.empty()) {
    region = path.stem().string();
  }
  try {
    return parse_intensity_csv(buf.str(), std::move(region));
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
}

void require_aligned(const CarbonIntensitySeries& local, const CarbonIntensitySeries& remote) {
  if (local.size() != remote.size() || local[0].date != remote[0].date) {
    throw ArgumentError("series '" + local.region() + "' (" + format_iso_date(local[0].date) +
                        ", " + std::to_string(local.size()) + " days) and '" + remote.region() +
                        "' (" + format_iso_date(remote[0].date) + ", " +
                        std::to_string(remote.size()) + " days) cover different dates");
  }
}

void validate(const DualPathConfig& cfg) {
  for (const double v : {cfg.access, cfg.core, cfg.local_dc, cfg.remote_dc}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("path intensities must be finite and >= 0 W/Mbps");
    }
  }
}

double local_emission_rate(const DualPathConfig& cfg, double ci_local, double bitrate_mbps) {
  return (cfg.access + cfg.core + cfg.local_dc) * bitrate_mbps * ci_local / kWattsPerKilowatt;
}

double remote_emission_rate(const DualPathConfig& cfg, double ci_local, double ci_remote,
                            double bitrate_mbps) {
  const double weighted =
      (cfg.access + cfg.core) * ci_local + (cfg.core + cfg.remote_dc) * ci_remote;
  return weighted * bitrate_mbps / kWattsPerKilowatt;
}

double remote_threshold(const DualPathConfig& cfg) {
  const double denominator = cfg.core + cfg.remote_dc;
  if (denominator == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return cfg.local_dc / denominator;
}

bool remote_preferred(const DualPathConfig& cfg, double ci_local, double ci_remote) {
  return (cfg.core + cfg.remote_dc) * ci_remote < cfg.local_dc * ci_local;
}

std::size_t count_remote_days(const CarbonIntensitySeries& local,
                              const CarbonIntensitySeries& remote, const DualPathConfig& cfg) {
  require_aligned(local, remote);
  std::size_t count = 0;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (remote_preferred(cfg, local[i].g_per_kwh, remote[i].g_per_kwh)) {
      ++count;
    }
  }
  return count;
}

}  // namespace greenstream
