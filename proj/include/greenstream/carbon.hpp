#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace greenstream {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Returns false on any
/// malformed or impossible date.
bool parse_iso_date(std::string_view text, Date& out);
std::string format_iso_date(const Date& date);

struct DailyIntensity {
  Date date;
  double g_per_kwh = 0.0;

  friend bool operator==(const DailyIntensity&, const DailyIntensity&) = default;
};

/// Daily grid carbon intensity (gCO2e/kWh) for one region over a contiguous
/// run of days.
class CarbonIntensitySeries {
 public:
  /// Throws EmptyInputError for no days, ArgumentError for gaps, duplicates,
  /// or negative/non-finite intensities.
  CarbonIntensitySeries(std::string region, std::vector<DailyIntensity> days);

  const std::string& region() const noexcept { return region_; }
  const std::vector<DailyIntensity>& days() const noexcept { return days_; }
  std::size_t size() const noexcept { return days_.size(); }
  const DailyIntensity& operator[](std::size_t i) const { return days_[i]; }

 private:
  std::string region_;
  std::vector<DailyIntensity> days_;
};

inline constexpr std::string_view kIntensityCsvHeader = "date,carbon_intensity_gco2eq_per_kwh";

/// Parses `date,carbon_intensity_gco2eq_per_kwh` CSV text. Accepts LF or CRLF
/// line endings, a UTF-8 BOM, and a trailing newline. Errors carry the
/// 1-based line number.
CarbonIntensitySeries parse_intensity_csv(std::string_view text, std::string region);

/// Reads and parses a CSV file. An empty region defaults to the file stem.
CarbonIntensitySeries load_intensity_csv(const std::filesystem::path& path,
                                         std::string region = {});

/// Throws ArgumentError unless both series cover the same dates.
void require_aligned(const CarbonIntensitySeries& local, const CarbonIntensitySeries& remote);

/// Incremental W/Mbps of the segments involved in local vs remote serving.
/// Remote serving traverses the core twice: once on the user's side at the
/// local intensity, once on the data-center side at the remote intensity.
struct DualPathConfig {
  double access = 0.0;
  double core = 0.0;
  double local_dc = 0.0;
  double remote_dc = 0.0;
};

void validate(const DualPathConfig& cfg);

/// (a + c + d_l) * bitrate * CI_l, converted to gCO2e per hour.
double local_emission_rate(const DualPathConfig& cfg, double ci_local, double bitrate_mbps);

/// ((a + c) * CI_l + (c + d_r) * CI_r) * bitrate, in gCO2e per hour.
double remote_emission_rate(const DualPathConfig& cfg, double ci_local, double ci_remote,
                            double bitrate_mbps);

/// d_l / (c + d_r): the remote data center wins when CI_r / CI_l is strictly
/// below this ratio. Infinite when c + d_r is zero.
double remote_threshold(const DualPathConfig& cfg);

/// True iff CI_r / CI_l < d_l / (c + d_r). Evaluated in cross-multiplied
/// form, so CI_l = 0 always selects local (ties go to local). Independent of
/// the access segment and of bitrate.
bool remote_preferred(const DualPathConfig& cfg, double ci_local, double ci_remote);

/// Number of days on which remote serving emits less.
std::size_t count_remote_days(const CarbonIntensitySeries& local,
                              const CarbonIntensitySeries& remote, const DualPathConfig& cfg);

}  // namespace greenstream
