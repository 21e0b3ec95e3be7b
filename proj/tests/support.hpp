#pragma once

// Shared helpers for the unit and acceptance suites. The oracles here are
// written from the model formulas directly and must not call into the
// library's implementation of the same quantity.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "greenstream/carbon.hpp"

namespace greenstream::testing {

inline Date day_of_december_2024(unsigned day) {
  using namespace std::chrono;
  return year_month_day{sys_days{year{2024} / December / 1} + days{day - 1}};
}

/// Contiguous series starting 2024-12-01.
inline CarbonIntensitySeries make_series(const std::vector<double>& values,
                                         std::string region = "test") {
  std::vector<DailyIntensity> days;
  for (std::size_t i = 0; i < values.size(); ++i) {
    days.push_back({day_of_december_2024(static_cast<unsigned>(i + 1)), values[i]});
  }
  return CarbonIntensitySeries(std::move(region), std::move(days));
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double lo,
                                         double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

/// MOS in its two-term form:
///   4 / (ln x'max - ln xmin) * ln x + (ln x'max - 5 ln xmin) / (ln x'max - ln xmin)
/// with x'max = xmax / gamma, clamped to [1, 5].
inline double oracle_mos(double x, double xmin, double xmax, double gamma) {
  const double xm = xmax / gamma;
  const double d = std::log(xm) - std::log(xmin);
  const double m = 4.0 / d * std::log(x) + (std::log(xm) - 5.0 * std::log(xmin)) / d;
  return std::fmin(5.0, std::fmax(1.0, m));
}

/// Smallest bitrate where oracle utility reaches `u`, by bisection.
inline double oracle_bitrate_for_utility(double u, double xmin, double xmax, double gamma) {
  double lo = xmin;
  double hi = xmax;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (oracle_mos(mid, xmin, xmax, gamma) / 5.0 >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("greenstream-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string intensity_csv(const std::vector<double>& values) {
  std::ostringstream out;
  out.precision(17);
  out << "date,carbon_intensity_gco2eq_per_kwh\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_iso_date(day_of_december_2024(static_cast<unsigned>(i + 1))) << ','
        << values[i] << '\n';
  }
  return out.str();
}

}  // namespace greenstream::testing
