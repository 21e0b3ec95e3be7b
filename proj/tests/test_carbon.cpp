#include <doctest.h>

#include <random>

#include "greenstream/carbon.hpp"
#include "greenstream/error.hpp"
#include "support.hpp"

namespace gs = greenstream;
using gs::testing::make_series;

namespace {

constexpr gs::DualPathConfig kSmallToVeryLarge{0.02, 0.03, 0.09, 0.01};

template <typename Fn>
std::size_t error_line(Fn&& fn) {
  try {
    fn();
  } catch (const gs::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("carbon") {
  TEST_CASE("iso dates") {
    gs::Date d;
    CHECK(gs::parse_iso_date("2024-02-29", d));
    CHECK(gs::format_iso_date(d) == "2024-02-29");
    CHECK_FALSE(gs::parse_iso_date("2023-02-29", d));
    CHECK_FALSE(gs::parse_iso_date("2024-13-01", d));
    CHECK_FALSE(gs::parse_iso_date("2024-1-01", d));
    CHECK_FALSE(gs::parse_iso_date("2024/01/01", d));
    CHECK_FALSE(gs::parse_iso_date("+024-01-01", d));
  }

  TEST_CASE("parse a two-day CSV") {
    const auto s = gs::parse_intensity_csv(
        "date,carbon_intensity_gco2eq_per_kwh\n2024-12-01,310\n2024-12-02,295", "GR");
    REQUIRE(s.size() == 2);
    CHECK(s.region() == "GR");
    CHECK(gs::format_iso_date(s[0].date) == "2024-12-01");
    CHECK(s[0].g_per_kwh == 310.0);
    CHECK(s[1].g_per_kwh == 295.0);
  }

  TEST_CASE("CRLF, BOM and trailing newline are accepted") {
    const auto s = gs::parse_intensity_csv(
        "\xEF\xBB\xBF" "date,carbon_intensity_gco2eq_per_kwh\r\n2024-12-31,1.5\r\n2025-01-01,0\r\n\r\n",
        "x");
    CHECK(s.size() == 2);
    CHECK(s[1].g_per_kwh == 0.0);
  }

  TEST_CASE("parse errors carry line numbers") {
    const std::string h = "date,carbon_intensity_gco2eq_per_kwh\n";
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,310\n2024-12-02,-5\n", "x"); }) ==
          3);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,310\n2024-12-01,300\n", "x"); }) ==
          3);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-02,310\n2024-12-01,300\n", "x"); }) ==
          3);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,310\n2024-12-03,300\n", "x"); }) ==
          3);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,abc\n", "x"); }) == 2);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,nan\n", "x"); }) == 2);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01\n", "x"); }) == 2);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,1,2\n", "x"); }) == 2);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "12/01/2024,1\n", "x"); }) == 2);
    CHECK(error_line([&] { gs::parse_intensity_csv(h + "2024-12-01,1\n\n2024-12-02,1\n", "x"); }) ==
          3);
    CHECK(error_line([&] { gs::parse_intensity_csv("date,ci\n2024-12-01,1\n", "x"); }) == 1);
  }

  TEST_CASE("empty inputs") {
    CHECK_THROWS_AS(gs::parse_intensity_csv("", "x"), gs::EmptyInputError);
    CHECK_THROWS_AS(gs::parse_intensity_csv("\n\n", "x"), gs::EmptyInputError);
    CHECK_THROWS_AS(gs::parse_intensity_csv("date,carbon_intensity_gco2eq_per_kwh\n", "x"),
                    gs::EmptyInputError);
    CHECK_THROWS_AS(gs::CarbonIntensitySeries("x", {}), gs::EmptyInputError);
  }

  TEST_CASE("series constructor validates") {
    const auto d1 = gs::testing::day_of_december_2024(1);
    const auto d3 = gs::testing::day_of_december_2024(3);
    CHECK_THROWS_AS(gs::CarbonIntensitySeries("x", {{d1, 1.0}, {d3, 1.0}}), gs::ArgumentError);
    CHECK_THROWS_AS(gs::CarbonIntensitySeries("x", {{d1, -1.0}}), gs::ArgumentError);
  }

  TEST_CASE("load from file, region defaults to the stem") {
    gs::testing::TempDir dir("carbon");
    const auto path = dir.path() / "GR_2024-12.csv";
    gs::testing::write_file(path, gs::testing::intensity_csv({300, 310}));
    const auto s = gs::load_intensity_csv(path);
    CHECK(s.region() == "GR_2024-12");
    CHECK(gs::load_intensity_csv(path, "Greece").region() == "Greece");
    CHECK_THROWS_AS(gs::load_intensity_csv(dir.path() / "missing.csv"), gs::Error);

    gs::testing::write_file(path, "date,carbon_intensity_gco2eq_per_kwh\n2024-12-01,x\n");
    try {
      gs::load_intensity_csv(path);
      FAIL("expected ParseError");
    } catch (const gs::ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("GR_2024-12.csv") != std::string::npos);
    }
  }

  TEST_CASE("local emission rate") {
    CHECK(gs::local_emission_rate(kSmallToVeryLarge, 300.0, 20.0) == doctest::Approx(0.84));
    CHECK(gs::local_emission_rate(kSmallToVeryLarge, 0.0, 20.0) == 0.0);
    CHECK(gs::local_emission_rate(kSmallToVeryLarge, 300.0, 0.0) == 0.0);
  }

  TEST_CASE("remote emission rate") {
    CHECK(gs::remote_emission_rate(kSmallToVeryLarge, 300.0, 100.0, 20.0) ==
          doctest::Approx(0.38));
    CHECK(gs::remote_emission_rate(kSmallToVeryLarge, 300.0, 100.0, 0.0) == 0.0);
    // Equal intensities: remote equals local with d_l replaced by c + d_r.
    const gs::DualPathConfig swapped{0.02, 0.03, 0.03 + 0.01, 0.0};
    CHECK(gs::remote_emission_rate(kSmallToVeryLarge, 250.0, 250.0, 8.0) ==
          doctest::Approx(gs::local_emission_rate(swapped, 250.0, 8.0)));
  }

  TEST_CASE("selection thresholds") {
    CHECK(gs::remote_threshold(kSmallToVeryLarge) == doctest::Approx(2.25).epsilon(1e-14));
    CHECK(gs::remote_threshold({0.02, 0.03, 0.01, 0.01}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(gs::remote_preferred(kSmallToVeryLarge, 100.0, 224.0));
    CHECK_FALSE(gs::remote_preferred(kSmallToVeryLarge, 100.0, 226.0));
    // Equal intensities with d_l <= c + d_r: strict inequality fails.
    CHECK_FALSE(gs::remote_preferred({0.02, 0.03, 0.01, 0.01}, 300.0, 300.0));
    CHECK_FALSE(gs::remote_preferred({0.02, 0.03, 0.04, 0.01}, 300.0, 300.0));  // tie
  }

  TEST_CASE("zero local intensity keeps local") {
    CHECK_FALSE(gs::remote_preferred(kSmallToVeryLarge, 0.0, 10.0));
    CHECK_FALSE(gs::remote_preferred(kSmallToVeryLarge, 0.0, 0.0));
  }

  TEST_CASE("count remote days") {
    const auto local = make_series({100, 300, 500}, "l");
    const auto remote = make_series({400, 200, 1200}, "r");
    // threshold 2.25: ratios 4, 0.67, 2.4
    CHECK(gs::count_remote_days(local, remote, kSmallToVeryLarge) == 1);
    CHECK(gs::count_remote_days(local, local, {0.02, 0.03, 0.01, 0.01}) == 0);
    CHECK_THROWS_AS(gs::count_remote_days(local, make_series({1, 2}), kSmallToVeryLarge),
                    gs::ArgumentError);
    const auto one = make_series({100});
    CHECK(gs::count_remote_days(one, make_series({50}), kSmallToVeryLarge) == 1);
  }

  TEST_CASE("property: selection matches brute-force rate comparison") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> w(0.0, 0.2);
    std::uniform_real_distribution<double> ci(0.0, 900.0);
    std::uniform_real_distribution<double> k(0.01, 100.0);
    int compared = 0;
    for (int i = 0; i < 10000; ++i) {
      const gs::DualPathConfig cfg{w(rng), w(rng), w(rng), w(rng)};
      const double l = ci(rng), r = ci(rng), x = 1.0 + 19.0 * (i % 7) / 6.0;
      const double local = gs::local_emission_rate(cfg, l, x);
      const double remote = gs::remote_emission_rate(cfg, l, r, x);
      const bool preferred = gs::remote_preferred(cfg, l, r);
      if (std::abs(local - remote) > 1e-9 * std::max(local, remote)) {
        CHECK(preferred == (remote < local));
        ++compared;
      }
      // Chosen side achieves the minimum rate.
      const double chosen = preferred ? remote : local;
      CHECK(chosen <= std::min(local, remote) * (1 + 1e-12) + 1e-300);

      // Scale invariance and access independence.
      const double scale = k(rng);
      CHECK(gs::remote_preferred(cfg, scale * l, scale * r) == preferred);
      gs::DualPathConfig other = cfg;
      other.access = w(rng) * 50.0;
      CHECK(gs::remote_preferred(other, l, r) == preferred);
      // Equal intensities: remote iff d_l > c + d_r.
      if (l > 0.0) {
        CHECK(gs::remote_preferred(cfg, l, l) == (cfg.local_dc > cfg.core + cfg.remote_dc));
      }
    }
    CHECK(compared > 9900);
  }
}
