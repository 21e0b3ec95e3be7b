#include <doctest.h>

#include <random>

#include "greenstream/error.hpp"
#include "greenstream/utility_model.hpp"
#include "support.hpp"

namespace gs = greenstream;
using gs::testing::oracle_mos;

namespace {

const gs::QualityLadder kLadder = gs::QualityLadder::standard();
const gs::UserProfile kHq = gs::UserProfile::high_quality();
const gs::UserProfile kGreen = gs::UserProfile::green(1.5);

}  // namespace

TEST_SUITE("utility_model") {
  TEST_CASE("ladder validation") {
    CHECK_THROWS_AS(gs::QualityLadder({}, 0.2), gs::ConfigError);
    CHECK_THROWS_AS(gs::QualityLadder({{"4K", 20.0}, {"FHD", 20.0}}, 0.2), gs::ConfigError);
    CHECK_THROWS_AS(gs::QualityLadder({{"FHD", 8.0}, {"4K", 20.0}}, 0.2), gs::ConfigError);
    CHECK_THROWS_AS(gs::QualityLadder({{"4K", 20.0}, {"4K", 8.0}}, 0.2), gs::ConfigError);
    CHECK_THROWS_AS(gs::QualityLadder({{"4K", 20.0}, {"HD", 2.5}}, 2.5), gs::ConfigError);
    CHECK_THROWS_AS(gs::QualityLadder({{"4K", 20.0}}, 0.0), gs::ConfigError);
    CHECK_THROWS_AS(gs::QualityLadder({{"", 20.0}}, 0.2), gs::ConfigError);

    CHECK(kLadder.max_bitrate() == 20.0);
    CHECK(kLadder.min_bitrate() == 0.2);
    CHECK(kLadder.at("FHD").bitrate_mbps == 8.0);
    CHECK_FALSE(kLadder.find("8K").has_value());
    CHECK_THROWS_AS(kLadder.at("8K"), gs::ConfigError);
  }

  TEST_CASE("profile validation") {
    CHECK_THROWS_AS(gs::validate(gs::UserProfile{"x", 0.9}), gs::ConfigError);
    CHECK_THROWS_AS(gs::validate(gs::UserProfile{"x", std::nan("")}), gs::ConfigError);
    CHECK_NOTHROW(gs::validate(kHq));
    // gamma so large the saturation bitrate falls below the minimum.
    CHECK_THROWS_AS(gs::mos(1.0, kLadder, gs::UserProfile{"x", 200.0}), gs::ConfigError);
  }

  TEST_CASE("mos anchors and derived value") {
    CHECK(gs::mos(20.0, kLadder, kHq) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(gs::mos(0.2, kLadder, kHq) == doctest::Approx(1.0).epsilon(1e-15));
    // 30-digit evaluation of the two-term formula.
    CHECK(gs::mos(8.0, kLadder, kHq) == doctest::Approx(4.2041199826559248).epsilon(1e-13));
    CHECK(gs::mos(8.0, kLadder, kHq) == doctest::Approx(oracle_mos(8.0, 0.2, 20.0, 1.0)));
    CHECK(1.0 - gs::mos(8.0, kLadder, kHq) / 5.0 == doctest::Approx(0.16).epsilon(0.005 / 0.16));
  }

  TEST_CASE("mos rejects bitrates below the minimum") {
    CHECK_THROWS_AS(gs::mos(0.19, kLadder, kHq), gs::DomainError);
    CHECK_THROWS_AS(gs::utility(-1.0, kLadder, kGreen), gs::DomainError);
    CHECK_THROWS_AS(gs::utility(std::nan(""), kLadder, kGreen), gs::DomainError);
  }

  TEST_CASE("utility examples") {
    CHECK(gs::utility(20.0, kLadder, kHq) == 1.0);
    CHECK(gs::utility(20.0, kLadder, kGreen) == 1.0);  // clamped
    CHECK(gs::utility(8.0, kLadder, kGreen) == doctest::Approx(0.90269304833683931).epsilon(1e-13));
  }

  TEST_CASE("utility loss matches the reference losses") {
    const auto& k4 = kLadder.at("4K");
    const auto& fhd = kLadder.at("FHD");
    const auto& hd = kLadder.at("HD");
    CHECK(std::abs(gs::utility_loss(k4, fhd, kLadder, kHq) - 0.16) <= 0.005);
    CHECK(std::abs(gs::utility_loss(k4, hd, kLadder, kHq) - 0.36) <= 0.005);
    CHECK(std::abs(gs::utility_loss(k4, fhd, kLadder, kGreen) - 0.10) <= 0.005);
    CHECK(std::abs(gs::utility_loss(k4, hd, kLadder, kGreen) - 0.32) <= 0.005);
    // Frozen high-precision values.
    CHECK(gs::utility_loss(k4, fhd, kLadder, kHq) == doctest::Approx(0.15917600346881504));
    CHECK(gs::utility_loss(k4, hd, kLadder, kHq) == doctest::Approx(0.36123599479677743));
    CHECK(gs::utility_loss(k4, fhd, kLadder, kGreen) == doctest::Approx(0.09730695166316069));
    CHECK(gs::utility_loss(k4, hd, kLadder, kGreen) == doctest::Approx(0.31887504527660205));
    CHECK(gs::utility_loss(k4, k4, kLadder, kGreen) == 0.0);
    CHECK_THROWS_AS(gs::utility_loss(fhd, k4, kLadder, kHq), gs::ArgumentError);
  }

  TEST_CASE("net utility loss") {
    CHECK(gs::net_utility_loss(0.16, 0.135) == doctest::Approx(0.025));
    CHECK(gs::net_utility_loss(0.10, 0.10) == 0.0);
    CHECK(gs::net_utility_loss(0.36, 0.0) == 0.36);
    CHECK(gs::net_utility_loss(0.05, 0.135) < 0.0);
    CHECK_THROWS_AS(gs::net_utility_loss(-0.1, 0.1), gs::ArgumentError);
    CHECK_THROWS_AS(gs::net_utility_loss(0.1, 1.5), gs::ArgumentError);
  }

  TEST_CASE("smartphone ladder tops out at FHD") {
    const gs::QualityLadder phone({{"FHD", 8.0}, {"HD", 2.5}}, 0.2);
    CHECK(gs::utility(8.0, phone, kHq) == 1.0);
    CHECK(gs::utility(2.5, phone, kHq) < 1.0);
  }

  TEST_CASE("property: monotone and clamped on a bitrate grid") {
    for (const double gamma : {1.0, 1.2, 1.5, 2.0, 4.0}) {
      const gs::UserProfile p{"p", gamma};
      double previous = 0.0;
      for (int i = 0; i <= 4000; ++i) {
        const double x = 0.2 + (40.0 - 0.2) * i / 4000.0;
        const double u = gs::utility(x, kLadder, p);
        CHECK(u >= 0.2);
        CHECK(u <= 1.0);
        CHECK(u >= previous);
        previous = u;
      }
      CHECK(gs::utility(0.2, kLadder, p) == doctest::Approx(0.2).epsilon(1e-15));
    }
  }

  TEST_CASE("property: green user values every bitrate at least as much") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> bitrate(0.2000001, 19.9999);
    for (int i = 0; i < 2000; ++i) {
      const double x = bitrate(rng);
      CHECK(gs::utility(x, kLadder, kGreen) >= gs::utility(x, kLadder, kHq));
    }
  }

  TEST_CASE("property: green users lose less when leaving the top tier") {
    const auto& tiers = kLadder.tiers();
    for (std::size_t j = 0; j < tiers.size(); ++j) {
      CHECK(gs::utility_loss(tiers[0], tiers[j], kLadder, kHq) >=
            gs::utility_loss(tiers[0], tiers[j], kLadder, kGreen));
    }
    // Below saturation the green curve is steeper, so FHD -> HD costs a green user more.
    CHECK(gs::utility_loss(tiers[1], tiers[2], kLadder, kGreen) >
          gs::utility_loss(tiers[1], tiers[2], kLadder, kHq));
  }

  TEST_CASE("property: bitrates converge at low utility") {
    // x_1(u) - x_1.5(u) must be non-decreasing in u and vanish at u = 0.2.
    double previous_gap = 0.0;
    for (int i = 0; i <= 800; ++i) {
      const double u = 0.2 + 0.7999 * i / 800.0;
      const double hq = gs::bitrate_for_utility(u, kLadder, kHq);
      const double green = gs::bitrate_for_utility(u, kLadder, kGreen);
      CHECK(hq == doctest::Approx(gs::testing::oracle_bitrate_for_utility(u, 0.2, 20.0, 1.0))
                      .epsilon(1e-9));
      CHECK(green == doctest::Approx(gs::testing::oracle_bitrate_for_utility(u, 0.2, 20.0, 1.5))
                         .epsilon(1e-9));
      const double gap = hq - green;
      CHECK(gap >= previous_gap - 1e-12);
      previous_gap = gap;
    }
    CHECK(gs::bitrate_for_utility(0.2, kLadder, kHq) ==
          doctest::Approx(gs::bitrate_for_utility(0.2, kLadder, kGreen)));
    CHECK_THROWS_AS(gs::bitrate_for_utility(0.1, kLadder, kHq), gs::DomainError);
  }
}
