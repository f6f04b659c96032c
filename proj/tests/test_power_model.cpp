#include <cmath>
#include <stdexcept>

#include "cellsw/power_model.hpp"
#include "cellsw/rng.hpp"
#include "doctest.h"

using namespace cellsw;

namespace {

BaseStation station(int id, BsType type) {
  return BaseStation{id, type, default_profile(type), 20.0};
}

}  // namespace

TEST_CASE("bs_power matches the reference profile arithmetic") {
  const auto macro = default_profile(BsType::Macro);
  const auto micro = default_profile(BsType::Micro);

  CHECK(bs_power_w(macro, 0.5, true) == doctest::Approx(177.0));
  CHECK(bs_power_w(micro, 0.0, false) == 39.0);

  for (BsType t : {BsType::Macro, BsType::Rrh, BsType::Micro, BsType::Pico,
                   BsType::Femto}) {
    const auto p = default_profile(t);
    CHECK(bs_power_w(p, 0.0, true) == p.p_op_w);  // idle still draws p_op
    CHECK(p.p_op_w > p.p_sleep_w);
  }
}

TEST_CASE("bs_power clamps overload and rejects bad input") {
  const auto macro = default_profile(BsType::Macro);
  CHECK(bs_power_w(macro, 1.5, true) == bs_power_w(macro, 1.0, true));
  CHECK(bs_power_linear_w(macro, 1.5, true) ==
        doctest::Approx(130.0 + 4.7 * 1.5 * 20.0));
  CHECK_THROWS_AS(bs_power_w(macro, -0.1, true), std::invalid_argument);
  CHECK_THROWS_AS(bs_power_w(macro, 0.2, false), std::invalid_argument);
}

TEST_CASE("bs_power is non-decreasing in load") {
  for (BsType t : {BsType::Macro, BsType::Rrh, BsType::Micro, BsType::Pico,
                   BsType::Femto}) {
    const auto p = default_profile(t);
    double prev = bs_power_w(p, 0.0, true);
    for (int i = 1; i <= 120; ++i) {
      const double cur = bs_power_w(p, i / 100.0, true);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("network_power sums station draws") {
  const std::vector<BaseStation> pair = {station(1, BsType::Macro),
                                         station(2, BsType::Micro)};
  const std::vector<double> loads = {0.0, 0.0};
  const std::vector<std::uint8_t> statuses = {1, 0};
  CHECK(network_power_w(pair, loads, statuses) == doctest::Approx(169.0));

  const std::vector<BaseStation> solo = {station(1, BsType::Macro)};
  CHECK(network_power_w(solo, std::vector<double>{0.0},
                        std::vector<std::uint8_t>{1}) ==
        doctest::Approx(130.0));

  const std::vector<BaseStation> trio = {station(1, BsType::Macro),
                                         station(2, BsType::Femto),
                                         station(3, BsType::Femto)};
  CHECK(network_power_w(trio, std::vector<double>{1.0, 1.0, 1.0},
                        std::vector<std::uint8_t>{1, 1, 1}) ==
        doctest::Approx(234.4));

  CHECK_THROWS_AS(network_power_w(trio, loads, statuses),
                  std::invalid_argument);
}

TEST_CASE("network_power is the sum of independent bs_power calls") {
  std::vector<BaseStation> stations = {station(1, BsType::Macro),
                                       station(2, BsType::Rrh),
                                       station(3, BsType::Micro),
                                       station(4, BsType::Pico),
                                       station(5, BsType::Femto)};
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> loads(stations.size());
    std::vector<std::uint8_t> statuses(stations.size());
    statuses[0] = 1;
    loads[0] = rng.uniform01();
    for (std::size_t j = 1; j < stations.size(); ++j) {
      statuses[j] = rng.below(2) ? 1 : 0;
      loads[j] = statuses[j] ? rng.uniform01() : 0.0;
    }
    double expected = 0.0;
    for (std::size_t j = 0; j < stations.size(); ++j)
      expected += bs_power_w(stations[j].profile, loads[j], statuses[j] != 0);
    CHECK(network_power_w(stations, loads, statuses) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("profitability_threshold matches the reference constants") {
  const auto macro = station(1, BsType::Macro);

  const auto micro_thr = profitability_threshold(station(2, BsType::Micro), macro, 1.0);
  REQUIRE(micro_thr.has_value());
  CHECK(*micro_thr == doctest::Approx(0.21901572).epsilon(1e-6));

  const auto femto_thr = profitability_threshold(station(2, BsType::Femto), macro, 1.0);
  REQUIRE(femto_thr.has_value());
  CHECK(*femto_thr == doctest::Approx(0.02029915).epsilon(1e-6));

  // PA slope of the small cell at or above the macro's: no threshold exists.
  BaseStation hungry = station(2, BsType::Micro);
  hungry.profile.eta = 5.0;
  hungry.profile.p_tx_w = 20.0;
  CHECK_FALSE(profitability_threshold(hungry, macro, 1.0).has_value());

  CHECK_THROWS_AS(profitability_threshold(macro, macro, 1.0),
                  std::invalid_argument);
}

TEST_CASE("delta_power_switch_on at the threshold, idle, and full load") {
  const auto macro = station(1, BsType::Macro);
  const auto micro = station(2, BsType::Micro);

  const double thr = *profitability_threshold(micro, macro, 1.0);
  CHECK(std::fabs(delta_power_switch_on_w(micro, macro, 1.0, thr)) < 1e-9);
  CHECK(delta_power_switch_on_w(micro, macro, 1.0, 0.0) ==
        doctest::Approx(17.0));
  CHECK(delta_power_switch_on_w(micro, macro, 1.0, 1.0) ==
        doctest::Approx(-60.62));
  CHECK_THROWS_AS(delta_power_switch_on_w(micro, macro, 1.0, 1.5),
                  std::invalid_argument);
}

TEST_CASE("switch-on power delta agrees in sign with the threshold") {
  const auto macro = station(1, BsType::Macro);
  for (BsType t : {BsType::Rrh, BsType::Micro, BsType::Pico, BsType::Femto}) {
    const auto sc = station(2, t);
    const auto thr = profitability_threshold(sc, macro, 1.0);
    REQUIRE(thr.has_value());
    for (int i = 0; i <= 100; ++i) {
      const double lambda = i / 100.0;
      const double delta = delta_power_switch_on_w(sc, macro, 1.0, lambda);
      if (std::fabs(delta) < 1e-9) continue;  // threshold boundary
      CHECK((delta > 0.0) == (lambda < *thr));
    }
  }
}

TEST_CASE("station list validation") {
  std::vector<BaseStation> ok = {station(1, BsType::Macro),
                                 station(2, BsType::Pico)};
  CHECK_NOTHROW(validate_stations(ok));
  CHECK(relative_capacities(ok) == std::vector<double>{1.0, 1.0});

  std::vector<BaseStation> two_macros = {station(1, BsType::Macro),
                                         station(2, BsType::Macro)};
  CHECK_THROWS_AS(validate_stations(two_macros), std::invalid_argument);

  std::vector<BaseStation> mixed = {station(1, BsType::Macro),
                                    station(2, BsType::Pico),
                                    station(3, BsType::Pico)};
  mixed[2].profile.p_op_w += 1.0;  // same type, different hardware
  CHECK_THROWS_AS(validate_stations(mixed), std::invalid_argument);
}
