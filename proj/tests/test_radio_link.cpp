#include <doctest.h>

#include <cmath>

#include "fapsim/errors.hpp"
#include "fapsim/radio_link.hpp"

using namespace fapsim;
using doctest::Approx;

namespace {

const LinkBudget kBudget;
const McsTable kTable = McsTable::ieee80211ac_160mhz();

// d such that 20log d + 20log f - 27.55 = 105 - margin - target.
double distance_oracle(double target_db, double margin_db) {
  return std::pow(10.0, (105.0 - margin_db - target_db + 27.55 - 20.0 * std::log10(5250.0)) / 20.0);
}

// Linear scan over every entry, the obvious way.
double scan_rate(double snr) {
  double rate = 0.0;
  for (std::size_t k = 0; k < kTable.size(); ++k) {
    if (kTable[k].min_snr_db <= snr) rate = std::max(rate, kTable[k].rate_mbps);
  }
  return rate;
}

}  // namespace

TEST_CASE("link budget defaults") {
  CHECK(kBudget.tx_power_dbm == 20.0);
  CHECK(kBudget.noise_power_dbm == -85.0);
  CHECK(kBudget.snr_margin_db == 1.0);
  CHECK(kBudget.frequency_mhz == 5250.0);
  CHECK(kBudget.channel_bandwidth_mhz == 160.0);
  CHECK(kBudget.guard_interval_ns == 800.0);
}

TEST_CASE("default MCS table rates") {
  const double rates[] = {65, 130, 195, 260, 390, 520, 585, 650, 780, 866.7};
  REQUIRE(kTable.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(kTable[k].index == int(k));
    CHECK(kTable[k].rate_mbps == rates[k]);
    if (k > 0) CHECK(kTable[k].min_snr_db > kTable[k - 1].min_snr_db);
  }
  CHECK(kTable.top_rate() == 866.7);
}

TEST_CASE("free-space path loss") {
  CHECK(path_loss_db(1.0, 5250.0) == Approx(46.85).epsilon(1e-4));
  CHECK(path_loss_db(10.0, 5250.0) == Approx(66.85).epsilon(1e-4));
  CHECK(path_loss_db(100.0, 5250.0) == Approx(86.85).epsilon(1e-4));
  CHECK_THROWS_AS(path_loss_db(0.0, 5250.0), ValidationError);
  CHECK_THROWS_AS(path_loss_db(-2.0, 5250.0), ValidationError);
}

TEST_CASE("snr at distance") {
  CHECK(snr_at(10.0, kBudget) == Approx(38.15).epsilon(1e-4));
  CHECK(snr_at(100.0, kBudget) == Approx(18.15).epsilon(2e-4));
  const double d0 = distance_oracle(0.0, 0.0);  // PL = 105 dB
  CHECK(std::abs(snr_at(d0, kBudget)) < 1e-9);
  double last = snr_at(0.5, kBudget);
  for (double d = 1.0; d < 2000.0; d *= 1.1) {
    const double s = snr_at(d, kBudget);
    CHECK(s < last);
    last = s;
  }
}

TEST_CASE("capacity lookup") {
  CHECK(capacity_for_snr(kTable[9].min_snr_db, kTable) == kTable[9].rate_mbps);
  CHECK(capacity_for_snr(kTable[0].min_snr_db - 0.1, kTable) == 0.0);
  CHECK(capacity_for_snr(38.15, kTable) == 866.7);
  CHECK(capacity_for_snr(38.15, kTable) == scan_rate(38.15));
  CHECK(mcs_for_snr(-5.0, kTable) == nullptr);
  REQUIRE(mcs_for_snr(kTable[4].min_snr_db, kTable) != nullptr);
  CHECK(mcs_for_snr(kTable[4].min_snr_db, kTable)->index == 4);

  double last = 0.0;
  for (double snr = -10.0; snr < 60.0; snr += 0.05) {
    const double rate = capacity_for_snr(snr, kTable);
    CHECK(rate == scan_rate(snr));
    CHECK(rate >= last);
    last = rate;
  }
}

TEST_CASE("max distance inversion") {
  CHECK(max_distance_for_snr(37.15, kBudget) == Approx(distance_oracle(37.15, 1.0)).epsilon(1e-12));
  CHECK(max_distance_for_snr(37.15, kBudget) == Approx(10.0).epsilon(1e-3));
  LinkBudget no_margin = kBudget;
  no_margin.snr_margin_db = 0.0;
  CHECK(max_distance_for_snr(snr_at(10.0, kBudget), no_margin) == Approx(10.0).epsilon(1e-12));
  CHECK(max_distance_for_snr(43.15, kBudget) / max_distance_for_snr(37.15, kBudget) ==
        Approx(std::pow(10.0, -6.0 / 20.0)).epsilon(1e-12));

  double last = 1e300;
  for (double t = -20.0; t < 60.0; t += 0.5) {
    const double d = max_distance_for_snr(t, kBudget);
    CHECK(d < last);
    last = d;
    CHECK(snr_at(d, kBudget) - kBudget.snr_margin_db >= t - 1e-6);
  }
}

TEST_CASE("round trip: distance for an MCS threshold still gets that MCS") {
  for (const auto& e : kTable.entries()) {
    const double d = max_distance_for_snr(e.min_snr_db, kBudget);
    CHECK(capacity_for_snr(snr_at(d, kBudget) + 1e-9, kTable) >= e.rate_mbps);
    CHECK(capacity_for_snr(snr_at(d, kBudget) - kBudget.snr_margin_db + 1e-9, kTable) >= e.rate_mbps);
  }
}

TEST_CASE("MCS table validation") {
  CHECK_THROWS_AS(McsTable({}), ValidationError);
  CHECK_THROWS_AS(McsTable({{0, 10, 65}, {1, 10, 130}}), ValidationError);
  CHECK_THROWS_AS(McsTable({{0, 10, 65}, {1, 12, 60}}), ValidationError);
  CHECK_NOTHROW(McsTable({{0, 10, 65}, {1, 12, 130}}));
  LinkBudget bad = kBudget;
  bad.frequency_mhz = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
