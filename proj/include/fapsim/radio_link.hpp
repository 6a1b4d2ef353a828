#pragma once

#include <string>
#include <vector>

namespace fapsim {

/// Link budget between a FAP and a ground user. Antenna gains are 0 dBi.
struct LinkBudget {
  double tx_power_dbm = 20.0;
  double noise_power_dbm = -85.0;
  double snr_margin_db = 1.0;
  double frequency_mhz = 5250.0;
  std::string standard = "IEEE 802.11ac";
  double channel_bandwidth_mhz = 160.0;
  double guard_interval_ns = 800.0;
  int channel = 50;

  void validate() const;
};

struct McsEntry {
  int index;
  double min_snr_db;
  double rate_mbps;
};

/// MCS thresholds and rates, strictly increasing in both columns.
class McsTable {
 public:
  /// Throws ValidationError when empty or not strictly increasing.
  explicit McsTable(std::vector<McsEntry> entries);

  /// 802.11ac, one spatial stream, 160 MHz, 800 ns GI. Minimum SNRs start from
  /// the receiver sensitivities referred to a -85 dBm noise floor, shifted up
  /// 1.3 dB to fit the reference energies (MCS9 capped at 38 dB). The unshifted
  /// column ships as config/mcs_80211ac_160mhz_sensitivity.csv.
  static McsTable ieee80211ac_160mhz();

  const std::vector<McsEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const McsEntry& operator[](std::size_t k) const { return entries_[k]; }
  double top_rate() const { return entries_.back().rate_mbps; }

 private:
  std::vector<McsEntry> entries_;
};

/// Free-space path loss [dB] at distance [m] and frequency [MHz].
double path_loss_db(double distance_m, double frequency_mhz);

/// Received SNR [dB] at distance [m].
double snr_at(double distance_m, const LinkBudget& budget);

/// Rate of the highest MCS whose threshold is <= snr; 0 when none qualifies.
double capacity_for_snr(double snr_db, const McsTable& table);

/// Highest MCS entry whose threshold is <= snr, or nullptr.
const McsEntry* mcs_for_snr(double snr_db, const McsTable& table);

/// Largest distance [m] whose SNR still meets target + margin.
double max_distance_for_snr(double target_snr_db, const LinkBudget& budget);

}  // namespace fapsim
