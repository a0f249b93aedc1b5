#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "topovel/series.hpp"

namespace topovel {

enum class ShockType {
  /// A ring of high-value transactions with long chords among a group of
  /// mid-activity nodes: many chordless cycles entering late in the filtration.
  kCommunity,
  /// The busiest node's counterparties are rewired into a cycle.
  kHubRewire,
};

ShockType parse_shock(const std::string& name);

struct SynthConfig {
  std::size_t days = 120;
  std::size_t nodes = 300;
  std::size_t transactions_per_day = 330;
  /// 1-based shock days; when empty, `anomaly_count` days are drawn.
  std::vector<std::size_t> anomaly_days;
  std::size_t anomaly_count = 10;
  /// Days between a shock and its price jump.
  std::size_t lag = 4;
  ShockType shock = ShockType::kCommunity;
  std::size_t shock_size = 12;
  double shock_amount_factor = 5.0;
  std::string start_date = "2017-05-01";
  /// Prices extend this many days past the last snapshot.
  std::size_t price_padding = 7;
  double daily_volatility = 0.015;
  /// Background daily returns are clipped to this magnitude.
  double max_background_return = 0.04;
  double jump = 0.08;
};

struct SynthData {
  SnapshotSeries series;
  PriceSeries prices;
  std::vector<std::size_t> anomaly_days;  // 1-based, sorted
};

/// Seeded background transaction model (Zipf activity, log-normal amounts)
/// with structural shocks on anomaly days and a price jump `lag` days after
/// each. Throws std::invalid_argument on inconsistent configs.
SynthData synth_dynamic_graphs(const SynthConfig& config, std::uint64_t seed);

}  // namespace topovel
