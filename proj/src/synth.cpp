#include "topovel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "topovel/random.hpp"

namespace topovel {

ShockType parse_shock(const std::string& name) {
  if (name == "community") return ShockType::kCommunity;
  if (name == "hub") return ShockType::kHubRewire;
  throw std::invalid_argument("unknown shock type: " + name + " (expected community or hub)");
}

namespace {

std::string node_name(std::size_t i) {
  std::string s = std::to_string(i);
  return "n" + std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

double lognormal_amount(Rng& rng) { return 100.0 * std::exp(0.5 * normal01(rng)); }

void inject_community(std::vector<Transaction>& txs, std::size_t nodes, const SynthConfig& config,
                      Rng& rng) {
  // Mid-activity nodes so the group survives the activity cut.
  const std::size_t lo = std::min<std::size_t>(10, nodes / 4);
  const std::size_t hi = std::max(lo + config.shock_size, nodes / 2);
  std::vector<std::size_t> pool;
  for (std::size_t i = lo; i < hi && i < nodes; ++i) pool.push_back(i);
  shuffle(pool.begin(), pool.end(), rng);
  const std::size_t k = config.shock_size;
  pool.resize(k);

  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t i = 0; i < k; ++i) links.emplace_back(pool[i], pool[(i + 1) % k]);
  // Chords of length k/2 keep the structure triangle-free.
  for (std::size_t i = 0; i < k / 2; ++i) links.emplace_back(pool[i], pool[i + k / 2]);

  // Replace background transactions so the day's volume is unchanged.
  const std::size_t removed = std::min(links.size(), txs.size());
  txs.resize(txs.size() - removed);
  for (const auto& [a, b] : links)
    txs.push_back({node_name(a), node_name(b), config.shock_amount_factor * lognormal_amount(rng)});
}

void inject_hub_rewire(std::vector<Transaction>& txs, const SynthConfig& config, Rng& rng) {
  std::map<std::string, std::size_t> count;
  for (const auto& t : txs) {
    ++count[t.src];
    ++count[t.dst];
  }
  std::string hub;
  std::size_t best = 0;
  for (const auto& [id, c] : count)
    if (c > best) {
      best = c;
      hub = id;
    }
  std::vector<std::string> partners;
  std::vector<Transaction> kept;
  for (const auto& t : txs) {
    if (t.src == hub || t.dst == hub) {
      const auto& other = t.src == hub ? t.dst : t.src;
      if (std::find(partners.begin(), partners.end(), other) == partners.end()) partners.push_back(other);
    } else {
      kept.push_back(t);
    }
  }
  const std::size_t k = partners.size();
  for (std::size_t i = 0; k >= 3 && i < k; ++i)
    kept.push_back({partners[i], partners[(i + 1) % k], config.shock_amount_factor * lognormal_amount(rng)});
  txs = std::move(kept);
}

}  // namespace

SynthData synth_dynamic_graphs(const SynthConfig& config, std::uint64_t seed) {
  if (config.days == 0) throw std::invalid_argument("synth: days must be positive");
  if (config.nodes < 4) throw std::invalid_argument("synth: need at least 4 nodes");
  if (config.shock_size < 4 || config.shock_size > config.nodes / 2)
    throw std::invalid_argument("synth: shock_size must be in [4, nodes/2]");
  if (config.price_padding < config.lag)
    throw std::invalid_argument("synth: price_padding must cover the shock-to-price lag");
  if (!(config.max_background_return < config.jump))
    throw std::invalid_argument("synth: jump must exceed the background return clip");
  const Date start = parse_date(config.start_date);

  Rng rng(seed);
  SynthData out;
  std::set<std::size_t> anomalies(config.anomaly_days.begin(), config.anomaly_days.end());
  for (std::size_t d : anomalies)
    if (d < 1 || d > config.days) throw std::invalid_argument("synth: anomaly day outside [1, days]");
  if (config.anomaly_days.empty()) {
    if (config.anomaly_count > config.days)
      throw std::invalid_argument("synth: more anomalies than days");
    while (anomalies.size() < config.anomaly_count) anomalies.insert(uniform_int(rng, 1, config.days));
  }
  out.anomaly_days.assign(anomalies.begin(), anomalies.end());

  // Zipf(1) activity by node index.
  std::vector<double> cumulative(config.nodes);
  double acc = 0.0;
  for (std::size_t r = 0; r < config.nodes; ++r) {
    acc += 1.0 / static_cast<double>(r + 1);
    cumulative[r] = acc;
  }
  auto draw_rank = [&](Rng& g) {
    const double u = uniform01(g) * acc;
    return static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                    cumulative.begin());
  };

  for (std::size_t d = 1; d <= config.days; ++d) {
    Rng day_rng(derive_seed(seed, d));
    Snapshot snap;
    snap.date = start + std::chrono::days{d - 1};
    // Daily volume varies by up to 10% around the configured rate.
    const auto count = static_cast<std::size_t>(
        std::llround(static_cast<double>(config.transactions_per_day) * uniform(day_rng, 0.9, 1.1)));
    while (snap.transactions.size() < count) {
      const std::size_t a = std::min(draw_rank(day_rng), config.nodes - 1);
      const std::size_t b = static_cast<std::size_t>(uniform_int(day_rng, 0, config.nodes - 1));
      if (a == b) continue;
      const bool flip = uniform01(day_rng) < 0.5;
      snap.transactions.push_back(
          {node_name(flip ? b : a), node_name(flip ? a : b), lognormal_amount(day_rng)});
    }
    if (anomalies.contains(d)) {
      // Shocks are indexed by the day only so the background is identical
      // with or without them.
      Rng shock_rng(derive_seed(seed ^ 0xA5A5A5A5ULL, d));
      if (config.shock == ShockType::kCommunity)
        inject_community(snap.transactions, config.nodes, config, shock_rng);
      else
        inject_hub_rewire(snap.transactions, config, shock_rng);
    }
    out.series.days.push_back(std::move(snap));
  }

  std::set<std::size_t> jump_days;
  for (std::size_t a : anomalies) jump_days.insert(a + config.lag);
  Rng price_rng(derive_seed(seed, 0x9E1CE));
  double price = 100.0;
  const std::size_t price_days = config.days + config.price_padding;
  for (std::size_t d = 0; d <= price_days; ++d) {
    if (d > 0) {
      double r = config.daily_volatility * normal01(price_rng);
      r = std::clamp(r, -config.max_background_return, config.max_background_return);
      if (jump_days.contains(d)) r = uniform01(price_rng) < 0.5 ? config.jump : -config.jump;
      price *= 1.0 + r;
    }
    out.prices.emplace(start + std::chrono::days{static_cast<long>(d) - 1}, price);
  }
  return out;
}

}  // namespace topovel
