#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topovel {

using Date = std::chrono::sys_days;

/// Parses YYYY-MM-DD; throws std::invalid_argument on anything else.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// Raised for malformed input files; `row()` is the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t row)
      : std::runtime_error(what + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

struct Transaction {
  std::string src;
  std::string dst;
  double amount = 0.0;
};

struct Snapshot {
  Date date;
  std::vector<Transaction> transactions;
};

/// Daily transaction lists with strictly increasing dates.
struct SnapshotSeries {
  std::vector<Snapshot> days;
};

using PriceSeries = std::map<Date, double>;

/// Reads `date,src,dst,amount`. Rows may come in any date order; self-loops
/// are dropped; repeated pairs stay separate transactions.
SnapshotSeries ingest_snapshots(std::istream& in);
SnapshotSeries ingest_snapshots(const std::filesystem::path& path);
void write_snapshots_csv(std::ostream& out, const SnapshotSeries& series);

/// Reads `date,price` with positive prices and unique dates.
PriceSeries read_prices(std::istream& in);
PriceSeries read_prices(const std::filesystem::path& path);
void write_prices_csv(std::ostream& out, const PriceSeries& prices);

/// label(t) = 1 iff |p(t+h) / p(t+h-1) - 1| > threshold. Throws
/// std::invalid_argument listing every missing price date.
std::map<Date, int> label_anomalies(const PriceSeries& prices, const std::vector<Date>& dates,
                                    int horizon, double threshold = 0.05);

}  // namespace topovel
