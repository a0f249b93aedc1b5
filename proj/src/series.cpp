#include "topovel/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace topovel {

namespace {

std::vector<std::string> split_csv_line(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& text, double& value) {
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    return used == text.size() && std::isfinite(value);
  } catch (const std::exception&) {
    return false;
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::string format_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

Date parse_date(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("invalid date '" + std::string(text) + "'"); };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw fail();
  int y = 0;
  unsigned mo = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, auto& out) {
    const auto* first = text.data() + pos;
    const auto r = std::from_chars(first, first + len, out);
    if (r.ec != std::errc() || r.ptr != first + len) throw fail();
  };
  num(0, 4, y);
  num(5, 2, mo);
  num(8, 2, d);
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw fail();
  return Date(ymd);
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd(date);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

SnapshotSeries ingest_snapshots(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("transactions csv: missing header", 1);
  if (split_csv_line(line) != std::vector<std::string>{"date", "src", "dst", "amount"})
    throw ParseError("transactions csv: expected header 'date,src,dst,amount'", 1);

  std::map<Date, std::vector<Transaction>> by_date;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw ParseError("transactions csv: expected 4 fields", row);
    Date date;
    try {
      date = parse_date(f[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("transactions csv: ") + e.what(), row);
    }
    if (f[1].empty() || f[2].empty()) throw ParseError("transactions csv: empty node identifier", row);
    double amount = 0.0;
    if (!parse_double(f[3], amount)) throw ParseError("transactions csv: unparseable amount", row);
    if (!(amount > 0.0)) throw ParseError("transactions csv: amount must be positive", row);
    auto& day = by_date[date];
    if (f[1] == f[2]) continue;
    day.push_back({f[1], f[2], amount});
  }
  SnapshotSeries series;
  for (auto& [date, txs] : by_date) series.days.push_back({date, std::move(txs)});
  return series;
}

SnapshotSeries ingest_snapshots(const std::filesystem::path& path) {
  auto in = open_input(path);
  return ingest_snapshots(in);
}

void write_snapshots_csv(std::ostream& out, const SnapshotSeries& series) {
  out << "date,src,dst,amount\n";
  for (const auto& day : series.days) {
    const auto date = format_date(day.date);
    for (const auto& t : day.transactions)
      out << date << ',' << t.src << ',' << t.dst << ',' << format_number(t.amount) << '\n';
  }
}

PriceSeries read_prices(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("prices csv: missing header", 1);
  if (split_csv_line(line) != std::vector<std::string>{"date", "price"})
    throw ParseError("prices csv: expected header 'date,price'", 1);
  PriceSeries prices;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw ParseError("prices csv: expected 2 fields", row);
    Date date;
    try {
      date = parse_date(f[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("prices csv: ") + e.what(), row);
    }
    double price = 0.0;
    if (!parse_double(f[1], price) || !(price > 0.0))
      throw ParseError("prices csv: price must be a positive number", row);
    if (!prices.emplace(date, price).second) throw ParseError("prices csv: duplicate date", row);
  }
  return prices;
}

PriceSeries read_prices(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_prices(in);
}

void write_prices_csv(std::ostream& out, const PriceSeries& prices) {
  out << "date,price\n";
  for (const auto& [date, price] : prices) out << format_date(date) << ',' << format_number(price) << '\n';
}

std::map<Date, int> label_anomalies(const PriceSeries& prices, const std::vector<Date>& dates,
                                    int horizon, double threshold) {
  if (horizon < 1) throw std::invalid_argument("label_anomalies: horizon must be >= 1");
  std::set<Date> missing;
  std::map<Date, int> labels;
  for (const Date t : dates) {
    const Date target = t + std::chrono::days{horizon};
    const Date before = target - std::chrono::days{1};
    const auto it_target = prices.find(target);
    const auto it_before = prices.find(before);
    if (it_target == prices.end()) missing.insert(target);
    if (it_before == prices.end()) missing.insert(before);
    if (it_target == prices.end() || it_before == prices.end()) continue;
    const double previous = it_before->second;
    labels[t] = std::abs(it_target->second - previous) > threshold * previous ? 1 : 0;
  }
  if (!missing.empty()) {
    std::string list;
    for (const Date d : missing) list += (list.empty() ? "" : ", ") + format_date(d);
    throw std::invalid_argument("label_anomalies: missing prices for " + list);
  }
  return labels;
}

}  // namespace topovel
