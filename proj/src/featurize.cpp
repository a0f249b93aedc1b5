#include "topovel/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "topovel/parallel.hpp"

namespace topovel {

std::string_view tier_name(ModelTier tier) {
  switch (tier) {
    case ModelTier::kM1: return "M1";
    case ModelTier::kM2: return "M2";
    case ModelTier::kM3: return "M3";
  }
  return "?";
}

std::vector<std::size_t> FeatureMatrix::tier_columns(ModelTier tier) const {
  std::vector<std::size_t> out = baseline_columns;
  const int top_dim = tier == ModelTier::kM1 ? -1 : tier == ModelTier::kM2 ? 0 : 1;
  for (int k = 0; k <= top_dim && static_cast<std::size_t>(k) < topological_columns.size(); ++k)
    out.insert(out.end(), topological_columns[k].begin(), topological_columns[k].end());
  return out;
}

SeriesTopology compute_series_topology(const SnapshotSeries& series, const TopologyConfig& config) {
  if (config.dims.empty()) throw std::invalid_argument("featurize: no homological dimensions requested");
  for (int k : config.dims)
    if (k < 0 || k > 2) throw std::invalid_argument("featurize: dimensions must be in {0,1,2}");
  const int max_hom_dim = *std::max_element(config.dims.begin(), config.dims.end());

  const std::size_t n = series.days.size();
  std::vector<WeightedGraph> graphs(n);
  parallel_for(n, [&](std::size_t i) {
    graphs[i] = build_day_graph(series.days[i].transactions, config.top_rank);
  });

  SeriesTopology out;
  out.dims = config.dims;
  std::sort(out.dims.begin(), out.dims.end());
  out.dims.erase(std::unique(out.dims.begin(), out.dims.end()), out.dims.end());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& g : graphs)
    for (double w : g.weights()) {
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  out.alpha = config.alpha.value_or(std::isfinite(lo) ? lo : 0.0);
  out.beta = config.beta.value_or(std::isfinite(hi) ? hi : 1.0);
  if (!(out.alpha < out.beta)) out.beta = out.alpha + 1.0;

  FinalizeOptions finalize;
  if (!config.drop_essential) finalize.cap = out.beta;
  finalize.discard_zero_persistence = config.discard_zero_persistence;

  out.days.resize(n);
  parallel_for(n, [&](std::size_t i) {
    auto& day = out.days[i];
    day.date = series.days[i].date;
    day.baseline = baseline_features(graphs[i]);
    const auto fc = lower_star_filtration(graphs[i], max_hom_dim + 1);
    const auto raw = compute_diagrams(fc, max_hom_dim);
    day.diagrams.reserve(raw.size());
    for (const auto& d : raw) day.diagrams.push_back(finalize_diagram(d, finalize));
  });
  return out;
}

FeatureMatrix summarize_series(const SeriesTopology& topology, const FeaturizeConfig& config) {
  const HierarchicalGrid grid(topology.alpha, topology.beta, config.m, config.n_sub);
  FeatureMatrix fm;
  const auto method = std::string(method_name(config.method));
  if (config.baseline)
    for (const char* c : kBaselineColumns) {
      fm.baseline_columns.push_back(fm.columns.size());
      fm.columns.push_back(c);
    }

  const std::size_t n = topology.days.size();
  fm.dates.resize(n);
  fm.rows.resize(n);
  std::vector<std::vector<std::vector<double>>> blocks(n);
  parallel_for(n, [&](std::size_t i) {
    const auto& day = topology.days[i];
    fm.dates[i] = day.date;
    for (int k : topology.dims)
      blocks[i].push_back(summarize(day.diagrams.at(static_cast<std::size_t>(k)), config.method, grid,
                                    config.summary).values);
  });

  const int max_dim = topology.dims.empty() ? -1 : topology.dims.back();
  fm.topological_columns.resize(static_cast<std::size_t>(max_dim + 1));
  for (std::size_t b = 0; b < topology.dims.size(); ++b) {
    const int k = topology.dims[b];
    const std::size_t width = n > 0 ? blocks[0][b].size() : 0;
    for (std::size_t c = 0; c < width; ++c) {
      fm.topological_columns[k].push_back(fm.columns.size());
      fm.columns.push_back(method + "_d" + std::to_string(k) + "_" + std::to_string(c + 1));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = fm.rows[i];
    row.reserve(fm.columns.size());
    if (config.baseline) row.assign(topology.days[i].baseline.begin(), topology.days[i].baseline.end());
    for (const auto& block : blocks[i]) row.insert(row.end(), block.begin(), block.end());
  }
  return fm;
}

FeatureMatrix featurize_series(const SnapshotSeries& series, const TopologyConfig& topology,
                               const FeaturizeConfig& config) {
  return summarize_series(compute_series_topology(series, topology), config);
}

void write_features_csv(std::ostream& out, const FeatureMatrix& features) {
  out << "date";
  for (const auto& c : features.columns) out << ',' << c;
  out << '\n';
  std::ostringstream cell;
  cell.precision(17);
  for (std::size_t i = 0; i < features.rows.size(); ++i) {
    out << format_date(features.dates[i]);
    for (double x : features.rows[i]) {
      cell.str("");
      cell << x;
      out << ',' << cell.str();
    }
    out << '\n';
  }
}

}  // namespace topovel
