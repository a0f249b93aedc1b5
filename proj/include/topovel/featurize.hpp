#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "topovel/day_graph.hpp"
#include "topovel/persistence.hpp"
#include "topovel/series.hpp"
#include "topovel/summaries.hpp"

namespace topovel {

enum class ModelTier { kM1, kM2, kM3 };

std::string_view tier_name(ModelTier tier);

/// Rows keyed by date; columns are the baseline block followed by one
/// summary block per homological dimension.
struct FeatureMatrix {
  std::vector<Date> dates;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> baseline_columns;
  /// topological_columns[k] holds the columns of dimension k (possibly empty).
  std::vector<std::vector<std::size_t>> topological_columns;

  /// M1: baseline; M2: + dimension 0; M3: + dimensions 0 and 1.
  std::vector<std::size_t> tier_columns(ModelTier tier) const;
};

struct TopologyConfig {
  std::size_t top_rank = 250;
  /// Homological dimensions computed; the clique complex is built up to
  /// max(dims) + 1.
  std::vector<int> dims{0, 1};
  /// Grid/cap range; defaults to the min and max node weight over the whole series.
  std::optional<double> alpha;
  std::optional<double> beta;
  /// Essential classes are capped at beta unless dropped.
  bool drop_essential = false;
  bool discard_zero_persistence = true;
};

/// Everything per day that does not depend on the summary method.
struct DayTopology {
  Date date;
  BaselineFeatures baseline{};
  /// Finalized diagrams indexed by dimension 0..max(dims).
  std::vector<PersistenceDiagram> diagrams;
};

struct SeriesTopology {
  std::vector<DayTopology> days;
  double alpha = 0.0;
  double beta = 1.0;
  std::vector<int> dims;
};

/// Builds each day's graph, filtration and finalized diagrams. Days are
/// processed in parallel; output order follows the series.
SeriesTopology compute_series_topology(const SnapshotSeries& series, const TopologyConfig& config);

struct FeaturizeConfig {
  SummaryMethod method = SummaryMethod::kOwHnpv;
  std::size_t m = 30;
  std::size_t n_sub = 1;
  bool baseline = true;
  SummaryConfig summary;
};

/// Summarizes precomputed topology into a feature matrix.
FeatureMatrix summarize_series(const SeriesTopology& topology, const FeaturizeConfig& config);

/// compute_series_topology followed by summarize_series.
FeatureMatrix featurize_series(const SnapshotSeries& series, const TopologyConfig& topology,
                               const FeaturizeConfig& config);

/// `date,<col>...` with one row per day.
void write_features_csv(std::ostream& out, const FeatureMatrix& features);

}  // namespace topovel
