#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "topovel/featurize.hpp"
#include "topovel/forest.hpp"
#include "topovel/series.hpp"

namespace topovel {

/// Joins feature rows to labels at one horizon; rows and labels stay aligned
/// with features.dates.
Dataset make_dataset(const FeatureMatrix& features, const PriceSeries& prices, int horizon,
                     double threshold = 0.05);

struct TierResult {
  ModelTier tier = ModelTier::kM1;
  CvResult cv;
  /// (AUC - AUC_M1) / AUC_M1 * 100
  double gain_pct = 0.0;
  /// AUC - AUC_M1, in percentage points
  double gain_points = 0.0;
};

/// Cross-validates the requested tiers on identical folds; M1 is always
/// evaluated first and serves as the gain reference.
std::vector<TierResult> train_eval(const FeatureMatrix& features, const Dataset& data,
                                   const std::vector<ModelTier>& tiers, const ForestConfig& forest,
                                   const CvConfig& cv);

struct EvaluateConfig {
  std::vector<SummaryMethod> methods{SummaryMethod::kHnav,  SummaryMethod::kHwnav,
                                     SummaryMethod::kOwHnpv, SummaryMethod::kVab,
                                     SummaryMethod::kLandscape, SummaryMethod::kImage};
  std::vector<int> horizons{1, 2, 3, 4, 5, 6, 7};
  std::vector<std::size_t> n_subs{1, 2, 3, 5, 10};
  std::size_t m = 30;
  double threshold = 0.05;
  TopologyConfig topology;
  SummaryConfig summary;
  std::size_t trees = 500;
  std::size_t folds = 10;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
};

struct ResultRow {
  std::string method;
  std::string model;
  int horizon = 0;
  std::size_t n_sub = 0;
  double mean_auc = 0.0;
  double gain_pct = 0.0;
  double gain_points = 0.0;
  std::size_t skipped_folds = 0;
};

/// Sweeps methods x horizons x n_sub for models M2 and M3, plus one M1 row
/// per horizon (method `baseline`, n_sub 0). Static methods do not depend on
/// n_sub; they are evaluated once per horizon and repeated across n_sub.
std::vector<ResultRow> run_evaluation(const SnapshotSeries& series, const PriceSeries& prices,
                                      const EvaluateConfig& config);

/// Header: method,model,horizon,n_sub,mean_auc,auc_gain_pct,auc_gain_points
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace topovel
