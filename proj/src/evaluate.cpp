#include "topovel/evaluate.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace topovel {

Dataset make_dataset(const FeatureMatrix& features, const PriceSeries& prices, int horizon,
                     double threshold) {
  const auto labels = label_anomalies(prices, features.dates, horizon, threshold);
  Dataset data;
  data.rows = features.rows.size();
  data.cols = features.columns.size();
  data.values.reserve(data.rows * data.cols);
  for (std::size_t i = 0; i < data.rows; ++i) {
    if (features.rows[i].size() != data.cols)
      throw std::invalid_argument("make_dataset: ragged feature row");
    data.values.insert(data.values.end(), features.rows[i].begin(), features.rows[i].end());
    data.labels.push_back(labels.at(features.dates[i]));
  }
  return data;
}

std::vector<TierResult> train_eval(const FeatureMatrix& features, const Dataset& data,
                                   const std::vector<ModelTier>& tiers, const ForestConfig& forest,
                                   const CvConfig& cv) {
  std::vector<TierResult> out;
  const auto base_columns = features.tier_columns(ModelTier::kM1);
  if (base_columns.empty()) throw std::invalid_argument("train_eval: feature matrix has no baseline columns");
  const auto base = cross_validate(data, base_columns, forest, cv);
  for (ModelTier tier : tiers) {
    TierResult r;
    r.tier = tier;
    r.cv = tier == ModelTier::kM1 ? base : cross_validate(data, features.tier_columns(tier), forest, cv);
    r.gain_points = (r.cv.mean_auc - base.mean_auc) * 100.0;
    r.gain_pct = base.mean_auc > 0.0 ? (r.cv.mean_auc - base.mean_auc) / base.mean_auc * 100.0 : 0.0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ResultRow> run_evaluation(const SnapshotSeries& series, const PriceSeries& prices,
                                      const EvaluateConfig& config) {
  if (config.methods.empty() || config.horizons.empty() || config.n_subs.empty())
    throw std::invalid_argument("evaluate: methods, horizons and n_sub lists must be non-empty");
  auto topology_config = config.topology;
  // M2/M3 only ever read dimensions 0 and 1.
  for (int k : {0, 1})
    if (std::find(topology_config.dims.begin(), topology_config.dims.end(), k) == topology_config.dims.end())
      topology_config.dims.push_back(k);
  const auto topology = compute_series_topology(series, topology_config);

  ForestConfig forest;
  forest.trees = config.trees;
  forest.seed = config.seed;

  // Summaries for every (method, n_sub) actually needed.
  std::map<std::pair<SummaryMethod, std::size_t>, FeatureMatrix> matrices;
  for (SummaryMethod method : config.methods) {
    for (std::size_t n_sub : config.n_subs) {
      const std::size_t key_sub = is_velocity_method(method) ? n_sub : 1;
      const auto key = std::make_pair(method, key_sub);
      if (matrices.contains(key)) continue;
      FeaturizeConfig fc;
      fc.method = method;
      fc.m = config.m;
      fc.n_sub = key_sub;
      fc.summary = config.summary;
      matrices.emplace(key, summarize_series(topology, fc));
    }
  }

  std::vector<ResultRow> rows;
  for (int h : config.horizons) {
    CvConfig cv{config.folds, config.repeats, config.seed + static_cast<std::uint64_t>(h)};
    const auto& any = matrices.begin()->second;
    const auto base_data = make_dataset(any, prices, h, config.threshold);
    const auto base = cross_validate(base_data, any.tier_columns(ModelTier::kM1), forest, cv);
    rows.push_back({"baseline", "M1", h, 0, base.mean_auc, 0.0, 0.0, base.skipped_folds});

    std::map<std::pair<SummaryMethod, std::size_t>, std::vector<ResultRow>> done;
    for (SummaryMethod method : config.methods) {
      for (std::size_t n_sub : config.n_subs) {
        const auto key = std::make_pair(method, is_velocity_method(method) ? n_sub : std::size_t{1});
        if (!done.contains(key)) {
          const auto& fm = matrices.at(key);
          const auto data = make_dataset(fm, prices, h, config.threshold);
          std::vector<ResultRow> tier_rows;
          for (ModelTier tier : {ModelTier::kM2, ModelTier::kM3}) {
            const auto r = cross_validate(data, fm.tier_columns(tier), forest, cv);
            ResultRow row;
            row.method = std::string(method_name(method));
            row.model = std::string(tier_name(tier));
            row.horizon = h;
            row.mean_auc = r.mean_auc;
            row.gain_points = (r.mean_auc - base.mean_auc) * 100.0;
            row.gain_pct = base.mean_auc > 0.0 ? (r.mean_auc - base.mean_auc) / base.mean_auc * 100.0 : 0.0;
            row.skipped_folds = r.skipped_folds;
            tier_rows.push_back(row);
          }
          done.emplace(key, std::move(tier_rows));
        }
        for (auto row : done.at(key)) {
          row.n_sub = n_sub;
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "method,model,horizon,n_sub,mean_auc,auc_gain_pct,auc_gain_points\n";
  std::ostringstream line;
  line.precision(10);
  for (const auto& r : rows) {
    line.str("");
    line << r.method << ',' << r.model << ',' << r.horizon << ',' << r.n_sub << ',' << r.mean_auc << ','
         << r.gain_pct << ',' << r.gain_points;
    out << line.str() << '\n';
  }
}

}  // namespace topovel
