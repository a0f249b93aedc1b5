#include "topovel/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "topovel/parallel.hpp"
#include "topovel/random.hpp"

namespace topovel {

void RandomForest::fit(const Dataset& data) {
  std::vector<std::size_t> all(data.rows);
  std::iota(all.begin(), all.end(), 0);
  fit(data, all);
}

void RandomForest::fit(const Dataset& data, std::span<const std::size_t> sample_rows) {
  if (sample_rows.empty()) throw std::invalid_argument("RandomForest: no training rows");
  if (data.cols == 0) throw std::invalid_argument("RandomForest: no features");
  if (config_.trees == 0) throw std::invalid_argument("RandomForest: need at least one tree");
  trees_.clear();
  trees_.reserve(config_.trees);
  for (std::size_t t = 0; t < config_.trees; ++t) {
    const std::uint64_t seed = derive_seed(config_.seed, t);
    Rng rng(seed);
    std::vector<std::size_t> bootstrap(sample_rows.size());
    for (auto& r : bootstrap) r = sample_rows[uniform_int(rng, 0, sample_rows.size() - 1)];
    trees_.push_back(grow_tree(data, std::move(bootstrap), rng()));
  }
}

RandomForest::Tree RandomForest::grow_tree(const Dataset& data, std::vector<std::size_t> sample,
                                           std::uint64_t seed) const {
  Rng rng(seed);
  const std::size_t p = data.cols;
  const std::size_t tries =
      config_.max_features > 0
          ? std::min(config_.max_features, p)
          : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));

  Tree tree;
  struct Pending {
    std::uint32_t node;
    std::size_t begin;
    std::size_t end;
  };
  std::vector<Pending> stack;
  tree.emplace_back();
  stack.push_back({0, 0, sample.size()});

  std::vector<std::size_t> features(p);
  std::iota(features.begin(), features.end(), 0);
  std::vector<std::pair<double, int>> column;

  while (!stack.empty()) {
    const auto [node, begin, end] = stack.back();
    stack.pop_back();
    const std::size_t count = end - begin;
    std::size_t positives = 0;
    for (std::size_t i = begin; i < end; ++i) positives += static_cast<std::size_t>(data.labels[sample[i]]);
    tree[node].positive = 2 * positives > count;
    if (positives == 0 || positives == count) continue;

    // Partial Fisher-Yates picks `tries` distinct features.
    for (std::size_t i = 0; i < tries; ++i)
      std::swap(features[i], features[uniform_int(rng, i, p - 1)]);

    // Weighted Gini, n_l * gini_l + n_r * gini_r = count - sum(c^2 / n) per side.
    double best_score = std::numeric_limits<double>::infinity();
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    const auto total_pos = static_cast<double>(positives);
    const auto total = static_cast<double>(count);
    for (std::size_t f = 0; f < tries; ++f) {
      const std::size_t feature = features[f];
      column.clear();
      for (std::size_t i = begin; i < end; ++i)
        column.emplace_back(data.at(sample[i], feature), data.labels[sample[i]]);
      std::sort(column.begin(), column.end());
      double left_pos = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_pos += column[i].second;
        if (column[i].first == column[i + 1].first) continue;
        const auto nl = static_cast<double>(i + 1);
        const double nr = total - nl;
        const double right_pos = total_pos - left_pos;
        const double score = nl - (left_pos * left_pos + (nl - left_pos) * (nl - left_pos)) / nl + nr -
                             (right_pos * right_pos + (nr - right_pos) * (nr - right_pos)) / nr;
        if (score < best_score) {
          best_score = score;
          best_feature = feature;
          best_threshold = 0.5 * (column[i].first + column[i + 1].first);
          if (!(best_threshold < column[i + 1].first)) best_threshold = column[i].first;
        }
      }
    }
    if (!std::isfinite(best_score)) continue;  // every sampled feature constant here

    const auto mid = std::partition(sample.begin() + static_cast<std::ptrdiff_t>(begin),
                                    sample.begin() + static_cast<std::ptrdiff_t>(end),
                                    [&](std::size_t r) { return data.at(r, best_feature) <= best_threshold; });
    const auto split = static_cast<std::size_t>(mid - sample.begin());
    const auto left = static_cast<std::uint32_t>(tree.size());
    tree.emplace_back();
    tree.emplace_back();
    tree[node].feature = best_feature;
    tree[node].threshold = best_threshold;
    tree[node].left = left;
    tree[node].right = left + 1;
    stack.push_back({left + 1, split, end});
    stack.push_back({left, begin, split});
  }
  return tree;
}

double RandomForest::predict_proba(std::span<const double> x) const {
  if (trees_.empty()) throw std::logic_error("RandomForest: predict before fit");
  std::size_t votes = 0;
  for (const auto& tree : trees_) {
    std::uint32_t node = 0;
    while (tree[node].left != 0)
      node = x[tree[node].feature] <= tree[node].threshold ? tree[node].left : tree[node].right;
    votes += tree[node].positive ? 1 : 0;
  }
  return static_cast<double>(votes) / static_cast<double>(trees_.size());
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1) {
        positive_rank_sum += midrank;
        ++positives;
      }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) throw std::invalid_argument("roc_auc: need both classes");
  const auto np = static_cast<double>(positives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(negatives));
}

std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("stratified_folds: need at least two folds");
  Rng rng(seed);
  std::vector<std::size_t> positives, negatives;
  for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 1 ? positives : negatives).push_back(i);
  shuffle(positives.begin(), positives.end(), rng);
  shuffle(negatives.begin(), negatives.end(), rng);
  std::vector<std::size_t> fold(labels.size());
  std::size_t k = 0;
  for (std::size_t i : positives) fold[i] = k++ % folds;
  for (std::size_t i : negatives) fold[i] = k++ % folds;
  return fold;
}

CvResult cross_validate(const Dataset& data, std::span<const std::size_t> columns,
                        const ForestConfig& forest, const CvConfig& cv) {
  if (columns.empty()) throw std::invalid_argument("cross_validate: no columns selected");
  if (cv.repeats == 0) throw std::invalid_argument("cross_validate: repeats must be >= 1");
  const std::size_t positives =
      static_cast<std::size_t>(std::count(data.labels.begin(), data.labels.end(), 1));
  if (positives == 0 || positives == data.rows)
    throw std::invalid_argument("cross_validate: labels must contain both classes");

  Dataset sub;
  sub.rows = data.rows;
  sub.cols = columns.size();
  sub.labels = data.labels;
  sub.values.reserve(sub.rows * sub.cols);
  for (std::size_t r = 0; r < data.rows; ++r)
    for (std::size_t c : columns) {
      if (c >= data.cols) throw std::invalid_argument("cross_validate: column out of range");
      sub.values.push_back(data.at(r, c));
    }

  std::vector<std::vector<std::size_t>> assignments(cv.repeats);
  for (std::size_t r = 0; r < cv.repeats; ++r)
    assignments[r] = stratified_folds(sub.labels, cv.folds, derive_seed(cv.seed, r));

  const std::size_t jobs = cv.repeats * cv.folds;
  std::vector<double> auc(jobs, -1.0);
  parallel_for(jobs, [&](std::size_t job) {
    const std::size_t r = job / cv.folds, k = job % cv.folds;
    std::vector<std::size_t> train, test;
    std::vector<int> test_labels;
    for (std::size_t i = 0; i < sub.rows; ++i) {
      if (assignments[r][i] == k) {
        test.push_back(i);
        test_labels.push_back(sub.labels[i]);
      } else {
        train.push_back(i);
      }
    }
    const auto pos = std::count(test_labels.begin(), test_labels.end(), 1);
    if (pos == 0 || pos == static_cast<std::ptrdiff_t>(test_labels.size())) return;
    ForestConfig fc = forest;
    fc.seed = derive_seed(derive_seed(forest.seed, 0x5eed), job);
    RandomForest model(fc);
    model.fit(sub, train);
    std::vector<double> scores;
    scores.reserve(test.size());
    for (std::size_t i : test) scores.push_back(model.predict_proba(sub.row(i)));
    auc[job] = roc_auc(scores, test_labels);
  });

  CvResult result;
  for (double a : auc) {
    if (a < 0.0) {
      ++result.skipped_folds;
    } else {
      result.fold_aucs.push_back(a);
    }
  }
  if (!result.fold_aucs.empty())
    result.mean_auc = std::accumulate(result.fold_aucs.begin(), result.fold_aucs.end(), 0.0) /
                      static_cast<double>(result.fold_aucs.size());
  return result;
}

}  // namespace topovel
