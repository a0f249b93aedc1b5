#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace topovel {

/// Dense row-major sample matrix.
struct Dataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<int> labels;  // 0 or 1

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

struct ForestConfig {
  std::size_t trees = 500;
  /// Features tried per split; 0 means ceil(sqrt(cols)).
  std::size_t max_features = 0;
  std::uint64_t seed = 0;
};

/// Bagged CART classifier with Gini splits and per-split feature sampling.
/// Trees grow until leaves are pure or cannot be split.
class RandomForest {
 public:
  explicit RandomForest(ForestConfig config = {}) : config_(config) {}

  void fit(const Dataset& data);
  void fit(const Dataset& data, std::span<const std::size_t> sample_rows);

  /// Fraction of trees whose leaf majority is the positive class.
  double predict_proba(std::span<const double> x) const;

  std::size_t tree_count() const { return trees_.size(); }

 private:
  struct Node {
    std::size_t feature = 0;
    double threshold = 0.0;
    std::uint32_t left = 0;  // 0 marks a leaf
    std::uint32_t right = 0;
    bool positive = false;
  };
  using Tree = std::vector<Node>;

  Tree grow_tree(const Dataset& data, std::vector<std::size_t> sample, std::uint64_t seed) const;

  ForestConfig config_;
  std::vector<Tree> trees_;
};

/// Area under the ROC curve via the Mann-Whitney statistic with midranks.
/// Throws std::invalid_argument when only one class is present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

/// Stratified fold index per sample: classes are shuffled separately and
/// dealt round-robin, the negatives continuing where the positives stopped.
std::vector<std::size_t> stratified_folds(std::span<const int> labels, std::size_t folds,
                                          std::uint64_t seed);

struct CvConfig {
  std::size_t folds = 10;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
};

struct CvResult {
  double mean_auc = 0.0;
  std::vector<double> fold_aucs;
  /// Folds whose test split held a single class.
  std::size_t skipped_folds = 0;
};

/// Repeated stratified k-fold cross-validation of a random forest restricted
/// to `columns`. Splits depend only on (cv.seed, repeat) and forest seeds on
/// (forest.seed, repeat, fold), so different column sets see identical folds.
CvResult cross_validate(const Dataset& data, std::span<const std::size_t> columns,
                        const ForestConfig& forest, const CvConfig& cv);

}  // namespace topovel
