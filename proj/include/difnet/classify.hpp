#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "difnet/features.hpp"
#include "difnet/network.hpp"
#include "difnet/stats.hpp"

namespace difnet {

/// Square, symmetric, zero-diagonal matrix of pairwise network distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> ids, std::vector<double> values);
  explicit DistanceMatrix(std::vector<std::string> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value);

  /// Throws InputError unless symmetric within `tolerance` with a zero diagonal.
  void validate(double tolerance = 1e-12) const;

  DistanceMatrix select(std::span<const std::size_t> indices) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

struct Sample {
  std::string network_id;
  FeatureVector features;
  Label label = Label::unlabeled;
  Bias bias = Bias::none;
  std::size_t num_nodes = 0;
  SizeBucket bucket = SizeBucket::d0_100;
};

/// Samples plus an optional distance matrix aligned with sample order.
struct LabeledDataset {
  std::vector<Sample> samples;
  std::optional<DistanceMatrix> distances;

  std::size_t size() const noexcept { return samples.size(); }

  /// Checks unique ids and, when present, matrix dimension and ids.
  void validate() const;

  LabeledDataset restrict_to(SizeBucket bucket) const;

  Matrix feature_matrix() const;
  /// 1 for disinformation, 0 for mainstream; throws on unlabeled samples.
  std::vector<int> binary_labels() const;
};

/// Same samples with labels permuted uniformly at random (a null control).
LabeledDataset permute_labels(const LabeledDataset& dataset, std::uint64_t seed);

struct LogisticConfig {
  double l2 = 1.0;
  double tolerance = 1e-8;
  std::size_t max_iterations = 10000;
};

struct LogisticModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// L2-regularised negative log-likelihood:
///   sum_i log(1 + exp(z_i)) - y_i z_i + l2/2 |w|^2, z_i = w.x_i + b.
/// The bias is not regularised.
double logistic_objective(const Matrix& x, std::span<const int> y,
                          std::span<const double> weights, double bias, double l2);

/// Gradient of logistic_objective; `grad_weights` must have x.cols() entries.
void logistic_gradient(const Matrix& x, std::span<const int> y,
                       std::span<const double> weights, double bias, double l2,
                       std::span<double> grad_weights, double& grad_bias);

/// Full-batch gradient descent with backtracking line search. Stops when
/// the gradient norm drops to `tolerance` or after `max_iterations`.
/// Throws InputError on single-class labels or non-finite features.
LogisticModel logistic_fit(const Matrix& x, std::span<const int> y,
                           const LogisticConfig& config = {});

double logistic_predict(const LogisticModel& model, std::span<const double> x);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Fraction of positives among the k nearest training rows (Euclidean).
/// Distance ties keep training order.
double knn_predict(const Matrix& train, std::span<const int> labels,
                   std::span<const double> query, std::size_t k);

/// Same vote using a precomputed matrix. `labels` is indexed by matrix
/// index; neighbours are drawn from `train_indices` in their given order.
double knn_predict_from_distances(const DistanceMatrix& distances,
                                  std::span<const std::size_t> train_indices,
                                  std::span<const int> labels, std::size_t query_index,
                                  std::size_t k);

struct Fold {
  std::vector<std::size_t> train;  ///< ascending
  std::vector<std::size_t> test;   ///< ascending
};

/// Repeated random train/test splits preserving class proportions. The
/// test size is ceil(test_fraction * n); per-class test counts follow the
/// largest-remainder rule so each is within one sample of proportional.
/// Throws InputError when a class has fewer than `folds` members.
std::vector<Fold> stratified_shuffle_split(std::span<const int> labels,
                                           std::size_t folds = 10,
                                           double test_fraction = 0.1,
                                           std::uint64_t seed = 0);

enum class ClassifierKind { logistic, knn, knn_distance };

std::string_view to_string(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view s);

struct EvaluationConfig {
  ClassifierKind classifier = ClassifierKind::logistic;
  std::size_t k = 10;
  LogisticConfig logistic;
  std::size_t folds = 10;
  double test_fraction = 0.1;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  std::size_t min_per_class = 20;
};

struct FoldReport {
  std::vector<RocPoint> roc;
  double auc = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<std::size_t> test_indices;  ///< into the bucket-restricted dataset
  std::vector<double> scores;
};

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct ClassificationReport {
  SizeBucket bucket = SizeBucket::all;
  EvaluationConfig config;
  std::size_t samples = 0;
  std::size_t positives = 0;
  std::vector<FoldReport> folds;
  MetricSummary auc;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  /// AUC of all fold test scores pooled together.
  double pooled_auc = 0.0;
};

/// Cross-validated evaluation restricted to `bucket`: split, fit the
/// standardizer and model on the training part, score the test part,
/// collect metrics. Positive class is disinformation.
ClassificationReport evaluate(const LabeledDataset& dataset, const EvaluationConfig& config,
                              SizeBucket bucket = SizeBucket::all);

}  // namespace difnet
