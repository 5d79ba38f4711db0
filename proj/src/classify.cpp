#include "difnet/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "difnet/error.hpp"
#include "difnet/random.hpp"

namespace difnet {

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_labels(std::span<const int> y, std::size_t rows) {
  if (y.size() != rows) throw InputError("feature rows and labels differ in length");
  bool has_pos = false;
  bool has_neg = false;
  for (int v : y) {
    if (v == 1) {
      has_pos = true;
    } else if (v == 0) {
      has_neg = true;
    } else {
      throw InputError("labels must be 0 or 1");
    }
  }
  if (!has_pos || !has_neg) throw InputError("training labels contain a single class");
}

std::vector<std::size_t> nearest(std::vector<std::pair<double, std::size_t>>& by_distance,
                                 std::size_t k) {
  // Pairs are (distance, rank in training order); ties resolve on rank.
  std::partial_sort(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(k),
                    by_distance.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = by_distance[i].second;
  return out;
}

MetricSummary summarize(const std::vector<double>& values) {
  return {mean(values), stddev(values)};
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.size() != ids_.size() * ids_.size()) {
    throw InputError("distance matrix values do not match " +
                     std::to_string(ids_.size()) + " ids");
  }
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)), values_(ids_.size() * ids_.size(), 0.0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
  values_.at(i * size() + j) = value;
  values_.at(j * size() + i) = value;
}

void DistanceMatrix::validate(double tolerance) const {
  for (std::size_t i = 0; i < size(); ++i) {
    if ((*this)(i, i) != 0.0) {
      throw InputError("distance matrix diagonal is not zero at " + ids_[i]);
    }
    for (std::size_t j = i + 1; j < size(); ++j) {
      const double a = (*this)(i, j);
      const double b = (*this)(j, i);
      if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
        throw InputError("distance matrix holds an invalid entry at (" + ids_[i] + ", " +
                         ids_[j] + ")");
      }
      if (std::abs(a - b) > tolerance) {
        throw InputError("distance matrix is not symmetric at (" + ids_[i] + ", " +
                         ids_[j] + ")");
      }
    }
  }
}

DistanceMatrix DistanceMatrix::select(std::span<const std::size_t> indices) const {
  std::vector<std::string> ids;
  ids.reserve(indices.size());
  for (std::size_t i : indices) ids.push_back(ids_.at(i));
  DistanceMatrix out(std::move(ids));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = 0; b < indices.size(); ++b) {
      out.values_[a * indices.size() + b] = (*this)(indices[a], indices[b]);
    }
  }
  return out;
}

void LabeledDataset::validate() const {
  std::set<std::string_view> seen;
  for (const auto& s : samples) {
    if (!seen.insert(s.network_id).second) {
      throw InputError("duplicate network id '" + s.network_id + "'");
    }
  }
  if (distances) {
    if (distances->size() != samples.size()) {
      throw InputError("distance matrix has dimension " + std::to_string(distances->size()) +
                       " but the dataset has " + std::to_string(samples.size()) +
                       " samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (distances->ids()[i] != samples[i].network_id) {
        throw InputError("distance matrix id '" + distances->ids()[i] +
                         "' does not match sample '" + samples[i].network_id + "'");
      }
    }
    distances->validate();
  }
}

LabeledDataset LabeledDataset::restrict_to(SizeBucket bucket) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (bucket == SizeBucket::all || samples[i].bucket == bucket) keep.push_back(i);
  }
  LabeledDataset out;
  out.samples.reserve(keep.size());
  for (std::size_t i : keep) out.samples.push_back(samples[i]);
  if (distances) out.distances = distances->select(keep);
  return out;
}

Matrix LabeledDataset::feature_matrix() const {
  Matrix x(samples.size(), FeatureVector::kSize);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto values = samples[r].features.to_array();
    std::copy(values.begin(), values.end(), x.row(r).begin());
  }
  return x;
}

std::vector<int> LabeledDataset::binary_labels() const {
  std::vector<int> y;
  y.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.label == Label::unlabeled) {
      throw InputError("sample '" + s.network_id + "' is unlabeled");
    }
    y.push_back(s.label == Label::disinformation ? 1 : 0);
  }
  return y;
}

LabeledDataset permute_labels(const LabeledDataset& dataset, std::uint64_t seed) {
  std::vector<Label> labels;
  labels.reserve(dataset.samples.size());
  for (const auto& s : dataset.samples) labels.push_back(s.label);
  Rng rng(seed);
  rng.shuffle(std::span<Label>(labels));
  LabeledDataset out = dataset;
  for (std::size_t i = 0; i < labels.size(); ++i) out.samples[i].label = labels[i];
  return out;
}

double logistic_objective(const Matrix& x, std::span<const int> y,
                          std::span<const double> weights, double bias, double l2) {
  double total = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const double z = dot(x.row(r), weights) + bias;
    total += softplus(z) - static_cast<double>(y[r]) * z;
  }
  return total + 0.5 * l2 * dot(weights, weights);
}

void logistic_gradient(const Matrix& x, std::span<const int> y,
                       std::span<const double> weights, double bias, double l2,
                       std::span<double> grad_weights, double& grad_bias) {
  for (std::size_t c = 0; c < weights.size(); ++c) grad_weights[c] = l2 * weights[c];
  grad_bias = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    const double residual = sigmoid(dot(row, weights) + bias) - static_cast<double>(y[r]);
    for (std::size_t c = 0; c < weights.size(); ++c) grad_weights[c] += residual * row[c];
    grad_bias += residual;
  }
}

LogisticModel logistic_fit(const Matrix& x, std::span<const int> y,
                           const LogisticConfig& config) {
  check_labels(y, x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (double v : x.row(r)) {
      if (!std::isfinite(v)) throw InputError("non-finite feature value");
    }
  }

  const std::size_t d = x.cols();
  LogisticModel model;
  model.weights.assign(d, 0.0);
  std::vector<double> grad(d);
  std::vector<double> trial(d);
  double grad_bias = 0.0;
  double value = logistic_objective(x, y, model.weights, model.bias, config.l2);
  logistic_gradient(x, y, model.weights, model.bias, config.l2, grad, grad_bias);
  double step = 1.0;

  for (; model.iterations < config.max_iterations; ++model.iterations) {
    const double grad_sq = dot(grad, grad) + grad_bias * grad_bias;
    if (std::sqrt(grad_sq) <= config.tolerance) {
      model.converged = true;
      break;
    }
    double t = step * 2.0;
    double trial_bias = 0.0;
    double trial_value = 0.0;
    while (true) {
      for (std::size_t c = 0; c < d; ++c) trial[c] = model.weights[c] - t * grad[c];
      trial_bias = model.bias - t * grad_bias;
      trial_value = logistic_objective(x, y, trial, trial_bias, config.l2);
      if (trial_value <= value - 0.5 * t * grad_sq || t < 1e-20) break;
      t *= 0.5;
    }
    if (t < 1e-20) break;  // no further decrease representable
    model.weights.swap(trial);
    model.bias = trial_bias;
    value = trial_value;
    step = t;
    logistic_gradient(x, y, model.weights, model.bias, config.l2, grad, grad_bias);
  }
  if (!model.converged) {
    const double grad_sq = dot(grad, grad) + grad_bias * grad_bias;
    model.converged = std::sqrt(grad_sq) <= config.tolerance;
  }
  return model;
}

double logistic_predict(const LogisticModel& model, std::span<const double> x) {
  if (x.size() != model.weights.size()) throw InputError("feature count mismatch");
  return sigmoid(dot(model.weights, x) + model.bias);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double knn_predict(const Matrix& train, std::span<const int> labels,
                   std::span<const double> query, std::size_t k) {
  if (labels.size() != train.rows()) throw InputError("training rows and labels differ");
  if (k < 1 || k > train.rows()) {
    throw InputError("k=" + std::to_string(k) + " outside [1, " +
                     std::to_string(train.rows()) + "]");
  }
  std::vector<std::pair<double, std::size_t>> by_distance(train.rows());
  for (std::size_t r = 0; r < train.rows(); ++r) {
    by_distance[r] = {euclidean_distance(train.row(r), query), r};
  }
  std::size_t positive = 0;
  for (std::size_t r : nearest(by_distance, k)) positive += labels[r] == 1 ? 1 : 0;
  return static_cast<double>(positive) / static_cast<double>(k);
}

double knn_predict_from_distances(const DistanceMatrix& distances,
                                  std::span<const std::size_t> train_indices,
                                  std::span<const int> labels, std::size_t query_index,
                                  std::size_t k) {
  if (labels.size() != distances.size()) {
    throw InputError("labels do not match distance matrix dimension");
  }
  if (query_index >= distances.size()) throw InputError("query index out of range");
  if (k < 1 || k > train_indices.size()) {
    throw InputError("k=" + std::to_string(k) + " outside [1, " +
                     std::to_string(train_indices.size()) + "]");
  }
  std::vector<std::pair<double, std::size_t>> by_distance(train_indices.size());
  for (std::size_t r = 0; r < train_indices.size(); ++r) {
    by_distance[r] = {distances(query_index, train_indices[r]), r};
  }
  std::size_t positive = 0;
  for (std::size_t r : nearest(by_distance, k)) {
    positive += labels[train_indices[r]] == 1 ? 1 : 0;
  }
  return static_cast<double>(positive) / static_cast<double>(k);
}

std::vector<Fold> stratified_shuffle_split(std::span<const int> labels, std::size_t folds,
                                           double test_fraction, std::uint64_t seed) {
  if (folds == 0) throw InputError("need at least one fold");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InputError("test fraction must lie in (0, 1)");
  }
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw InputError("stratified split needs at least two classes");

  std::vector<std::vector<std::size_t>> members(classes.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = std::lower_bound(classes.begin(), classes.end(), labels[i]) - classes.begin();
    members[static_cast<std::size_t>(c)].push_back(i);
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (members[c].size() < folds) {
      throw InputError("class " + std::to_string(classes[c]) + " has " +
                       std::to_string(members[c].size()) + " members, fewer than " +
                       std::to_string(folds) + " folds");
    }
  }

  const std::size_t n = labels.size();
  const auto n_test = static_cast<std::size_t>(
      std::ceil(test_fraction * static_cast<double>(n) - 1e-9));
  if (n_test == 0 || n_test >= n) throw InputError("test fraction leaves an empty split");

  // Largest-remainder allocation of test slots per class.
  std::vector<std::size_t> test_count(classes.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const double quota = static_cast<double>(n_test) * static_cast<double>(members[c].size()) /
                         static_cast<double>(n);
    test_count[c] = static_cast<std::size_t>(std::floor(quota + 1e-9));
    assigned += test_count[c];
    remainders.emplace_back(-(quota - static_cast<double>(test_count[c])), c);
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t i = 0; assigned < n_test; ++i, ++assigned) {
    ++test_count[remainders[i % remainders.size()].second];
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (test_count[c] >= members[c].size()) {
      throw InputError("class " + std::to_string(classes[c]) +
                       " too small to keep training samples");
    }
  }

  Rng rng(seed);
  std::vector<Fold> out(folds);
  for (auto& fold : out) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::vector<std::size_t> shuffled = members[c];
      rng.shuffle(std::span<std::size_t>(shuffled));
      fold.test.insert(fold.test.end(), shuffled.begin(),
                       shuffled.begin() + static_cast<std::ptrdiff_t>(test_count[c]));
      fold.train.insert(fold.train.end(),
                        shuffled.begin() + static_cast<std::ptrdiff_t>(test_count[c]),
                        shuffled.end());
    }
    std::sort(fold.train.begin(), fold.train.end());
    std::sort(fold.test.begin(), fold.test.end());
  }
  return out;
}

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::logistic: return "lr";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::knn_distance: return "knn-distance";
  }
  return "?";
}

ClassifierKind parse_classifier(std::string_view s) {
  if (s == "lr" || s == "logistic") return ClassifierKind::logistic;
  if (s == "knn") return ClassifierKind::knn;
  if (s == "knn-distance" || s == "knn_distance") return ClassifierKind::knn_distance;
  throw InputError("unknown classifier '" + std::string(s) + "'");
}

ClassificationReport evaluate(const LabeledDataset& dataset, const EvaluationConfig& config,
                              SizeBucket bucket) {
  const LabeledDataset data = dataset.restrict_to(bucket);
  data.validate();
  const std::vector<int> y = data.binary_labels();
  const auto positives = static_cast<std::size_t>(std::count(y.begin(), y.end(), 1));
  const std::size_t negatives = y.size() - positives;
  if (positives < config.min_per_class || negatives < config.min_per_class) {
    throw InputError("bucket " + std::string(to_string(bucket)) + " has " +
                     std::to_string(positives) + " disinformation and " +
                     std::to_string(negatives) + " mainstream samples; need at least " +
                     std::to_string(config.min_per_class) + " per class");
  }
  if (config.classifier == ClassifierKind::knn_distance && !data.distances) {
    throw InputError("knn-distance classifier needs a distance matrix");
  }

  ClassificationReport report;
  report.bucket = bucket;
  report.config = config;
  report.samples = data.size();
  report.positives = positives;

  const Matrix features = data.feature_matrix();
  const auto folds =
      stratified_shuffle_split(y, config.folds, config.test_fraction, config.seed);

  std::vector<double> pooled_scores;
  std::vector<int> pooled_labels;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const Fold& fold = folds[f];
    std::vector<int> y_train;
    std::vector<int> y_test;
    for (std::size_t i : fold.train) y_train.push_back(y[i]);
    for (std::size_t i : fold.test) y_test.push_back(y[i]);
    if (config.classifier != ClassifierKind::logistic && config.k > fold.train.size()) {
      throw InputError("fold " + std::to_string(f) + ": k=" + std::to_string(config.k) +
                       " exceeds the training size " + std::to_string(fold.train.size()));
    }

    std::vector<double> scores;
    scores.reserve(fold.test.size());
    if (config.classifier == ClassifierKind::knn_distance) {
      for (std::size_t q : fold.test) {
        scores.push_back(
            knn_predict_from_distances(*data.distances, fold.train, y, q, config.k));
      }
    } else {
      const Standardizer scaler = standardize_fit(features.select_rows(fold.train));
      const Matrix train = scaler.apply(features.select_rows(fold.train));
      const Matrix test = scaler.apply(features.select_rows(fold.test));
      if (config.classifier == ClassifierKind::logistic) {
        const LogisticModel model = logistic_fit(train, y_train, config.logistic);
        for (std::size_t r = 0; r < test.rows(); ++r) {
          scores.push_back(logistic_predict(model, test.row(r)));
        }
      } else {
        for (std::size_t r = 0; r < test.rows(); ++r) {
          scores.push_back(knn_predict(train, y_train, test.row(r), config.k));
        }
      }
    }

    FoldReport fr;
    const RocCurve roc = roc_auc(scores, y_test);
    const BinaryMetrics metrics = binary_metrics(scores, y_test, config.threshold);
    fr.roc = roc.points;
    fr.auc = roc.auc;
    fr.precision = metrics.precision;
    fr.recall = metrics.recall;
    fr.f1 = metrics.f1;
    fr.train_size = fold.train.size();
    fr.test_size = fold.test.size();
    fr.test_indices = fold.test;
    fr.scores = scores;
    pooled_scores.insert(pooled_scores.end(), scores.begin(), scores.end());
    pooled_labels.insert(pooled_labels.end(), y_test.begin(), y_test.end());
    report.folds.push_back(std::move(fr));
  }

  auto collect = [&](double FoldReport::*member) {
    std::vector<double> values;
    for (const auto& fr : report.folds) values.push_back(fr.*member);
    return summarize(values);
  };
  report.auc = collect(&FoldReport::auc);
  report.precision = collect(&FoldReport::precision);
  report.recall = collect(&FoldReport::recall);
  report.f1 = collect(&FoldReport::f1);
  report.pooled_auc = roc_auc(pooled_scores, pooled_labels).auc;
  return report;
}

}  // namespace difnet
