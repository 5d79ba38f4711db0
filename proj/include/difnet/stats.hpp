#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace difnet {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  /// Rows selected by index, in the given order.
  Matrix select_rows(std::span<const std::size_t> indices) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct KsResult {
  double statistic = 0.0;  ///< D, the largest ECDF gap
  double p_value = 1.0;

  bool rejects(double alpha = 0.05) const { return p_value < alpha; }
};

/// Survival function of the Kolmogorov distribution, P(K > lambda),
/// truncated at 100 series terms.
double kolmogorov_survival(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value at
/// effective size n*m/(n+m). Throws InputError on an empty sample or
/// non-finite value.
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

struct RocPoint {
  double threshold;  ///< scores >= threshold are predicted positive
  double fpr;
  double tpr;
};

struct RocCurve {
  std::vector<RocPoint> points;  ///< from (0,0) to (1,1)
  double auc = 0.0;
};

/// ROC by sweeping the distinct scores from high to low; AUC by the
/// trapezoid rule, which equals the Mann-Whitney statistic with ties
/// counted one half. Labels are 0/1; throws InputError unless both occur.
RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels);

struct BinaryMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Positive prediction when score >= threshold. Undefined ratios are 0.
BinaryMetrics binary_metrics(std::span<const double> scores, std::span<const int> labels,
                             double threshold = 0.5);

/// Column means and population standard deviations of a training matrix.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;

  /// Zero-variance columns map to 0.
  Matrix apply(const Matrix& x) const;
  std::vector<double> apply(std::span<const double> x) const;
};

Standardizer standardize_fit(const Matrix& train);
Matrix standardize_apply(const Matrix& x, const Standardizer& fitted);

double mean(std::span<const double> values);
/// Population standard deviation.
double stddev(std::span<const double> values);

}  // namespace difnet
