#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "difnet/classify.hpp"
#include "difnet/features.hpp"
#include "difnet/stats.hpp"

namespace difnet {

/// Five-number summary; quantiles interpolate linearly between order
/// statistics (q = x[(n-1)p]).
struct BoxSummary {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

/// Throws InputError on an empty input.
BoxSummary box_summary(std::vector<double> values);
double quantile_sorted(const std::vector<double>& sorted, double p);

/// One feature compared across the two classes.
struct FeatureComparison {
  std::string feature;
  KsResult ks;
  bool significant = false;
  BoxSummary mainstream;
  BoxSummary disinformation;
};

/// KS test of every feature between classes, in FeatureVector order.
/// Requires at least one sample of each class.
std::vector<FeatureComparison> compare_features(const LabeledDataset& dataset,
                                                double alpha = 0.05);

nlohmann::json to_json(const EvaluationConfig& config);
nlohmann::json to_json(const ClassificationReport& report);
nlohmann::json to_json(const std::vector<FeatureComparison>& comparisons);
nlohmann::json to_json(const std::map<SizeBucket, std::size_t>& histogram);

/// fold,threshold,fpr,tpr with the leading threshold written as "inf".
void write_roc_csv(std::ostream& out, const ClassificationReport& report);

/// feature,class,count,min,q1,median,q3,max,mean
void write_box_csv(std::ostream& out, const std::vector<FeatureComparison>& comparisons);

}  // namespace difnet
