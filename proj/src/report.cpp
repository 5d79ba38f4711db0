#include "difnet/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "difnet/error.hpp"
#include "difnet/io.hpp"

namespace difnet {

namespace {

nlohmann::json summary_json(const MetricSummary& m) {
  return {{"mean", m.mean}, {"stddev", m.stddev}};
}

nlohmann::json box_json(const BoxSummary& b) {
  return {{"count", b.count}, {"min", b.min},   {"q1", b.q1},    {"median", b.median},
          {"q3", b.q3},       {"max", b.max},   {"mean", b.mean}};
}

void write_box_row(std::ostream& out, const std::string& feature, std::string_view cls,
                   const BoxSummary& b) {
  out << feature << ',' << cls << ',' << b.count << ',' << csv::format_double(b.min) << ','
      << csv::format_double(b.q1) << ',' << csv::format_double(b.median) << ','
      << csv::format_double(b.q3) << ',' << csv::format_double(b.max) << ','
      << csv::format_double(b.mean) << '\n';
}

}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InputError("quantile of an empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

BoxSummary box_summary(std::vector<double> values) {
  if (values.empty()) throw InputError("box summary of an empty sample");
  std::sort(values.begin(), values.end());
  BoxSummary b;
  b.count = values.size();
  b.min = values.front();
  b.max = values.back();
  b.q1 = quantile_sorted(values, 0.25);
  b.median = quantile_sorted(values, 0.5);
  b.q3 = quantile_sorted(values, 0.75);
  b.mean = mean(values);
  return b;
}

std::vector<FeatureComparison> compare_features(const LabeledDataset& dataset, double alpha) {
  std::array<std::vector<double>, FeatureVector::kSize> mainstream, disinformation;
  for (const auto& s : dataset.samples) {
    if (s.label == Label::unlabeled) continue;
    const auto values = s.features.to_array();
    auto& target = s.label == Label::disinformation ? disinformation : mainstream;
    for (std::size_t f = 0; f < values.size(); ++f) target[f].push_back(values[f]);
  }
  if (mainstream[0].empty() || disinformation[0].empty()) {
    throw InputError("feature comparison needs samples of both classes");
  }
  std::vector<FeatureComparison> out;
  for (std::size_t f = 0; f < FeatureVector::kSize; ++f) {
    FeatureComparison c;
    c.feature = std::string(FeatureVector::kNames[f]);
    c.ks = ks_two_sample(mainstream[f], disinformation[f]);
    c.significant = c.ks.rejects(alpha);
    c.mainstream = box_summary(mainstream[f]);
    c.disinformation = box_summary(disinformation[f]);
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json to_json(const EvaluationConfig& config) {
  return {{"classifier", std::string(to_string(config.classifier))},
          {"k", config.k},
          {"l2", config.logistic.l2},
          {"tolerance", config.logistic.tolerance},
          {"max_iterations", config.logistic.max_iterations},
          {"folds", config.folds},
          {"test_fraction", config.test_fraction},
          {"seed", config.seed},
          {"threshold", config.threshold},
          {"min_per_class", config.min_per_class},
          {"positive_class", "disinformation"}};
}

nlohmann::json to_json(const ClassificationReport& report) {
  nlohmann::json folds = nlohmann::json::array();
  for (std::size_t i = 0; i < report.folds.size(); ++i) {
    const auto& f = report.folds[i];
    folds.push_back({{"fold", i},
                     {"auc", f.auc},
                     {"precision", f.precision},
                     {"recall", f.recall},
                     {"f1", f.f1},
                     {"train_size", f.train_size},
                     {"test_size", f.test_size}});
  }
  return {{"bucket", std::string(to_string(report.bucket))},
          {"config", to_json(report.config)},
          {"samples", report.samples},
          {"positives", report.positives},
          {"auc", summary_json(report.auc)},
          {"precision", summary_json(report.precision)},
          {"recall", summary_json(report.recall)},
          {"f1", summary_json(report.f1)},
          {"pooled_auc", report.pooled_auc},
          {"folds", folds}};
}

nlohmann::json to_json(const std::vector<FeatureComparison>& comparisons) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : comparisons) {
    out.push_back({{"feature", c.feature},
                   {"ks_statistic", c.ks.statistic},
                   {"p_value", c.ks.p_value},
                   {"significant", c.significant},
                   {"mainstream", box_json(c.mainstream)},
                   {"disinformation", box_json(c.disinformation)}});
  }
  return out;
}

nlohmann::json to_json(const std::map<SizeBucket, std::size_t>& histogram) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [bucket, count] : histogram) out[std::string(to_string(bucket))] = count;
  return out;
}

void write_roc_csv(std::ostream& out, const ClassificationReport& report) {
  out << "fold,threshold,fpr,tpr\n";
  for (std::size_t i = 0; i < report.folds.size(); ++i) {
    for (const auto& p : report.folds[i].roc) {
      out << i << ',' << (std::isinf(p.threshold) ? std::string("inf")
                                                   : csv::format_double(p.threshold))
          << ',' << csv::format_double(p.fpr) << ',' << csv::format_double(p.tpr) << '\n';
    }
  }
}

void write_box_csv(std::ostream& out, const std::vector<FeatureComparison>& comparisons) {
  out << "feature,class,count,min,q1,median,q3,max,mean\n";
  for (const auto& c : comparisons) {
    write_box_row(out, c.feature, "mainstream", c.mainstream);
    write_box_row(out, c.feature, "disinformation", c.disinformation);
  }
}

}  // namespace difnet
