#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "difnet/classify.hpp"
#include "difnet/error.hpp"
#include "difnet/random.hpp"
#include "oracles.hpp"

using namespace difnet;

namespace {

// Sample whose features are drawn around `centre` with the given spread.
Sample make_sample(Rng& rng, std::size_t index, Label label, double centre, double spread) {
  Sample s;
  s.network_id = "s" + std::to_string(index);
  s.label = label;
  s.num_nodes = 10;
  s.bucket = bucket_of(s.num_nodes);
  auto draw = [&] { return centre + spread * (rng.uniform01() - 0.5); };
  s.features.scc = static_cast<std::uint64_t>(std::max(1.0, 10 * draw()));
  s.features.lscc = 1;
  s.features.wcc = 1;
  s.features.lwcc = 10;
  s.features.dwcc = static_cast<std::uint64_t>(std::max(0.0, 3 * draw()));
  s.features.cc = std::clamp(draw(), 0.0, 1.0);
  s.features.kc = static_cast<std::uint64_t>(std::max(0.0, 2 * draw()));
  return s;
}

LabeledDataset two_class(std::uint64_t seed, std::size_t per_class, double gap, double spread) {
  Rng rng(seed);
  LabeledDataset d;
  for (std::size_t i = 0; i < per_class; ++i) {
    d.samples.push_back(make_sample(rng, 2 * i, Label::mainstream, 0.2, spread));
    d.samples.push_back(make_sample(rng, 2 * i + 1, Label::disinformation, 0.2 + gap, spread));
  }
  return d;
}

std::vector<int> labels_with(std::size_t positives, std::size_t negatives) {
  std::vector<int> y(positives, 1);
  y.insert(y.end(), negatives, 0);
  return y;
}

}  // namespace

TEST_SUITE("ml_pipeline") {
  TEST_CASE("logistic model with zero weights predicts one half") {
    LogisticModel m;
    m.weights = {0.0, 0.0, 0.0};
    CHECK(logistic_predict(m, std::vector<double>{3, -1, 8}) == 0.5);
  }

  TEST_CASE("logistic gradient matches central differences") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 5 + rng.uniform_index(20), p = 1 + rng.uniform_index(7);
      Matrix x(n, p);
      std::vector<int> y(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) x(i, j) = 4.0 * rng.uniform01() - 2.0;
        y[i] = static_cast<int>(rng.uniform_index(2));
      }
      std::vector<double> w(p);
      for (auto& v : w) v = 2.0 * rng.uniform01() - 1.0;
      const double b = rng.uniform01() - 0.5, l2 = 1.0;
      std::vector<double> gw(p);
      double gb = 0.0;
      logistic_gradient(x, y, w, b, l2, gw, gb);

      const double h = 1e-6;
      auto rel = [](double analytic, double numeric) {
        return std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
      };
      for (std::size_t j = 0; j < p; ++j) {
        auto up = w, down = w;
        up[j] += h;
        down[j] -= h;
        const double numeric =
            (logistic_objective(x, y, up, b, l2) - logistic_objective(x, y, down, b, l2)) / (2 * h);
        CHECK(rel(gw[j], numeric) <= 1e-5);
      }
      const double numeric =
          (logistic_objective(x, y, w, b + h, l2) - logistic_objective(x, y, w, b - h, l2)) / (2 * h);
      CHECK(rel(gb, numeric) <= 1e-5);
    }
  }

  TEST_CASE("logistic fit separates separable data") {
    const auto x = Matrix::from_rows({{-3}, {-2}, {-1.5}, {1.5}, {2}, {3}});
    const std::vector<int> y = {0, 0, 0, 1, 1, 1};
    const auto model = logistic_fit(x, y);
    CHECK(model.converged);
    std::vector<double> scores;
    for (std::size_t i = 0; i < x.rows(); ++i) scores.push_back(logistic_predict(model, x.row(i)));
    CHECK(roc_auc(scores, y).auc == 1.0);
    CHECK(scores.front() < 0.5);
    CHECK(scores.back() > 0.5);
  }

  TEST_CASE("logistic fit rejects single-class and non-finite input") {
    const auto x = Matrix::from_rows({{1}, {2}});
    CHECK_THROWS_AS(logistic_fit(x, std::vector<int>{1, 1}), InputError);
    const auto bad = Matrix::from_rows({{1}, {std::nan("")}});
    CHECK_THROWS_AS(logistic_fit(bad, std::vector<int>{0, 1}), InputError);
  }

  TEST_CASE("knn examples") {
    const auto train = Matrix::from_rows({{0, 0}, {1, 0}, {5, 5}, {6, 5}});
    const std::vector<int> y = {1, 0, 0, 1};
    CHECK(knn_predict(train, y, std::vector<double>{0, 0}, 1) == 1.0);
    CHECK(knn_predict(train, y, std::vector<double>{6, 5}, 1) == 1.0);
    CHECK(knn_predict(train, y, std::vector<double>{2, 2}, 4) == 0.5);
    // Equidistant neighbours resolve by training order.
    CHECK(knn_predict(train, y, std::vector<double>{0.5, 0}, 1) == 1.0);
    CHECK(euclidean_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}) == 5.0);
  }

  TEST_CASE("knn equals the sorting oracle") {
    Rng rng(6);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 3 + rng.uniform_index(30), p = 1 + rng.uniform_index(4);
      std::vector<std::vector<double>> rows(n, std::vector<double>(p));
      std::vector<int> y(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : rows[i]) v = static_cast<double>(rng.uniform_index(4));
        y[i] = static_cast<int>(rng.uniform_index(2));
      }
      std::vector<double> q(p);
      for (auto& v : q) v = static_cast<double>(rng.uniform_index(4));
      const std::size_t k = 1 + rng.uniform_index(n);
      CHECK(knn_predict(Matrix::from_rows(rows), y, q, k) == oracle::knn_vote(rows, y, q, k));
    }
  }

  TEST_CASE("knn on a precomputed distance matrix") {
    DistanceMatrix d({"a", "b", "c", "d"});
    d.set(0, 1, 1.0);
    d.set(0, 2, 2.0);
    d.set(0, 3, 3.0);
    d.set(1, 2, 1.0);
    d.set(1, 3, 2.0);
    d.set(2, 3, 1.0);
    d.validate();
    const std::vector<int> y = {1, 0, 1, 1};
    const std::vector<std::size_t> train = {1, 2, 3};
    CHECK(knn_predict_from_distances(d, train, y, 0, 1) == 0.0);
    CHECK(knn_predict_from_distances(d, train, y, 0, 2) == 0.5);
    CHECK(knn_predict_from_distances(d, train, y, 0, 3) == doctest::Approx(2.0 / 3.0));
  }

  TEST_CASE("distance matrix validation") {
    CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {0, 1, 2, 0}).validate(), InputError);
    CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {1, 1, 1, 0}).validate(), InputError);
    CHECK_THROWS_AS(DistanceMatrix({"a", "b"}, {0, 1, 1}), InputError);
    CHECK_NOTHROW(DistanceMatrix({"a", "b"}, {0, 1, 1, 0}).validate());
    const DistanceMatrix d({"a", "b", "c"}, {0, 1, 2, 1, 0, 3, 2, 3, 0});
    const std::vector<std::size_t> idx = {2, 0};
    const auto s = d.select(idx);
    CHECK(s.ids() == std::vector<std::string>{"c", "a"});
    CHECK(s(0, 1) == 2.0);
  }

  TEST_CASE("stratified split of 90 and 10") {
    const auto y = labels_with(10, 90);
    const auto folds = stratified_shuffle_split(y, 10, 0.1, 7);
    REQUIRE(folds.size() == 10);
    for (const auto& f : folds) {
      REQUIRE(f.test.size() == 10);
      std::size_t pos = 0;
      for (auto i : f.test) pos += static_cast<std::size_t>(y[i]);
      CHECK(pos == 1);
      CHECK(f.train.size() == 90);
      CHECK(std::is_sorted(f.train.begin(), f.train.end()));
      std::vector<std::size_t> all = f.train;
      all.insert(all.end(), f.test.begin(), f.test.end());
      std::sort(all.begin(), all.end());
      for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
    }
  }

  TEST_CASE("stratified split is reproducible") {
    const auto y = labels_with(33, 57);
    const auto a = stratified_shuffle_split(y, 10, 0.1, 99);
    const auto b = stratified_shuffle_split(y, 10, 0.1, 99);
    const auto c = stratified_shuffle_split(y, 10, 0.1, 100);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].test == b[i].test);
      CHECK(a[i].train == b[i].train);
      differs = differs || a[i].test != c[i].test;
    }
    CHECK(differs);
  }

  TEST_CASE("stratified split stays within one of proportional") {
    Rng rng(13);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 20 + rng.uniform_index(200);
      const std::size_t pos = 10 + rng.uniform_index(n - 19);
      if (n - pos < 10) continue;
      const auto y = labels_with(pos, n - pos);
      const double frac = 0.05 + 0.4 * rng.uniform01();
      const auto folds = stratified_shuffle_split(y, 3, frac, rng.next());
      const auto test_size = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n)));
      for (const auto& f : folds) {
        CHECK(f.test.size() == test_size);
        std::size_t got = 0;
        for (auto i : f.test) got += static_cast<std::size_t>(y[i]);
        const double expected = static_cast<double>(test_size) * static_cast<double>(pos) /
                                static_cast<double>(n);
        CHECK(std::abs(static_cast<double>(got) - expected) <= 1.0);
      }
    }
  }

  TEST_CASE("stratified split rejects small classes and bad fractions") {
    CHECK_THROWS_AS(stratified_shuffle_split(labels_with(3, 50), 10), InputError);
    CHECK_THROWS_AS(stratified_shuffle_split(labels_with(30, 50), 10, 0.0), InputError);
    CHECK_THROWS_AS(stratified_shuffle_split(labels_with(30, 50), 10, 1.0), InputError);
  }

  TEST_CASE("classifier names") {
    CHECK(parse_classifier("lr") == ClassifierKind::logistic);
    CHECK(parse_classifier(to_string(ClassifierKind::knn_distance)) == ClassifierKind::knn_distance);
    CHECK_THROWS_AS(parse_classifier("svm"), InputError);
  }

  TEST_CASE("evaluation on disjoint classes reaches AUC 1") {
    const auto d = two_class(1, 60, 0.6, 0.2);
    for (auto kind : {ClassifierKind::logistic, ClassifierKind::knn}) {
      EvaluationConfig cfg;
      cfg.classifier = kind;
      const auto report = evaluate(d, cfg);
      CHECK(report.folds.size() == 10);
      CHECK(report.samples == 120);
      CHECK(report.positives == 60);
      CHECK(report.auc.mean == 1.0);
      CHECK(report.pooled_auc == 1.0);
      for (const auto& f : report.folds) {
        CHECK(f.test_size == 12);
        CHECK(f.train_size == 108);
        CHECK(f.scores.size() == f.test_indices.size());
      }
    }
  }

  TEST_CASE("evaluation with shuffled labels stays near chance") {
    const auto d = permute_labels(two_class(2, 250, 0.6, 0.2), 5);
    EvaluationConfig cfg;
    const auto report = evaluate(d, cfg);
    CHECK(std::abs(report.auc.mean - 0.5) <= 0.07);
  }

  TEST_CASE("evaluation errors") {
    auto d = two_class(3, 30, 0.6, 0.2);
    EvaluationConfig cfg;
    cfg.classifier = ClassifierKind::knn;
    cfg.k = 500;
    try {
      evaluate(d, cfg);
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("fold") != std::string::npos);
    }

    cfg.k = 3;
    cfg.min_per_class = 40;
    CHECK_THROWS_AS(evaluate(d, cfg), InputError);

    cfg.min_per_class = 1;
    cfg.classifier = ClassifierKind::knn_distance;
    CHECK_THROWS_AS(evaluate(d, cfg), InputError);

    d.samples[0].label = Label::unlabeled;
    CHECK_THROWS(d.binary_labels());
  }

  TEST_CASE("evaluation with a distance matrix") {
    auto d = two_class(4, 40, 0.6, 0.2);
    std::vector<std::string> ids;
    for (const auto& s : d.samples) ids.push_back(s.network_id);
    DistanceMatrix m(ids);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j)
        m.set(i, j, d.samples[i].label == d.samples[j].label ? 0.1 : 0.9);
    d.distances = m;
    d.validate();
    EvaluationConfig cfg;
    cfg.classifier = ClassifierKind::knn_distance;
    cfg.k = 5;
    CHECK(evaluate(d, cfg).auc.mean == 1.0);
  }

  TEST_CASE("permuted labels keep class counts") {
    const auto d = two_class(5, 25, 0.5, 0.2);
    const auto p = permute_labels(d, 1);
    const auto a = d.binary_labels(), b = p.binary_labels();
    CHECK(std::count(a.begin(), a.end(), 1) == std::count(b.begin(), b.end(), 1));
    CHECK(a != b);
    CHECK(p.samples[3].network_id == d.samples[3].network_id);
  }
}
