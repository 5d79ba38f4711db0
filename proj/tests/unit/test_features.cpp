#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "difnet/error.hpp"
#include "difnet/features.hpp"
#include "difnet/random.hpp"
#include "oracles.hpp"

using namespace difnet;

namespace {

// Letters map to node indices: A=0, B=1, ...
DiffusionNetwork graph(std::size_t n, std::vector<Edge> edges) {
  return DiffusionNetwork::from_edges(n, std::move(edges));
}

DiffusionNetwork relabel(const DiffusionNetwork& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.source], perm[e.target]});
  return DiffusionNetwork::from_edges(g.num_nodes(), std::move(edges));
}

}  // namespace

TEST_SUITE("global_features") {
  TEST_CASE("component examples") {
    const auto cycle = component_features(graph(3, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(cycle.scc == 1);
    CHECK(cycle.lscc == 3);
    CHECK(cycle.wcc == 1);
    CHECK(cycle.lwcc == 3);

    const auto star = component_features(graph(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(star.scc == 4);
    CHECK(star.lscc == 1);
    CHECK(star.wcc == 1);
    CHECK(star.lwcc == 4);

    const auto pairs = component_features(graph(4, {{0, 1}, {2, 3}}));
    CHECK(pairs.scc == 4);
    CHECK(pairs.lscc == 1);
    CHECK(pairs.wcc == 2);
    CHECK(pairs.lwcc == 2);
  }

  TEST_CASE("diameter examples") {
    CHECK(lwcc_diameter(graph(3, {{0, 1}, {1, 2}})) == 2);
    CHECK(lwcc_diameter(graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}})) == 2);
    CHECK(lwcc_diameter(graph(1, {})) == 0);
    // Two largest components of size 3: a path (diameter 2) and a triangle.
    CHECK(lwcc_diameter(graph(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {5, 3}})) == 2);
  }

  TEST_CASE("clustering examples") {
    CHECK(average_clustering(graph(3, {{0, 1}, {1, 2}, {2, 0}})) == doctest::Approx(1.0));
    CHECK(average_clustering(graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})) == 0.0);
    CHECK(average_clustering(graph(5, {{1, 0}, {2, 0}, {3, 0}, {4, 0}})) == 0.0);
    const auto g = graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
    const double expected = (1.0 / 3.0 + 1.0 + 1.0 + 0.0) / 4.0;
    CHECK(average_clustering(g) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(oracle::undirected_clustering(g) == doctest::Approx(expected).epsilon(1e-15));
  }

  TEST_CASE("directed clustering of a reciprocated triangle is 1") {
    const auto g = graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
    CHECK(average_clustering(g, ClusteringVariant::directed) == doctest::Approx(1.0));
    CHECK(average_clustering(graph(3, {{0, 1}, {1, 2}, {2, 0}}), ClusteringVariant::directed) ==
          doctest::Approx(0.5));
  }

  TEST_CASE("k-core examples") {
    CHECK(main_kcore(graph(3, {})) == 0);
    CHECK(main_kcore(graph(3, {{0, 1}, {1, 2}, {2, 0}})) == 2);
    CHECK(main_kcore(graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})) == 2);
    CHECK(oracle::main_kcore(graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})) == 2);
    // K4 is its own 3-core.
    CHECK(main_kcore(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})) == 3);
  }

  TEST_CASE("feature vector examples") {
    const auto single = extract_features(graph(1, {}));
    CHECK(single == FeatureVector{1, 1, 1, 1, 0, 0.0, 0});
    const auto cycle = extract_features(graph(3, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(cycle.scc == 1);
    CHECK(cycle.lscc == 3);
    CHECK(cycle.wcc == 1);
    CHECK(cycle.lwcc == 3);
    CHECK(cycle.dwcc == 1);
    CHECK(cycle.cc == doctest::Approx(1.0));
    CHECK(cycle.kc == 2);
    const auto values = cycle.to_array();
    CHECK(values[0] == 1.0);
    CHECK(values[6] == 2.0);
    CHECK(FeatureVector::kNames[4] == "dwcc");
  }

  TEST_CASE("empty graphs are rejected") {
    CHECK_THROWS_AS(extract_features(DiffusionNetwork{}), EmptyGraphError);
  }

  TEST_CASE("features equal the naive oracles on random graphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng.uniform_index(8);
      const double p = 0.05 + 0.5 * rng.uniform01();
      const auto g = oracle::random_digraph(rng, n, p, 0.3);
      const auto f = extract_features(g);
      const auto [scc, lscc] = oracle::scc(g);
      const auto [wcc, lwcc] = oracle::wcc(g);
      CHECK(f.scc == scc);
      CHECK(f.lscc == lscc);
      CHECK(f.wcc == wcc);
      CHECK(f.lwcc == lwcc);
      CHECK(f.dwcc == oracle::lwcc_diameter(g));
      CHECK(f.cc == doctest::Approx(oracle::undirected_clustering(g)).epsilon(1e-12));
      CHECK(f.kc == oracle::main_kcore(g));
      CHECK(average_clustering(g, ClusteringVariant::directed) ==
            doctest::Approx(oracle::directed_clustering(g)).epsilon(1e-12));
    }
  }

  TEST_CASE("feature invariants and relabelling invariance") {
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng.uniform_index(30);
      const auto g = oracle::random_digraph(rng, n, 2.0 / static_cast<double>(n), 0.2);
      const auto f = extract_features(g);
      CHECK(f.lscc >= 1);
      CHECK(f.lscc <= n);
      CHECK(f.lwcc >= 1);
      CHECK(f.lwcc <= n);
      CHECK(f.scc <= n);
      CHECK(f.wcc <= f.scc);
      CHECK((f.dwcc == 0) == (f.lwcc == 1));
      CHECK(f.cc >= 0.0);
      CHECK(f.cc <= 1.0);
      CHECK((f.kc == 0) == (g.num_edges() == 0));

      std::vector<NodeId> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(std::span<NodeId>(perm));
      const auto h = extract_features(relabel(g, perm));
      CHECK(h.scc == f.scc);
      CHECK(h.lscc == f.lscc);
      CHECK(h.wcc == f.wcc);
      CHECK(h.lwcc == f.lwcc);
      CHECK(h.dwcc == f.dwcc);
      CHECK(h.cc == doctest::Approx(f.cc).epsilon(1e-12));
      CHECK(h.kc == f.kc);
    }
  }

  TEST_CASE("component labelling is a partition") {
    Rng rng(8);
    for (int trial = 0; trial < 50; ++trial) {
      const auto g = oracle::random_digraph(rng, 1 + rng.uniform_index(20), 0.1);
      for (const auto& c : {strongly_connected_components(g), weakly_connected_components(g)}) {
        const auto sizes = c.sizes();
        CHECK(sizes.size() == c.count);
        CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == g.num_nodes());
        for (auto id : c.component_of) CHECK(id < c.count);
      }
      const auto cores = core_numbers(g);
      for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(cores[v] <= g.degree(v));
    }
  }

  TEST_CASE("clustering variant names") {
    CHECK(parse_clustering("directed") == ClusteringVariant::directed);
    CHECK(parse_clustering(to_string(ClusteringVariant::undirected)) ==
          ClusteringVariant::undirected);
    CHECK_THROWS_AS(parse_clustering("other"), InputError);
  }
}
