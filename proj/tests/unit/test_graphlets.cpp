#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "difnet/graphlets.hpp"
#include "difnet/random.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace difnet;

namespace {

DiffusionNetwork graph(std::size_t n, std::vector<Edge> edges) {
  return DiffusionNetwork::from_edges(n, std::move(edges));
}

OrbitCountMatrix matrix_of(const std::vector<OrbitCountMatrix::Row>& rows) {
  OrbitCountMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i];
  return m;
}

std::vector<OrbitCountMatrix::Row> rows_of(const OrbitCountMatrix& m) {
  return {m.rows().begin(), m.rows().end()};
}

// Every automorphism of a labelled oriented graph on m positions.
std::vector<std::vector<int>> automorphisms(int m, const oracle::ArcSet& arcs) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    oracle::ArcSet mapped;
    for (auto [u, v] : arcs) mapped.insert({perm[u], perm[v]});
    if (mapped == arcs) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Canonical form: lexicographically smallest relabelled arc set.
oracle::ArcSet canonical(int m, const oracle::ArcSet& arcs) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<oracle::ArcSet> best;
  do {
    oracle::ArcSet mapped;
    for (auto [u, v] : arcs) mapped.insert({perm[u], perm[v]});
    if (!best || mapped < *best) best = mapped;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

}  // namespace

TEST_SUITE("graphlet_distance") {
  TEST_CASE("catalog re-derived by exhaustive enumeration") {
    // All oriented (no reciprocated pair) connected graphs on 2 and 3
    // labelled positions, grouped into isomorphism classes.
    std::map<std::pair<int, oracle::ArcSet>, std::vector<oracle::ArcSet>> classes;
    classes[{2, canonical(2, {{0, 1}})}].push_back({{0, 1}});
    const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    for (int code = 0; code < 27; ++code) {
      oracle::ArcSet arcs;
      int c = code;
      for (auto [u, v] : pairs) {
        if (c % 3 == 1) arcs.insert({u, v});
        if (c % 3 == 2) arcs.insert({v, u});
        c /= 3;
      }
      if (oracle::weakly_connected(3, arcs)) classes[{3, canonical(3, arcs)}].push_back(arcs);
    }
    CHECK(classes.size() == 6);
    CHECK(graphlet_catalog().size() == 6);

    std::set<int> all_orbits;
    std::size_t orbit_total = 0;
    for (const auto& [key, members] : classes) {
      const int m = key.first;
      std::set<int> class_orbits;
      for (const auto& arcs : members) {
        const auto orbit = oracle::orbits_of(m, arcs);
        REQUIRE(orbit.size() == static_cast<std::size_t>(m));
        const auto autos = automorphisms(m, arcs);
        for (int u = 0; u < m; ++u) {
          for (int v = 0; v < m; ++v) {
            const bool related = std::any_of(autos.begin(), autos.end(),
                                             [&](const auto& a) { return a[u] == v; });
            CHECK(related == (orbit[u] == orbit[v]));
          }
          class_orbits.insert(orbit[u]);
        }
      }
      for (int o : class_orbits) CHECK(all_orbits.insert(o).second);
      orbit_total += class_orbits.size();
    }
    CHECK(orbit_total == kOrbitCount);
    CHECK(*all_orbits.begin() == 0);
    CHECK(*all_orbits.rbegin() == static_cast<int>(kOrbitCount) - 1);
  }

  TEST_CASE("single arc") {
    const auto counts = count_orbits(graph(2, {{0, 1}}));
    OrbitCountMatrix::Row a{}, b{};
    a[0] = 1;
    b[1] = 1;
    CHECK(counts.row(0) == a);
    CHECK(counts.row(1) == b);
  }

  TEST_CASE("directed path matches the brute-force oracle") {
    const auto g = graph(3, {{0, 1}, {1, 2}});
    const auto counts = count_orbits(g);
    CHECK(rows_of(counts) == oracle::orbit_counts(g));
    CHECK(counts.at(0, 6) == 1);
    CHECK(counts.at(1, 7) == 1);
    CHECK(counts.at(2, 8) == 1);
    CHECK(counts.at(1, 0) == 1);
    CHECK(counts.at(1, 1) == 1);
  }

  TEST_CASE("3-cycle rows are identical") {
    const auto counts = count_orbits(graph(3, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(counts.row(0) == counts.row(1));
    CHECK(counts.row(1) == counts.row(2));
    CHECK(counts.at(0, 12) == 1);
  }

  TEST_CASE("reciprocated pair counts both orientations") {
    const auto counts = count_orbits(graph(2, {{0, 1}, {1, 0}}));
    CHECK(counts.at(0, 0) == 1);
    CHECK(counts.at(0, 1) == 1);
    CHECK(counts.at(1, 0) == 1);
    CHECK(counts.at(1, 1) == 1);
  }

  TEST_CASE("lookup table covers every signature") {
    std::size_t nonempty = 0;
    for (unsigned s = 0; s < 64; ++s) {
      const auto incs = triple_increments(s);
      if (!incs.empty()) ++nonempty;
      for (const auto& inc : incs) {
        CHECK(inc.position < 3);
        CHECK(inc.orbit >= 2);
        CHECK(inc.orbit < kOrbitCount);
      }
    }
    // Connected triples: at least two of the three pairs adjacent, each
    // adjacent pair in one of three arc states.
    CHECK(nonempty == 3 * 3 * 3 + 3 * 3 * 3);
  }

  TEST_CASE("orbit counts equal brute force on random graphs") {
    Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t n = 1 + rng.uniform_index(20);
      const auto g = oracle::random_digraph(rng, n, 0.05 + 0.3 * rng.uniform01(), 0.3);
      const auto counts = count_orbits(g);
      REQUIRE(counts.num_rows() == n);
      CHECK(rows_of(counts) == oracle::orbit_counts(g));
      CHECK(counts.column_sum(0) == g.num_edges());
      CHECK(counts.column_sum(1) == g.num_edges());
    }
  }

  TEST_CASE("correlation examples") {
    // Columns 2 and 3 identical; columns 4 and 5 reverse-ranked with the
    // pseudo-row value sitting between them.
    std::vector<OrbitCountMatrix::Row> rows(4);
    const std::uint64_t x[4] = {0, 2, 0, 2};
    const std::uint64_t z[4] = {3, 5, 7, 11};
    for (int i = 0; i < 4; ++i) {
      rows[i][2] = rows[i][3] = z[i];
      rows[i][4] = x[i];
      rows[i][5] = 2 - x[i];
      rows[i][6] = (i * 7) % 5;
      rows[i][7] = 1;
    }
    const auto r = correlation_matrix(matrix_of(rows));
    CHECK(r[2][3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r[4][5] == doctest::Approx(-1.0).epsilon(1e-12));
    // Column 7 stays constant with the pseudo-row; column 0 does not.
    CHECK(r[7][2] == 0.0);
    CHECK(r[0][2] != 0.0);
    for (std::size_t i = 0; i < kOrbitCount; ++i) CHECK(r[i][i] == 1.0);

    const auto expected = oracle::spearman(rows);
    for (std::size_t i = 0; i < kOrbitCount; ++i)
      for (std::size_t j = 0; j < kOrbitCount; ++j)
        CHECK(r[i][j] == doctest::Approx(expected[i][j]).epsilon(1e-12));
  }

  TEST_CASE("average ranks share ties") {
    const std::vector<double> v = {10, 20, 10, 30};
    CHECK(average_ranks(v) == std::vector<double>{1.5, 3.0, 1.5, 4.0});
  }

  TEST_CASE("correlations equal the rank-then-Pearson oracle on random graphs") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      const auto g = oracle::random_digraph(rng, 1 + rng.uniform_index(25), 0.15, 0.2);
      const auto r = correlation_matrix(count_orbits(g));
      const auto expected = oracle::spearman(oracle::orbit_counts(g));
      for (std::size_t i = 0; i < kOrbitCount; ++i) {
        for (std::size_t j = 0; j < kOrbitCount; ++j) {
          CHECK(r[i][j] == doctest::Approx(expected[i][j]).epsilon(1e-10));
          CHECK(r[i][j] == r[j][i]);
          CHECK(std::abs(r[i][j]) <= 1.0 + 1e-12);
        }
      }
    }
  }

  TEST_CASE("dgcd13 examples and pseudometric properties") {
    const auto cycle = graph(3, {{0, 1}, {1, 2}, {2, 0}});
    const auto star = graph(3, {{0, 1}, {0, 2}});
    CHECK(dgcd13(cycle, cycle) == 0.0);
    CHECK(dgcd13(cycle, star) > 0.0);

    Rng rng(12);
    std::vector<DiffusionNetwork> nets;
    for (int i = 0; i < 12; ++i) nets.push_back(oracle::random_digraph(rng, 2 + rng.uniform_index(20), 0.15));
    for (const auto& a : nets) {
      CHECK(dgcd13(a, a) == 0.0);
      for (const auto& b : nets) {
        const double d = dgcd13(a, b);
        CHECK(d >= 0.0);
        CHECK(d <= 2.0 * std::sqrt(78.0));
        CHECK(std::abs(d - dgcd13(b, a)) <= 1e-12);
      }
    }
  }

  TEST_CASE("dgcd13 is invariant under relabelling") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + rng.uniform_index(25);
      const auto g = oracle::random_digraph(rng, n, 0.12);
      std::vector<NodeId> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(std::span<NodeId>(perm));
      std::vector<Edge> edges;
      for (const auto& e : g.edges()) edges.push_back({perm[e.source], perm[e.target]});
      const auto h = DiffusionNetwork::from_edges(n, std::move(edges));
      CHECK(dgcd13(g, h) <= 1e-12);
    }
  }

  TEST_CASE("large inputs are counted with a warning") {
    testutil::WarningCapture capture;
    std::vector<Edge> edges;
    for (NodeId v = 1; v < 1000; ++v) edges.push_back({0, v});
    const auto counts = count_orbits(DiffusionNetwork::from_edges(1000, std::move(edges)));
    CHECK(capture.messages.size() == 1);
    CHECK(counts.at(0, 2) == 999ull * 998 / 2);
  }

  TEST_CASE("cache files round-trip") {
    const auto dir = testutil::scratch_dir("graphlet_cache");
    Rng rng(4);
    const auto g = oracle::random_digraph(rng, 15, 0.2);
    const auto r = correlation_matrix(count_orbits(g));
    write_correlation_matrix(r, dir / "c.csv");
    CHECK(read_correlation_matrix(dir / "c.csv") == r);
    write_orbit_counts(count_orbits(g), dir / "o.csv");
    CHECK(std::filesystem::file_size(dir / "o.csv") > 0);
  }
}
