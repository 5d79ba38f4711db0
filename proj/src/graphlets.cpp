#include "difnet/graphlets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "difnet/error.hpp"
#include "difnet/io.hpp"

namespace difnet {

namespace {

// Arc bit for the ordered pair (from, to) among triple positions 0,1,2.
constexpr unsigned arc_bit(int from, int to) {
  if (from == 0 && to == 1) return 1u << 0;
  if (from == 1 && to == 0) return 1u << 1;
  if (from == 0 && to == 2) return 1u << 2;
  if (from == 2 && to == 0) return 1u << 3;
  if (from == 1 && to == 2) return 1u << 4;
  return 1u << 5;  // 2 -> 1
}

constexpr std::array<std::array<int, 3>, 6> kPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

// Matches an oriented 3-node arc set against the 3-node prototypes and adds
// the orbit of every position to `counts`.
void classify_oriented(unsigned arcs, std::array<std::array<int, kOrbitCount>, 3>& counts) {
  for (const auto& proto : graphlet_catalog()) {
    if (proto.num_nodes != 3) continue;
    for (const auto& perm : kPermutations) {
      unsigned mapped = 0;
      for (auto [from, to] : proto.arcs) mapped |= arc_bit(perm[from], perm[to]);
      if (mapped != arcs) continue;
      for (int p = 0; p < 3; ++p) counts[perm[p]][proto.orbits[p]] += 1;
      return;
    }
  }
}

std::vector<std::vector<OrbitIncrement>> build_increment_table() {
  std::vector<std::vector<OrbitIncrement>> table(64);
  // Pairs (a,b), (a,c), (b,c) with the bits of both directions.
  constexpr std::array<std::pair<unsigned, unsigned>, 3> kPairs = {{
      {arc_bit(0, 1), arc_bit(1, 0)},
      {arc_bit(0, 2), arc_bit(2, 0)},
      {arc_bit(1, 2), arc_bit(2, 1)},
  }};
  for (unsigned signature = 0; signature < 64; ++signature) {
    std::array<std::vector<unsigned>, 3> choices;
    int present = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto [forward, backward] = kPairs[i];
      if (signature & forward) choices[i].push_back(forward);
      if (signature & backward) choices[i].push_back(backward);
      if (choices[i].empty()) {
        choices[i].push_back(0);
      } else {
        ++present;
      }
    }
    if (present < 2) continue;  // disconnected triple

    std::array<std::array<int, kOrbitCount>, 3> counts{};
    for (unsigned x : choices[0])
      for (unsigned y : choices[1])
        for (unsigned z : choices[2]) classify_oriented(x | y | z, counts);

    for (std::uint8_t p = 0; p < 3; ++p) {
      for (std::uint8_t o = 0; o < kOrbitCount; ++o) {
        if (counts[p][o] > 0) {
          table[signature].push_back({p, o, static_cast<std::uint8_t>(counts[p][o])});
        }
      }
    }
  }
  return table;
}

}  // namespace

const std::vector<GraphletPrototype>& graphlet_catalog() {
  static const std::vector<GraphletPrototype> catalog = {
      {"arc", 2, {{0, 1}}, {0, 1, -1}},
      {"out-star", 3, {{0, 1}, {0, 2}}, {2, 3, 3}},
      {"in-star", 3, {{1, 0}, {2, 0}}, {4, 5, 5}},
      {"path", 3, {{0, 1}, {1, 2}}, {6, 7, 8}},
      {"transitive-triangle", 3, {{0, 1}, {0, 2}, {1, 2}}, {9, 10, 11}},
      {"cycle", 3, {{0, 1}, {1, 2}, {2, 0}}, {12, 12, 12}},
  };
  return catalog;
}

std::span<const OrbitIncrement> triple_increments(unsigned signature) {
  static const auto table = build_increment_table();
  return table.at(signature);
}

std::uint64_t OrbitCountMatrix::column_sum(std::size_t orbit) const {
  std::uint64_t total = 0;
  for (const Row& r : rows_) total += r.at(orbit);
  return total;
}

OrbitCountMatrix count_orbits(const DiffusionNetwork& network) {
  const std::size_t n = network.num_nodes();
  if (n >= 1000) {
    warn("counting graphlet orbits on " + std::to_string(n) +
         " nodes; networks of 1000+ nodes are expensive");
  }
  OrbitCountMatrix counts(n);

  for (const Edge& e : network.edges()) {
    counts.row(e.source)[0] += 1;
    counts.row(e.target)[1] += 1;
  }

  auto signature_of = [&](NodeId a, NodeId b, NodeId c, bool bc_adjacent) {
    unsigned sig = 0;
    if (network.has_edge(a, b)) sig |= 1u << 0;
    if (network.has_edge(b, a)) sig |= 1u << 1;
    if (network.has_edge(a, c)) sig |= 1u << 2;
    if (network.has_edge(c, a)) sig |= 1u << 3;
    if (bc_adjacent) {
      if (network.has_edge(b, c)) sig |= 1u << 4;
      if (network.has_edge(c, b)) sig |= 1u << 5;
    }
    return sig;
  };

  // Each connected triple is visited once: paths from their centre,
  // triangles from their smallest node.
  for (NodeId v = 0; v < n; ++v) {
    auto nbrs = network.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId u = nbrs[i];
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const NodeId w = nbrs[j];
        const bool closed = network.adjacent(u, w);
        if (closed && u < v) continue;
        const std::array<NodeId, 3> triple = {v, u, w};
        for (const OrbitIncrement& inc : triple_increments(signature_of(v, u, w, closed))) {
          counts.row(triple[inc.position])[inc.orbit] += inc.count;
        }
      }
    }
  }
  return counts;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

CorrelationMatrix13 correlation_matrix(const OrbitCountMatrix& counts) {
  if (counts.num_rows() == 0) throw EmptyGraphError();
  const std::size_t m = counts.num_rows() + 1;

  std::array<std::vector<double>, kOrbitCount> centered;
  std::array<double, kOrbitCount> norm{};
  for (std::size_t o = 0; o < kOrbitCount; ++o) {
    std::vector<double> column(m, 1.0);
    for (std::size_t r = 0; r < counts.num_rows(); ++r) {
      column[r] = static_cast<double>(counts.at(r, o));
    }
    auto ranks = average_ranks(column);
    const double mean = std::accumulate(ranks.begin(), ranks.end(), 0.0) / m;
    double ss = 0.0;
    for (double& x : ranks) {
      x -= mean;
      ss += x * x;
    }
    centered[o] = std::move(ranks);
    norm[o] = std::sqrt(ss);
  }

  CorrelationMatrix13 result{};
  for (std::size_t a = 0; a < kOrbitCount; ++a) {
    result[a][a] = 1.0;
    for (std::size_t b = a + 1; b < kOrbitCount; ++b) {
      double r = 0.0;
      if (norm[a] > 0.0 && norm[b] > 0.0) {
        double dot = 0.0;
        for (std::size_t i = 0; i < m; ++i) dot += centered[a][i] * centered[b][i];
        r = std::clamp(dot / (norm[a] * norm[b]), -1.0, 1.0);
      }
      result[a][b] = result[b][a] = r;
    }
  }
  return result;
}

double dgcd13(const CorrelationMatrix13& a, const CorrelationMatrix13& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kOrbitCount; ++i) {
    for (std::size_t j = i + 1; j < kOrbitCount; ++j) {
      const double d = a[i][j] - b[i][j];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

double dgcd13(const DiffusionNetwork& a, const DiffusionNetwork& b) {
  if (a.empty() || b.empty()) throw EmptyGraphError();
  return dgcd13(correlation_matrix(count_orbits(a)), correlation_matrix(count_orbits(b)));
}

void write_orbit_counts(const OrbitCountMatrix& counts,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  for (std::size_t o = 0; o < kOrbitCount; ++o) out << (o ? ",o" : "o") << o;
  out << '\n';
  for (const auto& row : counts.rows()) {
    for (std::size_t o = 0; o < kOrbitCount; ++o) out << (o ? "," : "") << row[o];
    out << '\n';
  }
}

void write_correlation_matrix(const CorrelationMatrix13& matrix,
                              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  for (const auto& row : matrix) {
    for (std::size_t o = 0; o < kOrbitCount; ++o) {
      out << (o ? "," : "") << csv::format_double(row[o]);
    }
    out << '\n';
  }
}

CorrelationMatrix13 read_correlation_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  CorrelationMatrix13 matrix{};
  std::string line;
  std::size_t r = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (r >= kOrbitCount) throw FormatError(path.string(), r + 1, "too many rows");
    auto fields = csv::split_record(line);
    if (fields.size() != kOrbitCount) {
      throw FormatError(path.string(), r + 1, "expected 13 columns");
    }
    for (std::size_t c = 0; c < kOrbitCount; ++c) {
      try {
        matrix[r][c] = std::stod(fields[c]);
      } catch (const std::exception&) {
        throw FormatError(path.string(), r + 1, "invalid number '" + fields[c] + "'");
      }
    }
    ++r;
  }
  if (r != kOrbitCount) throw FormatError(path.string(), 0, "expected 13 rows");
  return matrix;
}

}  // namespace difnet
