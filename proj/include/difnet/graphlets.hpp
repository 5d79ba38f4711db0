#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "difnet/network.hpp"

namespace difnet {

inline constexpr std::size_t kOrbitCount = 13;

/// A connected oriented graphlet on 2 or 3 nodes. `orbits[p]` is the orbit
/// index of node position p (unused positions hold -1).
struct GraphletPrototype {
  std::string_view name;
  int num_nodes;
  std::vector<std::pair<int, int>> arcs;
  std::array<int, 3> orbits;
};

/// The six connected oriented graphlets on 2-3 nodes and their 13
/// automorphism orbits:
///
///   0,1    single arc              source, target
///   2,3    out-star                centre, leaf
///   4,5    in-star                 centre, leaf
///   6,7,8  directed path           source, middle, sink
///   9..11  transitive triangle     source, middle, sink
///   12     directed 3-cycle
const std::vector<GraphletPrototype>& graphlet_catalog();

/// Per-node orbit counts, one row of 13 counts per node.
///
/// Reciprocated pairs are resolved by orientation: every way of keeping
/// exactly one arc of each reciprocated pair in an induced 2- or 3-node
/// subgraph is counted as one graphlet occurrence. On oriented graphs
/// (no reciprocated pairs) this is plain induced-subgraph counting; in
/// general each arc contributes once to orbit 0 and once to orbit 1.
class OrbitCountMatrix {
 public:
  using Row = std::array<std::uint64_t, kOrbitCount>;

  OrbitCountMatrix() = default;
  explicit OrbitCountMatrix(std::size_t rows) : rows_(rows, Row{}) {}

  std::size_t num_rows() const noexcept { return rows_.size(); }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  Row& row(std::size_t i) { return rows_.at(i); }
  std::uint64_t at(std::size_t node, std::size_t orbit) const {
    return rows_.at(node).at(orbit);
  }
  std::span<const Row> rows() const noexcept { return rows_; }

  std::uint64_t column_sum(std::size_t orbit) const;

  friend bool operator==(const OrbitCountMatrix&, const OrbitCountMatrix&) = default;

 private:
  std::vector<Row> rows_;
};

using CorrelationMatrix13 = std::array<std::array<double, kOrbitCount>, kOrbitCount>;

/// Orbit-count increments for one ordered node triple, indexed by the
/// 6-bit arc signature: bit0 a->b, bit1 b->a, bit2 a->c, bit3 c->a,
/// bit4 b->c, bit5 c->b.
struct OrbitIncrement {
  std::uint8_t position;
  std::uint8_t orbit;
  std::uint8_t count;
};
std::span<const OrbitIncrement> triple_increments(unsigned signature);

/// Warns (but proceeds) for networks with 1000 nodes or more.
OrbitCountMatrix count_orbits(const DiffusionNetwork& network);

/// Spearman correlation (average ranks for ties) between every pair of
/// orbit columns, after appending one pseudo-row of ones. A column that is
/// still constant correlates 0 with every other column.
CorrelationMatrix13 correlation_matrix(const OrbitCountMatrix& counts);

/// Euclidean distance between the strict upper triangles.
double dgcd13(const CorrelationMatrix13& a, const CorrelationMatrix13& b);
double dgcd13(const DiffusionNetwork& a, const DiffusionNetwork& b);

/// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

void write_orbit_counts(const OrbitCountMatrix& counts, const std::filesystem::path& path);
void write_correlation_matrix(const CorrelationMatrix13& matrix,
                              const std::filesystem::path& path);
CorrelationMatrix13 read_correlation_matrix(const std::filesystem::path& path);

}  // namespace difnet
