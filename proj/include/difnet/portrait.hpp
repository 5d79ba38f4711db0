#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "difnet/network.hpp"

namespace difnet {

struct PortraitOptions {
  /// Follow arc direction in the shortest-path searches.
  bool directed = true;
};

/// Network portrait: B[l][k] is the number of nodes with exactly k nodes at
/// shortest-path distance l. Rows run from l = 0 to the largest finite
/// distance. Stored sparsely; absent entries are zero and B[l][0] is kept
/// explicitly so every row sums to the node count.
class Portrait {
 public:
  Portrait() = default;
  Portrait(std::size_t num_nodes, std::vector<std::map<std::size_t, std::uint64_t>> rows);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  /// Number of rows (max finite distance + 1).
  std::size_t num_rows() const noexcept { return rows_.size(); }
  std::uint64_t at(std::size_t distance, std::size_t k) const;
  const std::map<std::size_t, std::uint64_t>& row(std::size_t distance) const {
    return rows_.at(distance);
  }

  std::uint64_t row_sum(std::size_t distance) const;

  friend bool operator==(const Portrait&, const Portrait&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<std::map<std::size_t, std::uint64_t>> rows_;
};

Portrait portrait(const DiffusionNetwork& network, const PortraitOptions& options = {});

/// Probability mass k * B[l][k] / sum over (l, k >= 1), as sorted
/// ((l, k), p) pairs.
std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> portrait_distribution(
    const Portrait& portrait);

/// Jensen-Shannon divergence (base 2) between the pair-weighted portrait
/// distributions. In [0, 1].
double portrait_divergence(const Portrait& a, const Portrait& b);
double portrait_divergence(const DiffusionNetwork& a, const DiffusionNetwork& b,
                           const PortraitOptions& options = {});

/// Sparse triplet CSV "l,k,count" (k = 0 entries included).
void write_portrait(const Portrait& portrait, const std::filesystem::path& path);
Portrait read_portrait(const std::filesystem::path& path);

}  // namespace difnet
