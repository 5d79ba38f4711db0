#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "difnet/network.hpp"

namespace difnet {

enum class ClusteringVariant {
  /// Local clustering on the undirected simple projection.
  undirected,
  /// Fagiolo's directed clustering (all directed triangles through a node).
  directed,
};

std::string_view to_string(ClusteringVariant v);
ClusteringVariant parse_clustering(std::string_view s);

struct FeatureOptions {
  ClusteringVariant clustering = ClusteringVariant::undirected;
};

/// The seven global properties of a diffusion network.
struct FeatureVector {
  static constexpr std::size_t kSize = 7;
  static constexpr std::array<std::string_view, kSize> kNames = {
      "scc", "lscc", "wcc", "lwcc", "dwcc", "cc", "kc"};

  std::size_t scc = 0;   ///< strongly connected components
  std::size_t lscc = 0;  ///< size of the largest SCC
  std::size_t wcc = 0;   ///< weakly connected components
  std::size_t lwcc = 0;  ///< size of the largest WCC
  std::size_t dwcc = 0;  ///< diameter of the largest WCC
  double cc = 0.0;       ///< average clustering coefficient
  std::size_t kc = 0;    ///< main k-core number

  /// Fixed order (scc, lscc, wcc, lwcc, dwcc, cc, kc).
  std::array<double, kSize> to_array() const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct ComponentSummary {
  std::size_t scc = 0;
  std::size_t lscc = 0;
  std::size_t wcc = 0;
  std::size_t lwcc = 0;
};

/// Per-node component ids and component count.
struct Components {
  std::vector<std::size_t> component_of;
  std::size_t count = 0;

  std::vector<std::size_t> sizes() const;
};

/// Tarjan's algorithm, iterative.
Components strongly_connected_components(const DiffusionNetwork& network);
Components weakly_connected_components(const DiffusionNetwork& network);

/// Throws EmptyGraphError on a network without nodes.
ComponentSummary component_features(const DiffusionNetwork& network);

/// Diameter of the largest weakly connected component measured on its
/// undirected view. When several components share the largest size the
/// greatest of their diameters is reported, which keeps the value
/// independent of node labelling.
std::size_t lwcc_diameter(const DiffusionNetwork& network);

double average_clustering(const DiffusionNetwork& network,
                          ClusteringVariant variant = ClusteringVariant::undirected);

/// Core number of every node in the undirected simple projection
/// (Batagelj-Zaversnik bucket peeling).
std::vector<std::size_t> core_numbers(const DiffusionNetwork& network);

std::size_t main_kcore(const DiffusionNetwork& network);

FeatureVector extract_features(const DiffusionNetwork& network,
                               const FeatureOptions& options = {});

}  // namespace difnet
