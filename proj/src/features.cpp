#include "difnet/features.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "difnet/error.hpp"

namespace difnet {

namespace {

std::size_t count_common(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

void require_nonempty(const DiffusionNetwork& network) {
  if (network.empty()) throw EmptyGraphError();
}

// Undirected eccentricity of `source`, reusing `dist` (entries must be max
// on entry and are restored before returning).
std::size_t bfs_eccentricity(const DiffusionNetwork& network, NodeId source,
                             std::vector<std::size_t>& dist,
                             std::vector<NodeId>& queue) {
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  std::size_t farthest = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId v = queue[head];
    farthest = dist[v];
    for (NodeId w : network.neighbors(v)) {
      if (dist[w] == kUnseen) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  for (NodeId v : queue) dist[v] = kUnseen;
  return farthest;
}

double undirected_local_clustering(const DiffusionNetwork& network, NodeId v) {
  auto nbrs = network.neighbors(v);
  const std::size_t d = nbrs.size();
  if (d < 2) return 0.0;
  // Every link among the neighbours is seen from both of its endpoints.
  std::size_t links = 0;
  for (NodeId u : nbrs) links += count_common(nbrs, network.neighbors(u));
  links /= 2;
  return static_cast<double>(links) / (static_cast<double>(d) * (d - 1) / 2.0);
}

double directed_local_clustering(const DiffusionNetwork& network, NodeId v) {
  auto preds = network.in_neighbors(v);
  auto succs = network.out_neighbors(v);
  std::size_t triangles = 0;
  for (NodeId j : preds) {
    triangles += count_common(preds, network.in_neighbors(j)) +
                 count_common(preds, network.out_neighbors(j)) +
                 count_common(succs, network.in_neighbors(j)) +
                 count_common(succs, network.out_neighbors(j));
  }
  for (NodeId j : succs) {
    triangles += count_common(preds, network.in_neighbors(j)) +
                 count_common(preds, network.out_neighbors(j)) +
                 count_common(succs, network.in_neighbors(j)) +
                 count_common(succs, network.out_neighbors(j));
  }
  if (triangles == 0) return 0.0;
  const double total = static_cast<double>(preds.size() + succs.size());
  const double reciprocal = static_cast<double>(count_common(preds, succs));
  return static_cast<double>(triangles) / (2.0 * (total * (total - 1) - 2.0 * reciprocal));
}

}  // namespace

std::string_view to_string(ClusteringVariant v) {
  return v == ClusteringVariant::directed ? "directed" : "undirected";
}

ClusteringVariant parse_clustering(std::string_view s) {
  if (s == "undirected") return ClusteringVariant::undirected;
  if (s == "directed") return ClusteringVariant::directed;
  throw InputError("unknown clustering variant '" + std::string(s) + "'");
}

std::array<double, FeatureVector::kSize> FeatureVector::to_array() const {
  return {static_cast<double>(scc),  static_cast<double>(lscc),
          static_cast<double>(wcc),  static_cast<double>(lwcc),
          static_cast<double>(dwcc), cc,
          static_cast<double>(kc)};
}

std::vector<std::size_t> Components::sizes() const {
  std::vector<std::size_t> out(count, 0);
  for (std::size_t c : component_of) ++out[c];
  return out;
}

Components strongly_connected_components(const DiffusionNetwork& network) {
  constexpr auto kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = network.num_nodes();
  Components result;
  result.component_of.assign(n, kUnvisited);

  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  // (node, position in its out-neighbour list)
  std::vector<std::pair<NodeId, std::size_t>> call_stack;
  std::size_t next_index = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.emplace_back(root, 0);
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      auto& [v, pos] = call_stack.back();
      auto outs = network.out_neighbors(v);
      if (pos < outs.size()) {
        const NodeId w = outs[pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const NodeId done = v;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const NodeId parent = call_stack.back().first;
        lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          result.component_of[w] = result.count;
        } while (w != done);
        ++result.count;
      }
    }
  }
  return result;
}

Components weakly_connected_components(const DiffusionNetwork& network) {
  constexpr auto kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = network.num_nodes();
  Components result;
  result.component_of.assign(n, kUnvisited);
  std::vector<NodeId> queue;
  for (NodeId root = 0; root < n; ++root) {
    if (result.component_of[root] != kUnvisited) continue;
    queue.assign(1, root);
    result.component_of[root] = result.count;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId w : network.neighbors(queue[head])) {
        if (result.component_of[w] == kUnvisited) {
          result.component_of[w] = result.count;
          queue.push_back(w);
        }
      }
    }
    ++result.count;
  }
  return result;
}

ComponentSummary component_features(const DiffusionNetwork& network) {
  require_nonempty(network);
  const Components strong = strongly_connected_components(network);
  const Components weak = weakly_connected_components(network);
  const auto strong_sizes = strong.sizes();
  const auto weak_sizes = weak.sizes();
  return {strong.count, *std::max_element(strong_sizes.begin(), strong_sizes.end()),
          weak.count, *std::max_element(weak_sizes.begin(), weak_sizes.end())};
}

std::size_t lwcc_diameter(const DiffusionNetwork& network) {
  require_nonempty(network);
  const Components weak = weakly_connected_components(network);
  const auto sizes = weak.sizes();
  const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());

  std::vector<std::size_t> dist(network.num_nodes(),
                                std::numeric_limits<std::size_t>::max());
  std::vector<NodeId> queue;
  std::size_t diameter = 0;
  for (NodeId v = 0; v < network.num_nodes(); ++v) {
    if (sizes[weak.component_of[v]] != largest) continue;
    diameter = std::max(diameter, bfs_eccentricity(network, v, dist, queue));
  }
  return diameter;
}

double average_clustering(const DiffusionNetwork& network, ClusteringVariant variant) {
  require_nonempty(network);
  double total = 0.0;
  for (NodeId v = 0; v < network.num_nodes(); ++v) {
    total += variant == ClusteringVariant::directed
                 ? directed_local_clustering(network, v)
                 : undirected_local_clustering(network, v);
  }
  return total / static_cast<double>(network.num_nodes());
}

std::vector<std::size_t> core_numbers(const DiffusionNetwork& network) {
  const std::size_t n = network.num_nodes();
  std::vector<std::size_t> degree(n);
  std::size_t max_degree = 0;
  for (NodeId v = 0; v < n; ++v) {
    degree[v] = network.degree(v);
    max_degree = std::max(max_degree, degree[v]);
  }

  // Nodes sorted by degree with bucket starts, as in Batagelj & Zaversnik.
  std::vector<std::size_t> bin(max_degree + 1, 0);
  for (std::size_t d : degree) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const std::size_t count = b;
    b = start;
    start += count;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> position(n);
  for (NodeId v = 0; v < n; ++v) {
    position[v] = bin[degree[v]]++;
    order[position[v]] = v;
  }
  for (std::size_t d = max_degree; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const NodeId v = order[i];
    for (NodeId u : network.neighbors(v)) {
      if (degree[u] > degree[v]) {
        const std::size_t du = degree[u];
        const std::size_t pu = position[u];
        const std::size_t pw = bin[du];
        const NodeId w = order[pw];
        if (u != w) {
          std::swap(order[pu], order[pw]);
          position[u] = pw;
          position[w] = pu;
        }
        ++bin[du];
        --degree[u];
      }
    }
  }
  return degree;
}

std::size_t main_kcore(const DiffusionNetwork& network) {
  require_nonempty(network);
  const auto cores = core_numbers(network);
  return *std::max_element(cores.begin(), cores.end());
}

FeatureVector extract_features(const DiffusionNetwork& network,
                               const FeatureOptions& options) {
  const ComponentSummary components = component_features(network);
  FeatureVector f;
  f.scc = components.scc;
  f.lscc = components.lscc;
  f.wcc = components.wcc;
  f.lwcc = components.lwcc;
  f.dwcc = lwcc_diameter(network);
  f.cc = average_clustering(network, options.clustering);
  f.kc = main_kcore(network);
  return f;
}

}  // namespace difnet
