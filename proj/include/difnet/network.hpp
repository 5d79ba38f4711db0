#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace difnet {

using NodeId = std::uint32_t;

enum class Interaction { original, retweet, quote, reply, mention };

enum class Label { mainstream, disinformation, unlabeled };

enum class Bias { left, centre, right, satire, none };

/// Node-count strata. Every network falls into exactly one of the three
/// bounded buckets; `all` selects everything.
enum class SizeBucket { all, d0_100, d100_1000, d1000_inf };

/// How interactions are turned into arcs.
///  - information_flow: retweet/quote/reply give target -> actor,
///    mention gives actor -> mentioned user.
///  - reversed: every arc above points the other way.
enum class EdgeOrientation { information_flow, reversed };

std::string_view to_string(Interaction v);
std::string_view to_string(Label v);
std::string_view to_string(Bias v);
std::string_view to_string(SizeBucket v);
std::string_view to_string(EdgeOrientation v);

// Parsers throw InputError on unknown names.
Interaction parse_interaction(std::string_view s);
Label parse_label(std::string_view s);
Bias parse_bias(std::string_view s);
SizeBucket parse_bucket(std::string_view s);
EdgeOrientation parse_orientation(std::string_view s);

struct InteractionEvent {
  std::string tweet_id;
  std::string acting_user;
  std::optional<std::string> target_user;
  Interaction interaction = Interaction::original;
  std::string url;
  std::int64_t timestamp = 0;
};

/// Throws MalformedEventError when target presence disagrees with the
/// interaction type or a user id is empty.
void validate_event(const InteractionEvent& event);

struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct NetworkInfo {
  std::string id;
  Label label = Label::unlabeled;
  Bias bias = Bias::none;
  std::uint64_t tweet_count = 0;
};

/// Directed, unweighted, simple graph of user interactions for one article.
///
/// Nodes are dense indices [0, num_nodes()) with opaque string names. Arcs
/// are unique and never loops; isolated nodes are kept. Adjacency is held
/// in CSR form for the directed out/in views and for the undirected simple
/// projection. Immutable once built.
class DiffusionNetwork {
 public:
  DiffusionNetwork() = default;

  /// Duplicate arcs are collapsed. Throws InputError on a self-loop, an
  /// out-of-range endpoint, or duplicate/empty node names.
  DiffusionNetwork(std::vector<std::string> node_names, std::vector<Edge> edges,
                   NetworkInfo info = {});

  /// Same as above with nodes named "0", "1", ... "n-1".
  static DiffusionNetwork from_edges(std::size_t num_nodes,
                                     std::vector<Edge> edges,
                                     NetworkInfo info = {});

  std::size_t num_nodes() const noexcept { return names_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  /// Arcs sorted by (source, target).
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeId> out_neighbors(NodeId v) const;
  std::span<const NodeId> in_neighbors(NodeId v) const;
  /// Sorted neighbours in the undirected simple projection.
  std::span<const NodeId> neighbors(NodeId v) const;

  std::size_t out_degree(NodeId v) const { return out_neighbors(v).size(); }
  std::size_t in_degree(NodeId v) const { return in_neighbors(v).size(); }
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  bool has_edge(NodeId source, NodeId target) const;
  bool adjacent(NodeId u, NodeId v) const;

  const std::string& node_name(NodeId v) const { return names_.at(v); }
  const std::vector<std::string>& node_names() const noexcept { return names_; }
  std::optional<NodeId> find_node(std::string_view name) const;

  const NetworkInfo& info() const noexcept { return info_; }
  const std::string& id() const noexcept { return info_.id; }

  DiffusionNetwork with_info(NetworkInfo info) const&;
  DiffusionNetwork with_info(NetworkInfo info) &&;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
  std::vector<std::size_t> und_offsets_;
  std::vector<NodeId> und_adjacent_;
  NetworkInfo info_;
};

struct BuildOptions {
  EdgeOrientation orientation = EdgeOrientation::information_flow;
  /// Network id; the URL is used when empty.
  std::string network_id;
  Label label = Label::unlabeled;
  Bias bias = Bias::none;
};

/// Builds the diffusion network of one article from its interaction events.
///
/// One node per distinct user (acting or targeted), sorted by name so that
/// the result does not depend on event order. One arc per distinct
/// (source, receiver) pair realised by a non-original interaction. An
/// interaction of a user with themself adds the node but no arc.
/// tweet_count is the number of events.
///
/// Throws InputError if an event carries another URL and
/// MalformedEventError for events violating their type invariants.
DiffusionNetwork build_network(std::span<const InteractionEvent> events,
                               std::string_view url,
                               const BuildOptions& options = {});

SizeBucket bucket_of(std::size_t num_nodes);
SizeBucket bucket_of(const DiffusionNetwork& network);

/// True when `num_nodes` lies inside `bucket` (always true for `all`).
bool bucket_contains(SizeBucket bucket, std::size_t num_nodes);

}  // namespace difnet
