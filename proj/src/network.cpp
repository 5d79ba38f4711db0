#include "difnet/network.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "difnet/error.hpp"

namespace difnet {

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::pair<std::string_view, Enum> (&table)[N],
                std::string_view what) {
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  throw InputError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

constexpr std::pair<std::string_view, Interaction> kInteractions[] = {
    {"original", Interaction::original}, {"retweet", Interaction::retweet},
    {"quote", Interaction::quote},       {"reply", Interaction::reply},
    {"mention", Interaction::mention},
};

constexpr std::pair<std::string_view, Label> kLabels[] = {
    {"mainstream", Label::mainstream},
    {"disinformation", Label::disinformation},
    {"unlabeled", Label::unlabeled},
    {"", Label::unlabeled},
};

constexpr std::pair<std::string_view, Bias> kBiases[] = {
    {"left", Bias::left},     {"centre", Bias::centre}, {"center", Bias::centre},
    {"right", Bias::right},   {"satire", Bias::satire}, {"none", Bias::none},
    {"", Bias::none},
};

constexpr std::pair<std::string_view, SizeBucket> kBuckets[] = {
    {"D_all", SizeBucket::all},
    {"all", SizeBucket::all},
    {"D_0_100", SizeBucket::d0_100},
    {"0_100", SizeBucket::d0_100},
    {"D_100_1000", SizeBucket::d100_1000},
    {"100_1000", SizeBucket::d100_1000},
    {"D_1000_inf", SizeBucket::d1000_inf},
    {"1000_inf", SizeBucket::d1000_inf},
};

constexpr std::pair<std::string_view, EdgeOrientation> kOrientations[] = {
    {"information_flow", EdgeOrientation::information_flow},
    {"flow", EdgeOrientation::information_flow},
    {"reversed", EdgeOrientation::reversed},
    {"reverse", EdgeOrientation::reversed},
};

std::vector<std::size_t> build_csr(std::size_t n, const std::vector<Edge>& edges,
                                   bool by_source, std::vector<NodeId>& adjacency) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const Edge& e : edges) {
    ++offsets[(by_source ? e.source : e.target) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  adjacency.assign(edges.size(), 0);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    const NodeId from = by_source ? e.source : e.target;
    adjacency[cursor[from]++] = by_source ? e.target : e.source;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
  }
  return offsets;
}

}  // namespace

std::string_view to_string(Interaction v) {
  for (const auto& [name, value] : kInteractions)
    if (value == v) return name;
  return "?";
}

std::string_view to_string(Label v) {
  for (const auto& [name, value] : kLabels)
    if (value == v) return name;
  return "?";
}

std::string_view to_string(Bias v) {
  for (const auto& [name, value] : kBiases)
    if (value == v) return name;
  return "?";
}

std::string_view to_string(SizeBucket v) {
  for (const auto& [name, value] : kBuckets)
    if (value == v) return name;
  return "?";
}

std::string_view to_string(EdgeOrientation v) {
  for (const auto& [name, value] : kOrientations)
    if (value == v) return name;
  return "?";
}

Interaction parse_interaction(std::string_view s) {
  return parse_enum(s, kInteractions, "interaction");
}
Label parse_label(std::string_view s) { return parse_enum(s, kLabels, "label"); }
Bias parse_bias(std::string_view s) { return parse_enum(s, kBiases, "bias"); }
SizeBucket parse_bucket(std::string_view s) {
  return parse_enum(s, kBuckets, "size bucket");
}
EdgeOrientation parse_orientation(std::string_view s) {
  return parse_enum(s, kOrientations, "edge orientation");
}

void validate_event(const InteractionEvent& event) {
  if (event.acting_user.empty()) {
    throw MalformedEventError("event " + event.tweet_id + ": empty acting user");
  }
  if (event.interaction == Interaction::original) {
    if (event.target_user) {
      throw MalformedEventError("event " + event.tweet_id +
                                ": original tweet must not have a target user");
    }
    return;
  }
  if (!event.target_user || event.target_user->empty()) {
    throw MalformedEventError("event " + event.tweet_id + ": " +
                              std::string(to_string(event.interaction)) +
                              " requires a target user");
  }
}

DiffusionNetwork::DiffusionNetwork(std::vector<std::string> node_names,
                                   std::vector<Edge> edges, NetworkInfo info)
    : names_(std::move(node_names)), info_(std::move(info)) {
  const std::size_t n = names_.size();
  index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (names_[i].empty()) throw InputError("empty node name");
    if (!index_.emplace(names_[i], static_cast<NodeId>(i)).second) {
      throw InputError("duplicate node name '" + names_[i] + "'");
    }
  }
  for (const Edge& e : edges) {
    if (e.source >= n || e.target >= n) {
      throw InputError("edge endpoint out of range");
    }
    if (e.source == e.target) {
      throw InputError("self-loop on node '" + names_[e.source] + "'");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  out_offsets_ = build_csr(n, edges_, true, out_targets_);
  in_offsets_ = build_csr(n, edges_, false, in_sources_);

  und_offsets_.assign(n + 1, 0);
  und_adjacent_.clear();
  und_adjacent_.reserve(2 * edges_.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto outs = out_neighbors(static_cast<NodeId>(v));
    auto ins = in_neighbors(static_cast<NodeId>(v));
    std::set_union(outs.begin(), outs.end(), ins.begin(), ins.end(),
                   std::back_inserter(und_adjacent_));
    und_offsets_[v + 1] = und_adjacent_.size();
  }
}

DiffusionNetwork DiffusionNetwork::from_edges(std::size_t num_nodes,
                                              std::vector<Edge> edges,
                                              NetworkInfo info) {
  std::vector<std::string> names(num_nodes);
  for (std::size_t i = 0; i < num_nodes; ++i) names[i] = std::to_string(i);
  return DiffusionNetwork(std::move(names), std::move(edges), std::move(info));
}

std::span<const NodeId> DiffusionNetwork::out_neighbors(NodeId v) const {
  return std::span<const NodeId>(out_targets_).subspan(
      out_offsets_.at(v), out_offsets_[v + 1] - out_offsets_[v]);
}

std::span<const NodeId> DiffusionNetwork::in_neighbors(NodeId v) const {
  return std::span<const NodeId>(in_sources_).subspan(
      in_offsets_.at(v), in_offsets_[v + 1] - in_offsets_[v]);
}

std::span<const NodeId> DiffusionNetwork::neighbors(NodeId v) const {
  return std::span<const NodeId>(und_adjacent_).subspan(
      und_offsets_.at(v), und_offsets_[v + 1] - und_offsets_[v]);
}

bool DiffusionNetwork::has_edge(NodeId source, NodeId target) const {
  if (source >= num_nodes() || target >= num_nodes()) return false;
  auto outs = out_neighbors(source);
  return std::binary_search(outs.begin(), outs.end(), target);
}

bool DiffusionNetwork::adjacent(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::optional<NodeId> DiffusionNetwork::find_node(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DiffusionNetwork DiffusionNetwork::with_info(NetworkInfo info) const& {
  DiffusionNetwork copy = *this;
  copy.info_ = std::move(info);
  return copy;
}

DiffusionNetwork DiffusionNetwork::with_info(NetworkInfo info) && {
  info_ = std::move(info);
  return std::move(*this);
}

DiffusionNetwork build_network(std::span<const InteractionEvent> events,
                               std::string_view url,
                               const BuildOptions& options) {
  std::set<std::string> users;
  std::set<std::pair<std::string, std::string>> arcs;
  for (const InteractionEvent& event : events) {
    if (event.url != url) {
      throw InputError("event " + event.tweet_id + " belongs to '" + event.url +
                       "', expected '" + std::string(url) + "'");
    }
    validate_event(event);
    users.insert(event.acting_user);
    if (event.interaction == Interaction::original) continue;

    const std::string& actor = event.acting_user;
    const std::string& target = *event.target_user;
    users.insert(target);
    if (actor == target) continue;

    bool actor_receives = event.interaction != Interaction::mention;
    if (options.orientation == EdgeOrientation::reversed) {
      actor_receives = !actor_receives;
    }
    if (actor_receives) {
      arcs.emplace(target, actor);
    } else {
      arcs.emplace(actor, target);
    }
  }

  std::vector<std::string> names(users.begin(), users.end());
  std::map<std::string_view, NodeId> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    index.emplace(names[i], static_cast<NodeId>(i));
  }
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const auto& [from, to] : arcs) {
    edges.push_back({index.at(from), index.at(to)});
  }

  NetworkInfo info;
  info.id = options.network_id.empty() ? std::string(url) : options.network_id;
  info.label = options.label;
  info.bias = options.bias;
  info.tweet_count = events.size();
  return DiffusionNetwork(std::move(names), std::move(edges), std::move(info));
}

SizeBucket bucket_of(std::size_t num_nodes) {
  if (num_nodes < 100) return SizeBucket::d0_100;
  if (num_nodes < 1000) return SizeBucket::d100_1000;
  return SizeBucket::d1000_inf;
}

SizeBucket bucket_of(const DiffusionNetwork& network) {
  return bucket_of(network.num_nodes());
}

bool bucket_contains(SizeBucket bucket, std::size_t num_nodes) {
  return bucket == SizeBucket::all || bucket_of(num_nodes) == bucket;
}

}  // namespace difnet
