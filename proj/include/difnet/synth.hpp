#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "difnet/network.hpp"
#include "difnet/random.hpp"

namespace difnet {

/// Structural behaviour of a synthetic class.
///  - broadcast_like: parents and reply targets are drawn uniformly from
///    the participants of the same cascade, so cascades stay shallow
///    stars and never merge.
///  - clustered_like: deep attachment prefers recent participants (long
///    chains), and replies close triangles around the parent or reach
///    into other cascades, merging them.
enum class ClassProfile { broadcast_like, clustered_like };

std::string_view to_string(ClassProfile profile);
ClassProfile parse_profile(std::string_view s);

/// Label a generated network carries: broadcast -> mainstream,
/// clustered -> disinformation.
Label label_of(ClassProfile profile);

/// Parameters of one synthetic diffusion network.
///
/// Each cascade is a root post followed by an audience of new users. An
/// audience member is either mentioned by the root (with mention_prob) or
/// reshares: it attaches to the root, or with depth_bias to an earlier
/// participant, as a quote (quote_prob) or a retweet. The parent then
/// replies back with reciprocity_prob, and the member replies to another
/// participant with reply_prob.
struct CascadeRecipe {
  std::size_t n_cascades = 10;
  /// Exact user count when non-zero (audiences are rescaled to fit);
  /// must be at least n_cascades.
  std::size_t n_nodes = 0;
  /// Audience sizes are X - 1 with X discrete power-law on [1, audience_max].
  double audience_exponent = 2.5;
  std::size_t audience_max = 1000;
  double reply_prob = 0.0;
  double mention_prob = 0.0;
  double quote_prob = 0.0;
  double depth_bias = 0.0;
  double reciprocity_prob = 0.0;
  std::uint64_t seed = 0;

  /// Throws InputError on probabilities outside [0, 1] or bad counts.
  void validate() const;
};

/// Approximate discrete power-law draw on [lo, hi] (rejection above hi).
std::size_t draw_power_law(Rng& rng, double exponent, std::size_t lo, std::size_t hi);

/// The interaction events of one synthetic article at `url`. Deterministic
/// given the recipe (including its seed) and profile.
std::vector<InteractionEvent> generate_events(const CascadeRecipe& recipe,
                                              ClassProfile profile, std::string_view url);

/// generate_events followed by build_network. The id defaults to
/// "synthetic-<profile>:<seed>"; the label follows label_of(profile).
DiffusionNetwork generate(const CascadeRecipe& recipe, ClassProfile profile,
                          std::string network_id = {});

/// Node-count range used when drawing benchmark sizes for a bucket.
std::pair<std::size_t, std::size_t> benchmark_size_range(SizeBucket bucket);

/// Benchmark recipe for one network: a power-law (exponent 2.5) node count
/// truncated to the bucket and profile-specific parameters jittered per
/// network. Deterministic in `seed`.
CascadeRecipe preset_recipe(ClassProfile profile, SizeBucket bucket, std::uint64_t seed);

/// Id of the index-th benchmark network: "<profile>:<bucket>-NNNN".
std::string benchmark_id(ClassProfile profile, SizeBucket bucket, std::size_t index);

/// `count` preset networks of one profile and bucket, generated in
/// parallel. Network i uses preset_recipe(profile, bucket, s_i) where s_i
/// is derived from (seed, profile, bucket, i), so the ensemble does not
/// depend on the worker count.
std::vector<DiffusionNetwork> generate_benchmark(ClassProfile profile, SizeBucket bucket,
                                                 std::size_t count, std::uint64_t seed,
                                                 unsigned workers = 0);

}  // namespace difnet
