#include "difnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "difnet/error.hpp"
#include "difnet/parallel.hpp"

namespace difnet {

namespace {

constexpr std::int64_t kBaseTimestamp = 1551052800;  // 2019-02-25

class EventWriter {
 public:
  EventWriter(std::string_view url, std::uint64_t seed) : url_(url), seed_(seed) {}

  void emit(Interaction kind, std::size_t actor, std::optional<std::size_t> target) {
    InteractionEvent e;
    e.tweet_id = std::to_string(seed_) + "-" + std::to_string(events_.size());
    e.acting_user = user_name(actor);
    if (target) e.target_user = user_name(*target);
    e.interaction = kind;
    e.url = url_;
    e.timestamp = kBaseTimestamp + static_cast<std::int64_t>(events_.size()) * 60;
    events_.push_back(std::move(e));
  }

  std::vector<InteractionEvent> take() { return std::move(events_); }

 private:
  static std::string user_name(std::size_t user) { return "u" + std::to_string(user); }

  std::string url_;
  std::uint64_t seed_;
  std::vector<InteractionEvent> events_;
};

// Largest-remainder rescaling of `sizes` to sum exactly to `total`.
void rescale(std::vector<std::size_t>& sizes, std::size_t total) {
  const std::size_t drawn = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (sizes.empty()) return;
  if (drawn == 0) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      sizes[i] = total / sizes.size() + (i < total % sizes.size() ? 1 : 0);
    }
    return;
  }
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double quota =
        static_cast<double>(sizes[i]) * static_cast<double>(total) / static_cast<double>(drawn);
    sizes[i] = static_cast<std::size_t>(std::floor(quota));
    assigned += sizes[i];
    remainders.emplace_back(-(quota - std::floor(quota)), i);
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) {
    ++sizes[remainders[i % remainders.size()].second];
  }
}

double jitter(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

}  // namespace

std::string_view to_string(ClassProfile profile) {
  return profile == ClassProfile::broadcast_like ? "broadcast_like" : "clustered_like";
}

ClassProfile parse_profile(std::string_view s) {
  if (s == "broadcast_like" || s == "broadcast") return ClassProfile::broadcast_like;
  if (s == "clustered_like" || s == "clustered") return ClassProfile::clustered_like;
  throw InputError("unknown class profile '" + std::string(s) + "'");
}

Label label_of(ClassProfile profile) {
  return profile == ClassProfile::broadcast_like ? Label::mainstream : Label::disinformation;
}

void CascadeRecipe::validate() const {
  for (double p : {reply_prob, mention_prob, quote_prob, depth_bias, reciprocity_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("recipe probability outside [0, 1]");
  }
  if (n_cascades < 1) throw InputError("recipe needs at least one cascade");
  if (n_nodes != 0 && n_nodes < n_cascades) {
    throw InputError("recipe n_nodes is smaller than n_cascades");
  }
  if (audience_max < 1) throw InputError("recipe audience_max must be positive");
  if (!(audience_exponent > 1.0)) throw InputError("recipe audience exponent must exceed 1");
}

std::size_t draw_power_law(Rng& rng, double exponent, std::size_t lo, std::size_t hi) {
  if (lo < 1 || hi < lo) throw InputError("invalid power-law range");
  const double base = static_cast<double>(lo) - 0.5;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double u = rng.uniform01();
    const double x = std::floor(base * std::pow(1.0 - u, -1.0 / (exponent - 1.0)) + 0.5);
    if (x <= static_cast<double>(hi)) return std::max(lo, static_cast<std::size_t>(x));
  }
  return lo;
}

std::vector<InteractionEvent> generate_events(const CascadeRecipe& recipe,
                                              ClassProfile profile, std::string_view url) {
  recipe.validate();
  Rng rng(recipe.seed);
  const bool clustered = profile == ClassProfile::clustered_like;

  std::vector<std::size_t> audiences(recipe.n_cascades);
  for (auto& a : audiences) {
    a = draw_power_law(rng, recipe.audience_exponent, 1, recipe.audience_max) - 1;
  }
  if (recipe.n_nodes != 0) rescale(audiences, recipe.n_nodes - recipe.n_cascades);

  EventWriter writer(url, recipe.seed);
  std::size_t next_user = 0;
  // Undirected contacts of every user, for triadic closure.
  std::vector<std::vector<std::size_t>> contacts;
  auto new_user = [&] {
    contacts.emplace_back();
    return next_user++;
  };
  auto link = [&](std::size_t a, std::size_t b) {
    contacts[a].push_back(b);
    contacts[b].push_back(a);
  };
  auto pick = [&](const std::vector<std::size_t>& pool) {
    return pool[rng.uniform_index(pool.size())];
  };

  for (std::size_t c = 0; c < recipe.n_cascades; ++c) {
    const std::size_t root = new_user();
    writer.emit(Interaction::original, root, std::nullopt);
    std::vector<std::size_t> participants = {root};

    for (std::size_t i = 0; i < audiences[c]; ++i) {
      const std::size_t user = new_user();
      if (rng.bernoulli(recipe.mention_prob)) {
        writer.emit(Interaction::mention, root, user);
        link(root, user);
        participants.push_back(user);
        continue;
      }

      std::size_t parent = root;
      if (participants.size() > 1 && rng.bernoulli(recipe.depth_bias)) {
        const std::size_t earlier = participants.size() - 1;
        const std::size_t window = clustered ? std::min<std::size_t>(earlier, 4) : earlier;
        parent = participants[participants.size() - 1 - rng.uniform_index(window)];
      }
      writer.emit(rng.bernoulli(recipe.quote_prob) ? Interaction::quote : Interaction::retweet,
                  user, parent);
      link(parent, user);
      participants.push_back(user);

      if (rng.bernoulli(recipe.reciprocity_prob)) {
        writer.emit(Interaction::reply, parent, user);
      }

      if (rng.bernoulli(recipe.reply_prob)) {
        std::vector<std::size_t> pool;
        if (clustered && rng.bernoulli(0.75)) {
          for (std::size_t w : contacts[parent]) {
            if (w != user) pool.push_back(w);
          }
        } else if (clustered) {
          for (std::size_t w = 0; w < user; ++w) {
            if (w != parent) pool.push_back(w);
          }
        } else {
          for (std::size_t w : participants) {
            if (w != user && w != parent) pool.push_back(w);
          }
        }
        if (!pool.empty()) {
          const std::size_t target = pick(pool);
          writer.emit(Interaction::reply, user, target);
          link(user, target);
        }
      }
    }
  }
  return writer.take();
}

DiffusionNetwork generate(const CascadeRecipe& recipe, ClassProfile profile,
                          std::string network_id) {
  if (network_id.empty()) {
    network_id = "synthetic-" + std::string(to_string(profile)) + ":" +
                 std::to_string(recipe.seed);
  }
  const std::string url = "https://synthetic.example/" + network_id;
  const auto events = generate_events(recipe, profile, url);
  BuildOptions options;
  options.network_id = network_id;
  options.label = label_of(profile);
  options.bias = Bias::none;
  return build_network(events, url, options);
}

std::pair<std::size_t, std::size_t> benchmark_size_range(SizeBucket bucket) {
  switch (bucket) {
    case SizeBucket::d0_100: return {20, 99};
    case SizeBucket::d100_1000: return {100, 999};
    case SizeBucket::d1000_inf: return {1000, 5000};
    case SizeBucket::all: return {20, 5000};
  }
  return {20, 5000};
}

CascadeRecipe preset_recipe(ClassProfile profile, SizeBucket bucket, std::uint64_t seed) {
  Rng rng(seed);
  const auto [lo, hi] = benchmark_size_range(bucket);
  CascadeRecipe r;
  r.seed = rng.next();
  r.n_nodes = draw_power_law(rng, 2.5, lo, hi);
  r.audience_exponent = 2.5;
  r.audience_max = r.n_nodes;
  r.quote_prob = jitter(rng, 0.05, 0.15);
  r.mention_prob = jitter(rng, 0.02, 0.08);
  if (profile == ClassProfile::broadcast_like) {
    const double cascade_share = jitter(rng, 0.15, 0.35);
    r.n_cascades = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::lround(cascade_share * static_cast<double>(r.n_nodes))));
    r.depth_bias = jitter(rng, 0.0, 0.1);
    // At most about one reply per network, whatever its size.
    r.reply_prob = jitter(rng, 0.0, 1.0) / static_cast<double>(r.n_nodes);
    r.reciprocity_prob = jitter(rng, 0.0, 0.02);
  } else {
    const double cascade_share = jitter(rng, 0.02, 0.08);
    r.n_cascades = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(cascade_share * static_cast<double>(r.n_nodes))));
    r.depth_bias = jitter(rng, 0.4, 0.8);
    r.reply_prob = jitter(rng, 0.2, 0.45);
    r.reciprocity_prob = jitter(rng, 0.03, 0.12);
  }
  return r;
}

std::string benchmark_id(ClassProfile profile, SizeBucket bucket, std::size_t index) {
  char digits[16];
  std::snprintf(digits, sizeof digits, "%04zu", index);
  return std::string(to_string(profile)) + ":" + std::string(to_string(bucket)) + "-" + digits;
}

std::vector<DiffusionNetwork> generate_benchmark(ClassProfile profile, SizeBucket bucket,
                                                 std::size_t count, std::uint64_t seed,
                                                 unsigned workers) {
  const std::uint64_t stream_base =
      (static_cast<std::uint64_t>(profile) << 40) | (static_cast<std::uint64_t>(bucket) << 32);
  std::vector<std::optional<DiffusionNetwork>> slots(count);
  parallel_for(
      count,
      [&](std::size_t i) {
        const auto recipe = preset_recipe(profile, bucket, derive_seed(seed, stream_base | i));
        slots[i] = generate(recipe, profile, benchmark_id(profile, bucket, i));
      },
      workers == 0 ? default_workers() : workers);
  std::vector<DiffusionNetwork> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace difnet
