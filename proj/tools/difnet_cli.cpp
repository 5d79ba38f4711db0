#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "difnet/classify.hpp"
#include "difnet/dataset.hpp"
#include "difnet/error.hpp"
#include "difnet/features.hpp"
#include "difnet/graphlets.hpp"
#include "difnet/io.hpp"
#include "difnet/network.hpp"
#include "difnet/parallel.hpp"
#include "difnet/portrait.hpp"
#include "difnet/report.hpp"
#include "difnet/synth.hpp"

namespace fs = std::filesystem;
using namespace difnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

// Networks with at least this many nodes are left out of DGCD-13 matrices
// unless --include-large is given.
constexpr std::size_t kGraphletNodeLimit = 1000;

template <typename Parse>
CLI::Validator enum_validator(Parse parse, std::string name) {
  return CLI::Validator(
      [parse](std::string& value) -> std::string {
        try {
          parse(value);
          return {};
        } catch (const std::exception& e) {
          return e.what();
        }
      },
      std::move(name));
}

std::string sanitize(std::string_view id) {
  std::string out(id);
  for (auto& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '.' && c != '-' && c != '_') c = '_';
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string url_host(std::string_view url) {
  if (const auto scheme = url.find("://"); scheme != std::string_view::npos) {
    url.remove_prefix(scheme + 3);
  }
  url = url.substr(0, url.find_first_of("/?#"));
  if (const auto at = url.rfind('@'); at != std::string_view::npos) url.remove_prefix(at + 1);
  url = url.substr(0, url.find(':'));
  std::string host(url);
  std::transform(host.begin(), host.end(), host.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (host.starts_with("www.")) host.erase(0, 4);
  return host.empty() ? "unknown" : host;
}

// Network id of a URL: "<host>:<fnv1a(url) in hex>".
std::string network_id_for(std::string_view url) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(url)));
  return url_host(url) + ":" + hex;
}

// Rewrites the manifest with `fresh` replacing rows of the same id.
void merge_manifest(const fs::path& path, const std::vector<ManifestEntry>& fresh) {
  std::map<std::string, ManifestEntry> rows;
  if (fs::exists(path)) {
    for (auto& e : read_manifest(path)) rows[e.network_id] = std::move(e);
  }
  for (const auto& e : fresh) rows[e.network_id] = e;
  std::vector<ManifestEntry> merged;
  merged.reserve(rows.size());
  for (auto& [id, e] : rows) merged.push_back(std::move(e));
  const fs::path tmp = path.string() + ".tmp";
  fs::remove(tmp);
  append_manifest(tmp, merged);
  fs::rename(tmp, path);
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  auto out = open_output(path);
  out << text;
}

struct FilterArgs {
  std::uint64_t min_tweets = kDefaultMinTweets;
  std::string bias;
  std::string mainstream_bias;
  std::vector<std::string> exclude_sources;

  void add_to(CLI::App& app) {
    app.add_option("--min-tweets", min_tweets, "Drop networks with fewer tweets")
        ->capture_default_str();
    app.add_option("--bias", bias, "Keep only networks of this bias")
        ->check(enum_validator(parse_bias, "BIAS"));
    app.add_option("--mainstream-bias", mainstream_bias,
                   "Keep mainstream networks of this bias and all disinformation networks")
        ->check(enum_validator(parse_bias, "BIAS"));
    app.add_option("--exclude-source", exclude_sources,
                   "Drop networks whose id starts with '<source>:'");
  }

  DatasetFilter filter() const {
    DatasetFilter f;
    f.min_tweets = min_tweets;
    if (!bias.empty()) f.bias = parse_bias(bias);
    if (!mainstream_bias.empty()) f.mainstream_bias = parse_bias(mainstream_bias);
    f.exclude_sources = exclude_sources;
    return f;
  }
};

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string events;
  std::string out;
  std::string edge_direction = "information_flow";
  std::uint64_t min_tweets = kDefaultMinTweets;
  std::string label = "unlabeled";
  std::string bias = "none";
};

int cmd_build(const BuildArgs& args) {
  const auto read = read_events(fs::path(args.events));
  for (const auto& d : read.diagnostics) warn(d);
  if (read.events.empty()) {
    if (read.malformed_lines > 0) {
      throw InputError("all " + std::to_string(read.malformed_lines) + " line(s) of '" +
                       args.events + "' are malformed");
    }
    throw InputError("no events in '" + args.events + "'");
  }

  std::map<std::string, std::vector<InteractionEvent>> by_url;
  for (const auto& e : read.events) by_url[e.url].push_back(e);
  std::vector<std::pair<std::string, std::vector<InteractionEvent>>> groups(
      std::make_move_iterator(by_url.begin()), std::make_move_iterator(by_url.end()));

  const fs::path out_dir(args.out);
  fs::create_directories(out_dir);
  BuildOptions options;
  options.orientation = parse_orientation(args.edge_direction);
  options.label = parse_label(args.label);
  options.bias = parse_bias(args.bias);

  struct Built {
    ManifestEntry entry;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::string error;
  };
  std::vector<Built> built(groups.size());
  parallel_for(groups.size(), [&](std::size_t i) {
    const auto& [url, events] = groups[i];
    auto& b = built[i];
    b.entry.network_id = network_id_for(url);
    try {
      BuildOptions opts = options;
      opts.network_id = b.entry.network_id;
      const auto net = build_network(events, url, opts);
      const std::string stem = sanitize(b.entry.network_id);
      save_network(net, out_dir / (stem + ".tsv"), out_dir / (stem + ".nodes"));
      b.entry.path = stem + ".tsv";
      b.entry.label = opts.label;
      b.entry.bias = opts.bias;
      b.entry.tweet_count = net.info().tweet_count;
      b.nodes = net.num_nodes();
      b.edges = net.num_edges();
    } catch (const std::exception& e) {
      b.error = e.what();
    }
  });

  std::vector<ManifestEntry> rows;
  std::size_t nodes = 0, edges = 0, flagged = 0, failed = 0;
  for (const auto& b : built) {
    if (!b.error.empty()) {
      warn("network '" + b.entry.network_id + "' skipped: " + b.error);
      ++failed;
      continue;
    }
    if (b.entry.tweet_count < args.min_tweets) {
      warn("network '" + b.entry.network_id + "' has " + std::to_string(b.entry.tweet_count) +
           " tweets, below min_tweets " + std::to_string(args.min_tweets));
      ++flagged;
    }
    nodes += b.nodes;
    edges += b.edges;
    rows.push_back(b.entry);
  }
  merge_manifest(out_dir / "manifest.csv", rows);

  std::cout << "built " << rows.size() << " networks (" << nodes << " nodes, " << edges
            << " edges) from " << read.events.size() << " events; " << read.malformed_lines
            << " malformed line(s) skipped; " << flagged << " below min_tweets; " << failed
            << " failed\n";
  return read.malformed_lines > 0 || failed > 0 ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------- features

struct FeaturesArgs {
  std::string manifest;
  std::string out = "-";
  std::string clustering = "undirected";
  FilterArgs filter;
};

int cmd_features(const FeaturesArgs& args) {
  const auto manifest = CorpusManifest::read(args.manifest, args.filter.filter());
  const auto loaded = load_corpus(manifest);
  FeatureOptions options;
  options.clustering = parse_clustering(args.clustering);

  std::vector<std::optional<Sample>> samples(loaded.size());
  std::vector<std::string> errors(loaded.size());
  parallel_for(loaded.size(), [&](std::size_t i) {
    if (!loaded[i].network) {
      errors[i] = loaded[i].error;
      return;
    }
    try {
      samples[i] = make_sample(*loaded[i].network, options);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<Sample> rows;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    if (samples[i]) {
      rows.push_back(std::move(*samples[i]));
    } else {
      warn("network '" + loaded[i].entry.network_id + "' skipped: " + errors[i]);
      ++skipped;
    }
  }
  std::ostringstream text;
  write_feature_table(text, rows);
  write_text(args.out, text.str());
  std::cerr << "features: " << rows.size() << " row(s), " << skipped << " skipped\n";
  return skipped > 0 ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------ distances

struct DistancesArgs {
  std::string manifest;
  std::string out;
  std::string metric;
  std::string bucket = "all";
  bool include_large = false;
  std::string portrait_direction = "directed";
  std::string cache_dir;
  FilterArgs filter;
};

int cmd_distances(const DistancesArgs& args) {
  const bool graphlets = args.metric == "dgcd13";
  const SizeBucket bucket = parse_bucket(args.bucket);
  PortraitOptions portrait_options;
  portrait_options.directed = args.portrait_direction == "directed";

  const auto manifest = CorpusManifest::read(args.manifest, args.filter.filter());
  auto loaded = load_corpus(manifest);

  std::size_t skipped = 0;
  std::vector<std::pair<std::string, std::size_t>> excluded;
  std::vector<const DiffusionNetwork*> nets;
  for (const auto& l : loaded) {
    if (!l.network) {
      warn("network '" + l.entry.network_id + "' skipped: " + l.error);
      ++skipped;
      continue;
    }
    if (!bucket_contains(bucket, l.network->num_nodes())) continue;
    if (graphlets && !args.include_large && l.network->num_nodes() >= kGraphletNodeLimit) {
      excluded.emplace_back(l.entry.network_id, l.network->num_nodes());
      continue;
    }
    nets.push_back(&*l.network);
  }

  if (!excluded.empty()) {
    std::cerr << "excluded " << excluded.size() << " network(s) with >= "
              << kGraphletNodeLimit << " nodes from dgcd13 (use --include-large):\n";
    auto report = open_output(args.out + ".excluded.csv");
    report << "network_id,num_nodes\n";
    for (const auto& [id, n] : excluded) {
      std::cerr << "  " << id << " (" << n << " nodes)\n";
      report << csv::escape(id) << ',' << n << '\n';
    }
  }

  const fs::path cache(args.cache_dir);
  if (!args.cache_dir.empty()) fs::create_directories(cache);
  const std::string suffix =
      graphlets ? ".dgcd13.csv" : ".portrait-" + args.portrait_direction + ".csv";

  std::vector<std::optional<CorrelationMatrix13>> correlations(nets.size());
  std::vector<std::optional<Portrait>> portraits(nets.size());
  std::vector<std::string> errors(nets.size());
  parallel_for(nets.size(), [&](std::size_t i) {
    const auto& net = *nets[i];
    const fs::path cached = args.cache_dir.empty() ? fs::path{} : cache / (sanitize(net.id()) + suffix);
    try {
      if (graphlets) {
        if (!cached.empty() && fs::exists(cached)) {
          correlations[i] = read_correlation_matrix(cached);
        } else {
          correlations[i] = correlation_matrix(count_orbits(net));
          if (!cached.empty()) write_correlation_matrix(*correlations[i], cached);
        }
      } else {
        if (!cached.empty() && fs::exists(cached)) {
          portraits[i] = read_portrait(cached);
        } else {
          portraits[i] = portrait(net, portrait_options);
          if (!cached.empty()) write_portrait(*portraits[i], cached);
        }
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<std::size_t> ok;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    if (!errors[i].empty()) {
      warn("network '" + nets[i]->id() + "' skipped: " + errors[i]);
      ++skipped;
      continue;
    }
    ok.push_back(i);
    ids.push_back(nets[i]->id());
  }
  if (ids.empty()) throw InputError("no networks left to compare");

  DistanceMatrix matrix(ids);
  parallel_for(ok.size(), [&](std::size_t a) {
    for (std::size_t b = a + 1; b < ok.size(); ++b) {
      const std::size_t i = ok[a], j = ok[b];
      matrix.set(a, b,
                 graphlets ? dgcd13(*correlations[i], *correlations[j])
                           : portrait_divergence(*portraits[i], *portraits[j]));
    }
  });
  matrix.validate();
  write_distance_matrix(args.out, matrix);
  std::cerr << "distances: " << args.metric << " matrix of " << ids.size() << " network(s), "
            << excluded.size() << " excluded, " << skipped << " skipped\n";
  return skipped > 0 ? kExitPartial : kExitOk;
}

// ------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string features;
  std::string distances;
  std::string out = "-";
  std::string roc_out;
  std::string bucket = "all";
  std::string classifier = "lr";
  bool shuffle_labels = false;
  EvaluationConfig config;
};

int cmd_classify(ClassifyArgs args) {
  args.config.classifier = parse_classifier(args.classifier);
  const SizeBucket bucket = parse_bucket(args.bucket);
  if (args.config.classifier == ClassifierKind::knn_distance && args.distances.empty()) {
    throw InputError("classifier knn-distance requires --distances");
  }
  std::optional<DistanceMatrix> matrix;
  if (!args.distances.empty()) matrix = read_distance_matrix(args.distances);
  auto dataset = dataset_from_table(read_feature_table(args.features), std::move(matrix), bucket);
  if (args.shuffle_labels) dataset = permute_labels(dataset, args.config.seed);

  const auto report = evaluate(dataset, args.config, bucket);
  auto json = to_json(report);
  json["inputs"] = {{"features", args.features},
                    {"distances", args.distances},
                    {"shuffled_labels", args.shuffle_labels}};
  write_text(args.out, json.dump(2) + "\n");
  if (!args.roc_out.empty()) {
    auto roc = open_output(args.roc_out);
    write_roc_csv(roc, report);
  }
  std::fprintf(stderr, "classify: %s on %s, %zu samples (%zu positive), AUC %.4f +/- %.4f\n",
               args.classifier.c_str(), std::string(to_string(bucket)).c_str(), report.samples,
               report.positives, report.auc.mean, report.auc.stddev);
  return kExitOk;
}

// --------------------------------------------------------------- report

struct ReportArgs {
  std::string features;
  std::string out = "-";
  std::string box_csv;
  std::string histogram_csv;
  std::string bucket = "all";
  double alpha = 0.05;
  std::vector<std::string> classifications;
};

int cmd_report(const ReportArgs& args) {
  const SizeBucket bucket = parse_bucket(args.bucket);
  const auto full = dataset_from_table(read_feature_table(args.features));
  const auto dataset = full.restrict_to(bucket);
  const auto comparisons = compare_features(dataset, args.alpha);
  const auto histogram = bucket_histogram(full);

  nlohmann::json json;
  json["bucket"] = std::string(to_string(bucket));
  json["alpha"] = args.alpha;
  json["samples"] = dataset.size();
  json["features"] = to_json(comparisons);
  json["bucket_histogram"] = to_json(histogram);
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& path : args.classifications) {
    const auto run = nlohmann::json::parse(read_file(path));
    runs.push_back({{"source", path},
                    {"bucket", run.at("bucket")},
                    {"classifier", run.at("config").at("classifier")},
                    {"samples", run.at("samples")},
                    {"auc_mean", run.at("auc").at("mean")},
                    {"auc_stddev", run.at("auc").at("stddev")}});
  }
  if (!runs.empty()) json["classification"] = runs;
  write_text(args.out, json.dump(2) + "\n");

  if (!args.box_csv.empty()) {
    auto out = open_output(args.box_csv);
    write_box_csv(out, comparisons);
  }
  if (!args.histogram_csv.empty()) {
    auto out = open_output(args.histogram_csv);
    out << "bucket,count\n";
    for (const auto& [b, count] : histogram) out << to_string(b) << ',' << count << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------- generate

struct GenerateArgs {
  std::string out;
  std::string profile = "both";
  std::string bucket = "D_0_100";
  std::size_t count = 10;
  std::uint64_t seed = 0;
};

int cmd_generate(const GenerateArgs& args) {
  const SizeBucket bucket = parse_bucket(args.bucket);
  std::vector<ClassProfile> profiles;
  if (args.profile == "both") {
    profiles = {ClassProfile::broadcast_like, ClassProfile::clustered_like};
  } else {
    profiles = {parse_profile(args.profile)};
  }
  const fs::path out_dir(args.out);
  fs::create_directories(out_dir);

  std::vector<ManifestEntry> rows;
  std::size_t nodes = 0, edges = 0, few_tweets = 0;
  for (const auto profile : profiles) {
    const auto nets = generate_benchmark(profile, bucket, args.count, args.seed);
    for (const auto& net : nets) {
      const std::string stem = sanitize(net.id());
      save_network(net, out_dir / (stem + ".tsv"), out_dir / (stem + ".nodes"));
      rows.push_back({net.id(), stem + ".tsv", net.info().label, net.info().bias,
                      net.info().tweet_count});
      nodes += net.num_nodes();
      edges += net.num_edges();
      if (net.info().tweet_count < kDefaultMinTweets) ++few_tweets;
    }
  }
  merge_manifest(out_dir / "manifest.csv", rows);
  std::cout << "generated " << rows.size() << " networks (" << nodes << " nodes, " << edges
            << " edges) in " << out_dir.string() << "\n";
  if (few_tweets > 0) {
    std::cout << few_tweets << " network(s) have fewer than " << kDefaultMinTweets
              << " tweets; pass --min-tweets 0 to keep them downstream\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diffusion network feature extraction, distances and classification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "difnet 0.1.0");

  const auto nonneg = CLI::NonNegativeNumber;
  const auto positive = CLI::PositiveNumber;
  const CLI::Validator open_unit_interval(
      [](std::string& s) -> std::string {
        double v = 0.0;
        if (!CLI::detail::lexical_cast(s, v) || !(v > 0.0 && v < 1.0)) {
          return "value must lie strictly between 0 and 1";
        }
        return {};
      },
      "(0,1)");
  const auto bucket_check = enum_validator(parse_bucket, "BUCKET");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build one network per URL from JSONL events");
  build_cmd->add_option("--events", build.events, "JSON-lines event file")
      ->required()
      ->check(CLI::ExistingFile);
  build_cmd->add_option("--out", build.out, "Output directory")->required();
  build_cmd->add_option("--edge-direction", build.edge_direction, "Arc orientation")
      ->check(CLI::IsMember({"information_flow", "reversed"}))
      ->capture_default_str();
  build_cmd->add_option("--min-tweets", build.min_tweets, "Flag networks with fewer tweets")
      ->capture_default_str();
  build_cmd->add_option("--label", build.label, "Label assigned to every network")
      ->check(enum_validator(parse_label, "LABEL"))
      ->capture_default_str();
  build_cmd->add_option("--bias", build.bias, "Bias assigned to every network")
      ->check(enum_validator(parse_bias, "BIAS"))
      ->capture_default_str();

  FeaturesArgs features;
  auto* features_cmd = app.add_subcommand("features", "Compute the feature table");
  features_cmd->add_option("--manifest", features.manifest, "Manifest CSV")
      ->required()
      ->check(CLI::ExistingFile);
  features_cmd->add_option("--out", features.out, "Output CSV ('-' for stdout)")
      ->capture_default_str();
  features_cmd->add_option("--clustering", features.clustering, "Clustering variant")
      ->check(CLI::IsMember({"undirected", "directed"}))
      ->capture_default_str();
  features.filter.add_to(*features_cmd);

  DistancesArgs distances;
  auto* distances_cmd = app.add_subcommand("distances", "Compute a pairwise distance matrix");
  distances_cmd->add_option("--manifest", distances.manifest, "Manifest CSV")
      ->required()
      ->check(CLI::ExistingFile);
  distances_cmd->add_option("--out", distances.out, "Output matrix CSV")->required();
  distances_cmd->add_option("--metric", distances.metric, "Distance")
      ->required()
      ->check(CLI::IsMember({"dgcd13", "portrait"}));
  distances_cmd->add_option("--bucket", distances.bucket, "Size bucket")
      ->check(bucket_check)
      ->capture_default_str();
  distances_cmd->add_flag("--include-large", distances.include_large,
                          "Keep networks with >= 1000 nodes for dgcd13");
  distances_cmd->add_option("--portrait-direction", distances.portrait_direction,
                            "Shortest paths for portraits")
      ->check(CLI::IsMember({"directed", "undirected"}))
      ->capture_default_str();
  distances_cmd->add_option("--cache-dir", distances.cache_dir,
                            "Directory for per-network correlation matrices and portraits");
  distances.filter.add_to(*distances_cmd);

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Cross-validated classification");
  classify_cmd->add_option("--features", classify.features, "Feature table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("--distances", classify.distances, "Distance matrix CSV")
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("--classifier", classify.classifier, "Classifier")
      ->check(CLI::IsMember({"lr", "knn", "knn-distance"}))
      ->capture_default_str();
  classify_cmd->add_option("--k", classify.config.k, "Neighbours for K-NN")
      ->check(positive)
      ->capture_default_str();
  classify_cmd->add_option("--folds", classify.config.folds, "Number of shuffle splits")
      ->check(positive)
      ->capture_default_str();
  classify_cmd->add_option("--test-fraction", classify.config.test_fraction,
                           "Test share of each split")
      ->check(open_unit_interval)
      ->capture_default_str();
  classify_cmd->add_option("--seed", classify.config.seed, "Split seed")->capture_default_str();
  classify_cmd->add_option("--bucket", classify.bucket, "Size bucket")
      ->check(bucket_check)
      ->capture_default_str();
  classify_cmd->add_option("--l2", classify.config.logistic.l2, "L2 penalty for lr")
      ->check(nonneg)
      ->capture_default_str();
  classify_cmd->add_option("--max-iterations", classify.config.logistic.max_iterations,
                           "Gradient steps for lr")
      ->check(positive)
      ->capture_default_str();
  classify_cmd->add_option("--threshold", classify.config.threshold,
                           "Score threshold for precision/recall/F1")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  classify_cmd->add_option("--min-per-class", classify.config.min_per_class,
                           "Minimum samples per class in the bucket")
      ->capture_default_str();
  classify_cmd->add_flag("--shuffle-labels", classify.shuffle_labels,
                         "Permute labels first (null control)");
  classify_cmd->add_option("--out", classify.out, "Report JSON ('-' for stdout)")
      ->capture_default_str();
  classify_cmd->add_option("--roc-out", classify.roc_out, "Per-fold ROC points CSV");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Feature tests, box plots and histograms");
  report_cmd->add_option("--features", report.features, "Feature table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report.out, "Report JSON ('-' for stdout)")
      ->capture_default_str();
  report_cmd->add_option("--box-csv", report.box_csv, "Box-plot summaries CSV");
  report_cmd->add_option("--histogram-csv", report.histogram_csv, "Bucket histogram CSV");
  report_cmd->add_option("--bucket", report.bucket, "Size bucket for the feature tests")
      ->check(bucket_check)
      ->capture_default_str();
  report_cmd->add_option("--alpha", report.alpha, "KS significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  report_cmd->add_option("--classification", report.classifications,
                         "Classification report JSON files to tabulate")
      ->check(CLI::ExistingFile);

  GenerateArgs generate;
  auto* generate_cmd = app.add_subcommand("generate", "Write synthetic benchmark networks");
  generate_cmd->add_option("--out", generate.out, "Output directory")->required();
  generate_cmd->add_option("--profile", generate.profile, "Class profile")
      ->check(CLI::IsMember({"broadcast", "clustered", "broadcast_like", "clustered_like",
                             "both"}))
      ->capture_default_str();
  generate_cmd->add_option("--bucket", generate.bucket, "Size bucket")
      ->check(bucket_check)
      ->capture_default_str();
  generate_cmd->add_option("--count", generate.count, "Networks per profile")
      ->check(positive)
      ->capture_default_str();
  generate_cmd->add_option("--seed", generate.seed, "Base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*build_cmd) return cmd_build(build);
    if (*features_cmd) return cmd_features(features);
    if (*distances_cmd) return cmd_distances(distances);
    if (*classify_cmd) return cmd_classify(classify);
    if (*report_cmd) return cmd_report(report);
    if (*generate_cmd) return cmd_generate(generate);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
