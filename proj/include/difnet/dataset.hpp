#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "difnet/classify.hpp"
#include "difnet/features.hpp"
#include "difnet/io.hpp"
#include "difnet/network.hpp"

namespace difnet {

inline constexpr std::uint64_t kDefaultMinTweets = 50;

/// Source outlet encoded in a network id: the text before the first ':'
/// ("breitbart.com:1234" -> "breitbart.com"); empty when there is none.
std::string_view source_of(std::string_view network_id);

/// Corpus-level selection applied before any network is loaded.
struct DatasetFilter {
  std::uint64_t min_tweets = kDefaultMinTweets;
  /// Keep only networks with this bias (left-only / right-only slices).
  std::optional<Bias> bias;
  /// Keep mainstream networks of this bias plus every disinformation network.
  std::optional<Bias> mainstream_bias;
  /// Drop networks whose id carries one of these sources.
  std::vector<std::string> exclude_sources;

  bool accepts(const ManifestEntry& entry) const;
};

/// Manifest rows plus the directory their relative paths resolve against.
struct CorpusManifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;
  DatasetFilter filter;

  static CorpusManifest read(const std::filesystem::path& manifest_csv,
                             DatasetFilter filter = {});

  std::filesystem::path resolve(const ManifestEntry& entry) const;
  /// Entries passing the filter, ordered by network id.
  std::vector<ManifestEntry> selected() const;
};

/// Outcome of loading one manifest entry; exactly one of network/error set.
struct LoadedEntry {
  ManifestEntry entry;
  std::optional<DiffusionNetwork> network;
  std::string error;
};

/// Loads every selected entry concurrently, isolating per-entry failures.
/// Results are ordered by network id.
std::vector<LoadedEntry> load_corpus(const CorpusManifest& manifest,
                                     unsigned workers = 0);

struct AssembleOptions {
  FeatureOptions features;
  unsigned workers = 0;  ///< 0 selects default_workers()
};

/// Loads the selected networks, computes their features and size buckets.
/// Unlabeled entries are dropped with a warning. Throws InputError listing
/// every entry whose file cannot be loaded.
LabeledDataset assemble(const CorpusManifest& manifest, const AssembleOptions& options = {});

Sample make_sample(const DiffusionNetwork& network, const FeatureOptions& options = {});

/// Sample counts per bounded bucket; the counts sum to the dataset size.
std::map<SizeBucket, std::size_t> bucket_histogram(const LabeledDataset& dataset);

/// Feature table CSV:
///   network_id,label,bias,n_nodes,scc,lscc,wcc,lwcc,dwcc,cc,kc
void write_feature_table(std::ostream& out, const std::vector<Sample>& samples);
void write_feature_table(const std::filesystem::path& path, const std::vector<Sample>& samples);
/// Rows in file order; unlabeled rows are kept.
std::vector<Sample> read_feature_table(const std::filesystem::path& path);
std::vector<Sample> parse_feature_table(std::string_view text,
                                        const std::string& source_name = {});

/// Square CSV with a "network_id" corner cell, ids along the header row and
/// first column.
void write_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix);
DistanceMatrix read_distance_matrix(const std::filesystem::path& path);
DistanceMatrix parse_distance_matrix(std::string_view text,
                                     const std::string& source_name = {});

/// Builds a labeled dataset from feature rows and, optionally, a distance
/// matrix. Unlabeled rows are dropped with a warning. Every matrix id must
/// name a feature row; the matrix is reordered to sample order and
/// restricted to `bucket`. Throws InputError when a sample of the bucket
/// has no matrix row.
LabeledDataset dataset_from_table(std::vector<Sample> samples,
                                  std::optional<DistanceMatrix> distances = std::nullopt,
                                  SizeBucket bucket = SizeBucket::all);

}  // namespace difnet
