#include "difnet/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "difnet/error.hpp"
#include "difnet/parallel.hpp"

namespace difnet {

std::string_view source_of(std::string_view network_id) {
  const auto colon = network_id.find(':');
  return colon == std::string_view::npos ? std::string_view{} : network_id.substr(0, colon);
}

bool DatasetFilter::accepts(const ManifestEntry& entry) const {
  if (entry.tweet_count < min_tweets) return false;
  if (bias && entry.bias != *bias) return false;
  if (mainstream_bias && entry.label == Label::mainstream && entry.bias != *mainstream_bias) {
    return false;
  }
  const auto source = source_of(entry.network_id);
  if (!source.empty() &&
      std::find(exclude_sources.begin(), exclude_sources.end(), source) !=
          exclude_sources.end()) {
    return false;
  }
  return true;
}

CorpusManifest CorpusManifest::read(const std::filesystem::path& manifest_csv,
                                    DatasetFilter filter) {
  CorpusManifest m;
  m.entries = read_manifest(manifest_csv);
  m.base_dir = manifest_csv.parent_path();
  m.filter = std::move(filter);
  return m;
}

std::filesystem::path CorpusManifest::resolve(const ManifestEntry& entry) const {
  const std::filesystem::path p(entry.path);
  return p.is_absolute() ? p : base_dir / p;
}

std::vector<ManifestEntry> CorpusManifest::selected() const {
  std::vector<ManifestEntry> out;
  for (const auto& e : entries) {
    if (filter.accepts(e)) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.network_id < b.network_id;
  });
  return out;
}

std::vector<LoadedEntry> load_corpus(const CorpusManifest& manifest, unsigned workers) {
  const auto entries = manifest.selected();
  std::vector<LoadedEntry> out(entries.size());
  parallel_for(
      entries.size(),
      [&](std::size_t i) {
        out[i].entry = entries[i];
        try {
          NetworkInfo info{entries[i].network_id, entries[i].label, entries[i].bias,
                           entries[i].tweet_count};
          out[i].network = load_network(manifest.resolve(entries[i])).with_info(info);
        } catch (const std::exception& e) {
          out[i].error = e.what();
        }
      },
      workers == 0 ? default_workers() : workers);
  return out;
}

Sample make_sample(const DiffusionNetwork& network, const FeatureOptions& options) {
  Sample s;
  s.network_id = network.id();
  s.features = extract_features(network, options);
  s.label = network.info().label;
  s.bias = network.info().bias;
  s.num_nodes = network.num_nodes();
  s.bucket = bucket_of(network);
  return s;
}

LabeledDataset assemble(const CorpusManifest& manifest, const AssembleOptions& options) {
  const unsigned workers = options.workers == 0 ? default_workers() : options.workers;
  auto loaded = load_corpus(manifest, workers);

  std::string failures;
  for (const auto& l : loaded) {
    if (!l.network) failures += "\n  " + l.entry.network_id + ": " + l.error;
  }
  if (!failures.empty()) throw InputError("cannot load networks:" + failures);

  std::erase_if(loaded, [](const LoadedEntry& l) {
    if (l.entry.label != Label::unlabeled) return false;
    warn("skipping unlabeled network '" + l.entry.network_id + "'");
    return true;
  });

  LabeledDataset dataset;
  dataset.samples.resize(loaded.size());
  parallel_for(
      loaded.size(),
      [&](std::size_t i) {
        if (loaded[i].network->empty()) {
          throw InputError("network '" + loaded[i].entry.network_id + "' has no nodes");
        }
        dataset.samples[i] = make_sample(*loaded[i].network, options.features);
      },
      workers);
  dataset.validate();
  return dataset;
}

std::map<SizeBucket, std::size_t> bucket_histogram(const LabeledDataset& dataset) {
  std::map<SizeBucket, std::size_t> hist = {
      {SizeBucket::d0_100, 0}, {SizeBucket::d100_1000, 0}, {SizeBucket::d1000_inf, 0}};
  for (const auto& s : dataset.samples) ++hist[s.bucket];
  return hist;
}

namespace {

constexpr std::string_view kFeatureHeader =
    "network_id,label,bias,n_nodes,scc,lscc,wcc,lwcc,dwcc,cc,kc";

std::size_t parse_count(const std::string& field, const std::string& source,
                        std::size_t line) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != field.size() || field.front() == '-') {
    throw FormatError(source, line, "invalid count '" + field + "'");
  }
  return static_cast<std::size_t>(value);
}

double parse_real(const std::string& field, const std::string& source, std::size_t line) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != field.size()) {
    throw FormatError(source, line, "invalid number '" + field + "'");
  }
  return value;
}

}  // namespace

void write_feature_table(std::ostream& out, const std::vector<Sample>& samples) {
  out << kFeatureHeader << '\n';
  for (const auto& s : samples) {
    const auto& f = s.features;
    out << csv::escape(s.network_id) << ',' << to_string(s.label) << ',' << to_string(s.bias)
        << ',' << s.num_nodes << ',' << f.scc << ',' << f.lscc << ',' << f.wcc << ','
        << f.lwcc << ',' << f.dwcc << ',' << csv::format_double(f.cc) << ',' << f.kc << '\n';
  }
}

void write_feature_table(const std::filesystem::path& path, const std::vector<Sample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_feature_table(out, samples);
}

std::vector<Sample> parse_feature_table(std::string_view text, const std::string& source_name) {
  std::vector<Sample> samples;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kFeatureHeader) {
        throw FormatError(source_name, line_no,
                          "expected header " + std::string(kFeatureHeader));
      }
      header_seen = true;
      continue;
    }
    const auto fields = csv::split_record(line);
    if (fields.size() != 11) {
      throw FormatError(source_name, line_no,
                        "expected 11 fields, found " + std::to_string(fields.size()));
    }
    Sample s;
    s.network_id = fields[0];
    try {
      s.label = parse_label(fields[1]);
      s.bias = parse_bias(fields[2]);
    } catch (const InputError& e) {
      throw FormatError(source_name, line_no, e.what());
    }
    s.num_nodes = parse_count(fields[3], source_name, line_no);
    s.bucket = bucket_of(s.num_nodes);
    s.features.scc = parse_count(fields[4], source_name, line_no);
    s.features.lscc = parse_count(fields[5], source_name, line_no);
    s.features.wcc = parse_count(fields[6], source_name, line_no);
    s.features.lwcc = parse_count(fields[7], source_name, line_no);
    s.features.dwcc = parse_count(fields[8], source_name, line_no);
    s.features.cc = parse_real(fields[9], source_name, line_no);
    s.features.kc = parse_count(fields[10], source_name, line_no);
    samples.push_back(std::move(s));
  }
  if (!header_seen) throw FormatError(source_name, 0, "empty feature table");
  return samples;
}

std::vector<Sample> read_feature_table(const std::filesystem::path& path) {
  return parse_feature_table(read_file(path), path.string());
}

void write_distance_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << "network_id";
  for (const auto& id : matrix.ids()) out << ',' << csv::escape(id);
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << csv::escape(matrix.ids()[i]);
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out << ',' << csv::format_double(matrix(i, j));
    }
    out << '\n';
  }
}

DistanceMatrix parse_distance_matrix(std::string_view text, const std::string& source_name) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> ids;
  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = csv::split_record(line);
    if (ids.empty() && row == 0 && values.empty()) {
      if (fields.empty() || fields[0] != "network_id") {
        throw FormatError(source_name, line_no, "expected 'network_id' corner cell");
      }
      ids.assign(fields.begin() + 1, fields.end());
      if (ids.empty()) throw FormatError(source_name, line_no, "no network ids");
      values.reserve(ids.size() * ids.size());
      continue;
    }
    if (row >= ids.size()) throw FormatError(source_name, line_no, "too many rows");
    if (fields.size() != ids.size() + 1) {
      throw FormatError(source_name, line_no, "row has " + std::to_string(fields.size() - 1) +
                                                  " values, expected " +
                                                  std::to_string(ids.size()));
    }
    if (fields[0] != ids[row]) {
      throw FormatError(source_name, line_no,
                        "row id '" + fields[0] + "' does not match column '" + ids[row] + "'");
    }
    for (std::size_t j = 1; j < fields.size(); ++j) {
      values.push_back(parse_real(fields[j], source_name, line_no));
    }
    ++row;
  }
  if (ids.empty()) throw FormatError(source_name, 0, "empty distance matrix");
  if (row != ids.size()) {
    throw FormatError(source_name, 0, "expected " + std::to_string(ids.size()) + " rows");
  }
  DistanceMatrix matrix(std::move(ids), std::move(values));
  matrix.validate();
  return matrix;
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
  return parse_distance_matrix(read_file(path), path.string());
}

LabeledDataset dataset_from_table(std::vector<Sample> samples,
                                  std::optional<DistanceMatrix> distances, SizeBucket bucket) {
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!row_of.emplace(samples[i].network_id, i).second) {
      throw InputError("duplicate network id '" + samples[i].network_id + "'");
    }
  }
  std::unordered_map<std::string, std::size_t> matrix_index;
  if (distances) {
    for (std::size_t i = 0; i < distances->size(); ++i) {
      const auto& id = distances->ids()[i];
      if (!row_of.contains(id)) {
        throw InputError("distance matrix id '" + id + "' has no feature row");
      }
      matrix_index.emplace(id, i);
    }
  }

  LabeledDataset dataset;
  std::vector<std::size_t> keep;
  std::size_t missing = 0;
  std::string first_missing;
  for (auto& s : samples) {
    if (bucket != SizeBucket::all && s.bucket != bucket) continue;
    if (s.label == Label::unlabeled) {
      warn("skipping unlabeled network '" + s.network_id + "'");
      continue;
    }
    if (distances) {
      auto it = matrix_index.find(s.network_id);
      if (it == matrix_index.end()) {
        if (missing++ == 0) first_missing = s.network_id;
        continue;
      }
      keep.push_back(it->second);
    }
    dataset.samples.push_back(std::move(s));
  }
  if (missing > 0) {
    throw InputError("dimension mismatch: " + std::to_string(missing) +
                     " sample(s) have no distance matrix row (first: '" + first_missing + "')");
  }
  if (distances) dataset.distances = distances->select(keep);
  dataset.validate();
  return dataset;
}

}  // namespace difnet
