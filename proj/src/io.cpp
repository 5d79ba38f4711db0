#include "difnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "difnet/error.hpp"

namespace difnet {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!(end == text.size() && line.empty())) f(line_no, line);
    pos = end + 1;
  }
}

std::vector<std::string_view> split_fields(std::string_view line,
                                           EdgeListFormat format) {
  std::vector<std::string_view> fields;
  if (format == EdgeListFormat::tsv) {
    std::size_t pos = 0;
    while (true) {
      auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos
                                            ? std::string_view::npos
                                            : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    return fields;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t", pos);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::optional<std::string> json_string(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
  return std::nullopt;
}

InteractionEvent parse_event_object(const json& obj) {
  if (!obj.is_object()) throw InputError("line is not a JSON object");
  auto require = [&](const char* key) -> const json& {
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(std::string("missing key '") + key + "'");
    return *it;
  };

  InteractionEvent event;
  auto tweet_id = json_string(require("tweet_id"));
  if (!tweet_id) throw InputError("tweet_id must be a string or integer");
  event.tweet_id = *tweet_id;

  auto user = json_string(require("user"));
  if (!user) throw InputError("user must be a string or integer");
  event.acting_user = *user;

  if (auto it = obj.find("target_user"); it != obj.end() && !it->is_null()) {
    auto target = json_string(*it);
    if (!target) throw InputError("target_user must be a string, integer, or null");
    event.target_user = *target;
  }

  const json& interaction = require("interaction");
  if (!interaction.is_string()) throw InputError("interaction must be a string");
  event.interaction = parse_interaction(interaction.get<std::string>());

  const json& url = require("url");
  if (!url.is_string()) throw InputError("url must be a string");
  event.url = url.get<std::string>();

  const json& ts = require("timestamp");
  if (ts.is_number_integer() || ts.is_number_unsigned()) {
    event.timestamp = ts.get<std::int64_t>();
  } else if (ts.is_number_float()) {
    event.timestamp = static_cast<std::int64_t>(ts.get<double>());
  } else {
    throw InputError("timestamp must be a number");
  }

  validate_event(event);
  return event;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path node_manifest_path(const std::filesystem::path& edge_list) {
  std::filesystem::path p = edge_list;
  p.replace_extension(".nodes");
  return p;
}

DiffusionNetwork parse_edge_list(std::string_view text, EdgeListFormat format,
                                 std::string_view node_manifest_text,
                                 const std::string& source_name) {
  std::set<std::string> names;
  std::set<std::pair<std::string, std::string>> arcs;
  std::size_t duplicates = 0;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (trim(line).empty() || trim(line).front() == '#') return;
    auto fields = split_fields(format == EdgeListFormat::tsv ? line : trim(line), format);
    if (fields.size() != 2) {
      throw FormatError(source_name, line_no,
                        "expected 2 fields, found " + std::to_string(fields.size()));
    }
    std::string src(trim(fields[0]));
    std::string dst(trim(fields[1]));
    if (src.empty() || dst.empty()) {
      throw FormatError(source_name, line_no, "empty node id");
    }
    if (src == dst) {
      throw FormatError(source_name, line_no, "self-loop on node '" + src + "'");
    }
    names.insert(src);
    names.insert(dst);
    if (!arcs.emplace(std::move(src), std::move(dst)).second) ++duplicates;
  });

  for_each_line(node_manifest_text, [&](std::size_t, std::string_view line) {
    auto name = trim(line);
    if (name.empty() || name.front() == '#') return;
    names.emplace(name);
  });

  if (duplicates > 0) {
    warn((source_name.empty() ? std::string("<input>") : source_name) + ": collapsed " +
         std::to_string(duplicates) + " duplicate edge line(s)");
  }

  std::vector<std::string> ordered(names.begin(), names.end());
  std::map<std::string_view, NodeId> index;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    index.emplace(ordered[i], static_cast<NodeId>(i));
  }
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const auto& [src, dst] : arcs) edges.push_back({index.at(src), index.at(dst)});
  return DiffusionNetwork(std::move(ordered), std::move(edges));
}

DiffusionNetwork load_network(const std::filesystem::path& path, EdgeListFormat format,
                              const std::optional<std::filesystem::path>& node_manifest) {
  const std::string text = read_file(path);
  std::string nodes_text;
  if (node_manifest) {
    nodes_text = read_file(*node_manifest);
  } else if (auto companion = node_manifest_path(path);
             companion != path && std::filesystem::exists(companion)) {
    nodes_text = read_file(companion);
  }
  return parse_edge_list(text, format, nodes_text, path.string());
}

void save_network(const DiffusionNetwork& network,
                  const std::filesystem::path& edge_list,
                  const std::filesystem::path& node_manifest) {
  for (const auto& name : network.node_names()) {
    if (name.find_first_of("\t\r\n") != std::string::npos || name.front() == '#' ||
        trim(name) != name) {
      throw InputError("node id '" + name + "' cannot be written to an edge list");
    }
  }
  std::ofstream edges_out(edge_list, std::ios::binary);
  if (!edges_out) throw InputError("cannot write '" + edge_list.string() + "'");
  edges_out << "#directed\n";
  for (const Edge& e : network.edges()) {
    edges_out << network.node_name(e.source) << '\t' << network.node_name(e.target)
              << '\n';
  }
  std::ofstream nodes_out(node_manifest, std::ios::binary);
  if (!nodes_out) throw InputError("cannot write '" + node_manifest.string() + "'");
  for (const auto& name : network.node_names()) nodes_out << name << '\n';
}

EventReadResult read_events(std::istream& in, const std::string& source_name) {
  EventReadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      result.events.push_back(parse_event_object(json::parse(line)));
    } catch (const json::exception& e) {
      ++result.malformed_lines;
      result.diagnostics.push_back(FormatError(source_name, line_no, e.what()).what());
    } catch (const InputError& e) {
      ++result.malformed_lines;
      result.diagnostics.push_back(FormatError(source_name, line_no, e.what()).what());
    }
  }
  return result;
}

EventReadResult read_events(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_events(in, path.string());
}

std::string event_to_json(const InteractionEvent& event) {
  json obj;
  obj["tweet_id"] = event.tweet_id;
  obj["user"] = event.acting_user;
  obj["target_user"] = event.target_user ? json(*event.target_user) : json(nullptr);
  obj["interaction"] = std::string(to_string(event.interaction));
  obj["url"] = event.url;
  obj["timestamp"] = event.timestamp;
  return obj.dump();
}

namespace csv {

std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buffer, end);
}

}  // namespace csv

std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::string& source_name) {
  static const std::vector<std::string> kHeader = {"network_id", "path", "label",
                                                   "bias", "tweet_count"};
  std::vector<ManifestEntry> entries;
  bool header_seen = false;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (trim(line).empty()) return;
    auto fields = csv::split_record(line);
    for (auto& f : fields) f = std::string(trim(f));
    if (!header_seen) {
      header_seen = true;
      if (fields != kHeader) {
        throw FormatError(source_name, line_no,
                          "expected header network_id,path,label,bias,tweet_count");
      }
      return;
    }
    if (fields.size() != kHeader.size()) {
      throw FormatError(source_name, line_no,
                        "expected 5 fields, found " + std::to_string(fields.size()));
    }
    ManifestEntry entry;
    entry.network_id = fields[0];
    entry.path = fields[1];
    if (entry.network_id.empty()) throw FormatError(source_name, line_no, "empty network_id");
    try {
      entry.label = parse_label(fields[2]);
      entry.bias = parse_bias(fields[3]);
    } catch (const InputError& e) {
      throw FormatError(source_name, line_no, e.what());
    }
    const auto& count = fields[4];
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(),
                                     entry.tweet_count);
    if (ec != std::errc() || ptr != count.data() + count.size()) {
      throw FormatError(source_name, line_no, "invalid tweet_count '" + count + "'");
    }
    entries.push_back(std::move(entry));
  });
  return entries;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_file(path), path.string());
}

void append_manifest(const std::filesystem::path& path,
                     const std::vector<ManifestEntry>& entries) {
  const bool needs_header =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  if (needs_header) out << "network_id,path,label,bias,tweet_count\n";
  for (const auto& e : entries) {
    out << csv::escape(e.network_id) << ',' << csv::escape(e.path) << ','
        << to_string(e.label) << ',' << to_string(e.bias) << ',' << e.tweet_count
        << '\n';
  }
}

}  // namespace difnet
