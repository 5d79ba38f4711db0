#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "difnet/network.hpp"

namespace difnet {

enum class EdgeListFormat {
  /// One "src<TAB>dst" per line.
  tsv,
  /// Source and target separated by any run of blanks.
  whitespace,
};

/// Companion node-manifest path for an edge-list file: the same path with
/// its extension replaced by ".nodes".
std::filesystem::path node_manifest_path(const std::filesystem::path& edge_list);

/// Reads an edge list. Lines starting with '#' (including the optional
/// "#directed" header) and blank lines are skipped. Nodes listed in the
/// node manifest are added even when no edge touches them; when
/// `node_manifest` is not given the companion path is used if it exists.
/// Duplicate edge lines are collapsed with a warning.
///
/// Throws FormatError (with line number) on unparsable lines and self-loops.
DiffusionNetwork load_network(
    const std::filesystem::path& path, EdgeListFormat format = EdgeListFormat::tsv,
    const std::optional<std::filesystem::path>& node_manifest = std::nullopt);

/// Parses an edge list held in memory; `source_name` is used in diagnostics.
DiffusionNetwork parse_edge_list(std::string_view text, EdgeListFormat format,
                                 std::string_view node_manifest_text = {},
                                 const std::string& source_name = {});

/// Writes "#directed" followed by one "src<TAB>dst" line per edge, and the
/// full node list to `node_manifest` so isolated nodes survive a reload.
void save_network(const DiffusionNetwork& network,
                  const std::filesystem::path& edge_list,
                  const std::filesystem::path& node_manifest);

struct EventReadResult {
  std::vector<InteractionEvent> events;
  std::size_t malformed_lines = 0;
  std::vector<std::string> diagnostics;
};

/// Reads one JSON object per line with keys tweet_id, user, target_user
/// (nullable), interaction, url, timestamp. Malformed lines are skipped and
/// reported in the result instead of throwing.
EventReadResult read_events(std::istream& in, const std::string& source_name = {});
EventReadResult read_events(const std::filesystem::path& path);

std::string event_to_json(const InteractionEvent& event);

/// One row of the dataset manifest CSV
/// (network_id,path,label,bias,tweet_count).
struct ManifestEntry {
  std::string network_id;
  std::string path;
  Label label = Label::unlabeled;
  Bias bias = Bias::none;
  std::uint64_t tweet_count = 0;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
std::vector<ManifestEntry> parse_manifest(std::string_view text,
                                          const std::string& source_name = {});

/// Writes the header when the file is new or empty, then appends rows.
void append_manifest(const std::filesystem::path& path,
                     const std::vector<ManifestEntry>& entries);

namespace csv {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes.
std::vector<std::string> split_record(std::string_view line);

/// Quotes a field when it contains a comma, quote, or newline.
std::string escape(std::string_view field);

/// Formats a double with enough digits to round-trip.
std::string format_double(double value);

}  // namespace csv

std::string read_file(const std::filesystem::path& path);

}  // namespace difnet
