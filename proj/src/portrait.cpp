#include "difnet/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "difnet/error.hpp"
#include "difnet/io.hpp"

namespace difnet {

Portrait::Portrait(std::size_t num_nodes,
                   std::vector<std::map<std::size_t, std::uint64_t>> rows)
    : num_nodes_(num_nodes), rows_(std::move(rows)) {
  for (auto& row : rows_) {
    std::uint64_t counted = 0;
    for (auto it = row.begin(); it != row.end();) {
      if (it->second == 0) {
        it = row.erase(it);
        continue;
      }
      if (it->first > 0) counted += it->second;
      ++it;
    }
    if (counted > num_nodes_) throw InputError("portrait row exceeds node count");
    if (counted < num_nodes_) {
      row[0] = num_nodes_ - counted;
    } else {
      row.erase(0);
    }
  }
}

std::uint64_t Portrait::at(std::size_t distance, std::size_t k) const {
  if (distance >= rows_.size()) return k == 0 ? num_nodes_ : 0;
  auto it = rows_[distance].find(k);
  return it == rows_[distance].end() ? 0 : it->second;
}

std::uint64_t Portrait::row_sum(std::size_t distance) const {
  std::uint64_t total = 0;
  for (const auto& [k, count] : rows_.at(distance)) total += count;
  return total;
}

Portrait portrait(const DiffusionNetwork& network, const PortraitOptions& options) {
  if (network.empty()) throw EmptyGraphError();
  const std::size_t n = network.num_nodes();
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();

  std::vector<std::map<std::size_t, std::uint64_t>> rows;
  std::vector<std::size_t> dist(n, kUnseen);
  std::vector<NodeId> queue;
  std::vector<std::size_t> shells;
  queue.reserve(n);

  for (NodeId source = 0; source < n; ++source) {
    queue.assign(1, source);
    dist[source] = 0;
    shells.assign(1, 1);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      auto visit = [&](NodeId w) {
        if (dist[w] != kUnseen) return;
        dist[w] = dist[v] + 1;
        if (dist[w] == shells.size()) shells.push_back(0);
        ++shells[dist[w]];
        queue.push_back(w);
      };
      if (options.directed) {
        for (NodeId w : network.out_neighbors(v)) visit(w);
      } else {
        for (NodeId w : network.neighbors(v)) visit(w);
      }
    }
    for (NodeId v : queue) dist[v] = kUnseen;

    if (rows.size() < shells.size()) rows.resize(shells.size());
    for (std::size_t l = 0; l < shells.size(); ++l) ++rows[l][shells[l]];
  }
  return Portrait(n, std::move(rows));
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> portrait_distribution(
    const Portrait& p) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> out;
  double total = 0.0;
  for (std::size_t l = 0; l < p.num_rows(); ++l) {
    for (const auto& [k, count] : p.row(l)) {
      if (k == 0) continue;
      const double mass = static_cast<double>(k) * static_cast<double>(count);
      out.push_back({{l, k}, mass});
      total += mass;
    }
  }
  for (auto& entry : out) entry.second /= total;
  return out;
}

double portrait_divergence(const Portrait& a, const Portrait& b) {
  const auto p = portrait_distribution(a);
  const auto q = portrait_distribution(b);

  // Entries present in only one distribution contribute p * log2(2) = p to
  // that side's KL term.
  double kl_p = 0.0;
  double kl_q = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p[i].first < q[j].first)) {
      kl_p += p[i++].second;
    } else if (i == p.size() || q[j].first < p[i].first) {
      kl_q += q[j++].second;
    } else {
      const double pi = p[i++].second;
      const double qj = q[j++].second;
      const double m = 0.5 * (pi + qj);
      kl_p += pi * std::log2(pi / m);
      kl_q += qj * std::log2(qj / m);
    }
  }
  return std::clamp(0.5 * kl_p + 0.5 * kl_q, 0.0, 1.0);
}

double portrait_divergence(const DiffusionNetwork& a, const DiffusionNetwork& b,
                           const PortraitOptions& options) {
  return portrait_divergence(portrait(a, options), portrait(b, options));
}

void write_portrait(const Portrait& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << "l,k,count\n";
  for (std::size_t l = 0; l < p.num_rows(); ++l) {
    for (const auto& [k, count] : p.row(l)) out << l << ',' << k << ',' << count << '\n';
  }
}

Portrait read_portrait(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::map<std::size_t, std::uint64_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "l,k,count") throw FormatError(path.string(), 1, "expected header l,k,count");
      continue;
    }
    auto fields = csv::split_record(line);
    if (fields.size() != 3) throw FormatError(path.string(), line_no, "expected 3 fields");
    std::size_t l = 0, k = 0;
    std::uint64_t count = 0;
    try {
      l = std::stoull(fields[0]);
      k = std::stoull(fields[1]);
      count = std::stoull(fields[2]);
    } catch (const std::exception&) {
      throw FormatError(path.string(), line_no, "invalid integer");
    }
    if (rows.size() <= l) rows.resize(l + 1);
    rows[l][k] += count;
  }
  if (rows.empty() || rows[0].size() != 1 || !rows[0].contains(1)) {
    throw FormatError(path.string(), 0, "row l=0 must hold only k=1");
  }
  const std::size_t n = rows[0].at(1);
  return Portrait(n, std::move(rows));
}

}  // namespace difnet
