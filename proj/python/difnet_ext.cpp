#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "difnet/classify.hpp"
#include "difnet/dataset.hpp"
#include "difnet/error.hpp"
#include "difnet/features.hpp"
#include "difnet/graphlets.hpp"
#include "difnet/io.hpp"
#include "difnet/network.hpp"
#include "difnet/portrait.hpp"
#include "difnet/report.hpp"
#include "difnet/stats.hpp"
#include "difnet/synth.hpp"

namespace py = pybind11;
using namespace difnet;

namespace {

DiffusionNetwork make_network(const std::vector<std::pair<std::string, std::string>>& edges,
                              const std::vector<std::string>& nodes, const std::string& id,
                              const std::string& label) {
  std::map<std::string, NodeId> index;
  std::vector<std::string> names;
  auto intern = [&](const std::string& name) {
    auto [it, inserted] = index.emplace(name, static_cast<NodeId>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  };
  for (const auto& n : nodes) intern(n);
  std::vector<Edge> arcs;
  arcs.reserve(edges.size());
  for (const auto& [s, t] : edges) arcs.push_back({intern(s), intern(t)});
  NetworkInfo info;
  info.id = id;
  info.label = parse_label(label);
  return DiffusionNetwork(std::move(names), std::move(arcs), std::move(info));
}

InteractionEvent event_from_dict(const py::dict& d) {
  InteractionEvent e;
  e.tweet_id = py::str(d["tweet_id"]);
  e.acting_user = py::str(d["user"]);
  if (d.contains("target_user") && !d["target_user"].is_none()) {
    e.target_user = py::str(d["target_user"]).cast<std::string>();
  }
  e.interaction = parse_interaction(py::str(d["interaction"]).cast<std::string>());
  e.url = py::str(d["url"]);
  if (d.contains("timestamp")) e.timestamp = d["timestamp"].cast<std::int64_t>();
  return e;
}

py::dict features_dict(const FeatureVector& f) {
  py::dict d;
  d["scc"] = f.scc;
  d["lscc"] = f.lscc;
  d["wcc"] = f.wcc;
  d["lwcc"] = f.lwcc;
  d["dwcc"] = f.dwcc;
  d["cc"] = f.cc;
  d["kc"] = f.kc;
  return d;
}

std::string evaluate_json(const std::vector<DiffusionNetwork>& networks,
                          const std::string& classifier, std::size_t k, std::size_t folds,
                          double test_fraction, std::uint64_t seed, const std::string& bucket,
                          double l2, std::size_t min_per_class,
                          const std::optional<std::vector<std::vector<double>>>& distances) {
  LabeledDataset dataset;
  for (const auto& net : networks) dataset.samples.push_back(make_sample(net));
  if (distances) {
    std::vector<std::string> ids;
    for (const auto& s : dataset.samples) ids.push_back(s.network_id);
    std::vector<double> values;
    for (const auto& row : *distances) {
      if (row.size() != ids.size()) throw InputError("distance matrix is not square");
      values.insert(values.end(), row.begin(), row.end());
    }
    if (distances->size() != ids.size()) {
      throw InputError("distance matrix does not match the number of networks");
    }
    dataset.distances = DistanceMatrix(std::move(ids), std::move(values));
  }
  EvaluationConfig config;
  config.classifier = parse_classifier(classifier);
  config.k = k;
  config.folds = folds;
  config.test_fraction = test_fraction;
  config.seed = seed;
  config.logistic.l2 = l2;
  config.min_per_class = min_per_class;
  return to_json(evaluate(dataset, config, parse_bucket(bucket))).dump();
}

}  // namespace

PYBIND11_MODULE(_difnet, m) {
  m.doc() = "Diffusion network features, graph distances and classification";

  const auto base_error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", base_error.ptr());

  py::class_<DiffusionNetwork>(m, "DiffusionNetwork")
      .def(py::init(&make_network), py::arg("edges"), py::arg("nodes") = std::vector<std::string>{},
           py::arg("id") = "", py::arg("label") = "unlabeled")
      .def_property_readonly("num_nodes", &DiffusionNetwork::num_nodes)
      .def_property_readonly("num_edges", &DiffusionNetwork::num_edges)
      .def_property_readonly("id", [](const DiffusionNetwork& n) { return n.id(); })
      .def_property_readonly("label",
                             [](const DiffusionNetwork& n) {
                               return std::string(to_string(n.info().label));
                             })
      .def_property_readonly("tweet_count",
                             [](const DiffusionNetwork& n) { return n.info().tweet_count; })
      .def_property_readonly("nodes", &DiffusionNetwork::node_names)
      .def_property_readonly("edges",
                             [](const DiffusionNetwork& n) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& e : n.edges()) {
                                 out.emplace_back(n.node_name(e.source), n.node_name(e.target));
                               }
                               return out;
                             })
      .def("__repr__", [](const DiffusionNetwork& n) {
        return "<DiffusionNetwork '" + n.id() + "' nodes=" + std::to_string(n.num_nodes()) +
               " edges=" + std::to_string(n.num_edges()) + ">";
      });

  m.def(
      "build_network",
      [](const std::vector<py::dict>& events, const std::string& url,
         const std::string& orientation, const std::string& network_id,
         const std::string& label, const std::string& bias) {
        std::vector<InteractionEvent> parsed;
        parsed.reserve(events.size());
        for (const auto& d : events) parsed.push_back(event_from_dict(d));
        BuildOptions options;
        options.orientation = parse_orientation(orientation);
        options.network_id = network_id;
        options.label = parse_label(label);
        options.bias = parse_bias(bias);
        return build_network(parsed, url, options);
      },
      py::arg("events"), py::arg("url"), py::arg("orientation") = "information_flow",
      py::arg("network_id") = "", py::arg("label") = "unlabeled", py::arg("bias") = "none");

  m.def(
      "load_network",
      [](const std::filesystem::path& path, const std::string& format) {
        return load_network(path, format == "whitespace" ? EdgeListFormat::whitespace
                                                         : EdgeListFormat::tsv);
      },
      py::arg("path"), py::arg("format") = "tsv");
  m.def("save_network", &save_network, py::arg("network"), py::arg("edge_list"),
        py::arg("node_manifest"));

  m.def(
      "extract_features",
      [](const DiffusionNetwork& net, const std::string& clustering) {
        FeatureOptions options;
        options.clustering = parse_clustering(clustering);
        return features_dict(extract_features(net, options));
      },
      py::arg("network"), py::arg("clustering") = "undirected");

  m.def(
      "count_orbits",
      [](const DiffusionNetwork& net) {
        const auto counts = count_orbits(net);
        std::vector<std::vector<std::uint64_t>> rows;
        for (const auto& r : counts.rows()) rows.emplace_back(r.begin(), r.end());
        return rows;
      },
      py::arg("network"));
  m.def("dgcd13", py::overload_cast<const DiffusionNetwork&, const DiffusionNetwork&>(&dgcd13),
        py::arg("a"), py::arg("b"));

  m.def(
      "portrait",
      [](const DiffusionNetwork& net, bool directed) {
        const auto p = portrait(net, PortraitOptions{directed});
        std::vector<std::map<std::size_t, std::uint64_t>> rows;
        for (std::size_t l = 0; l < p.num_rows(); ++l) rows.push_back(p.row(l));
        return rows;
      },
      py::arg("network"), py::arg("directed") = true);
  m.def(
      "portrait_divergence",
      [](const DiffusionNetwork& a, const DiffusionNetwork& b, bool directed) {
        return portrait_divergence(a, b, PortraitOptions{directed});
      },
      py::arg("a"), py::arg("b"), py::arg("directed") = true);

  m.def(
      "ks_two_sample",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        const auto r = ks_two_sample(xs, ys);
        return std::make_pair(r.statistic, r.p_value);
      },
      py::arg("xs"), py::arg("ys"));
  m.def(
      "roc_auc",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        const auto curve = roc_auc(scores, labels);
        std::vector<std::tuple<double, double, double>> points;
        for (const auto& p : curve.points) points.emplace_back(p.threshold, p.fpr, p.tpr);
        return std::make_pair(curve.auc, points);
      },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "stratified_shuffle_split",
      [](const std::vector<int>& labels, std::size_t folds, double test_fraction,
         std::uint64_t seed) {
        std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
        for (auto& f : stratified_shuffle_split(labels, folds, test_fraction, seed)) {
          out.emplace_back(std::move(f.train), std::move(f.test));
        }
        return out;
      },
      py::arg("labels"), py::arg("folds") = 10, py::arg("test_fraction") = 0.1,
      py::arg("seed") = 0);

  m.def(
      "generate",
      [](const std::string& profile, const std::string& bucket, std::uint64_t seed,
         const std::string& network_id) {
        const auto p = parse_profile(profile);
        return generate(preset_recipe(p, parse_bucket(bucket), seed), p, network_id);
      },
      py::arg("profile"), py::arg("bucket") = "D_0_100", py::arg("seed") = 0,
      py::arg("network_id") = "");

  m.def("_evaluate_json", &evaluate_json, py::arg("networks"), py::arg("classifier"),
        py::arg("k"), py::arg("folds"), py::arg("test_fraction"), py::arg("seed"),
        py::arg("bucket"), py::arg("l2"), py::arg("min_per_class"), py::arg("distances"));
}
