#include <doctest.h>

#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "difnet/dataset.hpp"
#include "difnet/error.hpp"
#include "test_util.hpp"

using namespace difnet;
namespace fs = std::filesystem;

namespace {

// Out-star on n nodes saved under dir; returns its manifest row.
ManifestEntry write_star(const fs::path& dir, const std::string& id, std::size_t n, Label label,
                         Bias bias, std::uint64_t tweets) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({0, v});
  const auto g = DiffusionNetwork::from_edges(n, std::move(edges));
  std::string file = id;
  for (auto& c : file)
    if (c == ':' || c == '/') c = '_';
  save_network(g, dir / (file + ".tsv"), dir / (file + ".nodes"));
  return {id, file + ".tsv", label, bias, tweets};
}

Sample sample(std::string id, Label label, std::size_t nodes) {
  Sample s;
  s.network_id = std::move(id);
  s.label = label;
  s.num_nodes = nodes;
  s.bucket = bucket_of(nodes);
  s.features = {1, static_cast<std::uint64_t>(nodes), 1, static_cast<std::uint64_t>(nodes), 2, 0.25, 1};
  return s;
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("source of a network id") {
    CHECK(source_of("breitbart.com:1234") == "breitbart.com");
    CHECK(source_of("a:b:c") == "a");
    CHECK(source_of("plain").empty());
  }

  TEST_CASE("filter thresholds and slices") {
    DatasetFilter f;
    ManifestEntry e{"x.com:1", "x.tsv", Label::mainstream, Bias::left, 49};
    CHECK_FALSE(f.accepts(e));
    e.tweet_count = 50;
    CHECK(f.accepts(e));

    f.bias = Bias::right;
    CHECK_FALSE(f.accepts(e));
    f.bias.reset();

    f.mainstream_bias = Bias::right;
    CHECK_FALSE(f.accepts(e));
    e.label = Label::disinformation;
    CHECK(f.accepts(e));
    f.mainstream_bias.reset();

    f.exclude_sources = {"x.com"};
    CHECK_FALSE(f.accepts(e));
  }

  TEST_CASE("networks below the tweet threshold give an empty dataset") {
    const auto dir = testutil::scratch_dir("dataset_threshold");
    append_manifest(dir / "manifest.csv",
                    {write_star(dir, "a.com:1", 5, Label::mainstream, Bias::left, 49)});
    const auto manifest = CorpusManifest::read(dir / "manifest.csv");
    CHECK(manifest.selected().empty());
    CHECK(assemble(manifest).size() == 0);
  }

  TEST_CASE("assembly assigns buckets and preserves counts") {
    const auto dir = testutil::scratch_dir("dataset_buckets");
    std::vector<ManifestEntry> rows = {
        write_star(dir, "a.com:1", 50, Label::mainstream, Bias::left, 60),
        write_star(dir, "b.com:2", 500, Label::disinformation, Bias::right, 600),
        write_star(dir, "c.com:3", 5000, Label::mainstream, Bias::centre, 6000),
        write_star(dir, "d.com:4", 7, Label::unlabeled, Bias::none, 70),
        write_star(dir, "e.com:5", 99, Label::disinformation, Bias::right, 100),
    };
    append_manifest(dir / "manifest.csv", rows);
    const auto manifest = CorpusManifest::read(dir / "manifest.csv");
    CHECK(manifest.selected().size() == 5);

    testutil::WarningCapture capture;
    const auto d = assemble(manifest);
    CHECK(capture.messages.size() == 1);
    REQUIRE(d.size() == 4);
    CHECK(d.samples[0].network_id == "a.com:1");
    CHECK(d.samples[0].bucket == SizeBucket::d0_100);
    CHECK(d.samples[1].bucket == SizeBucket::d100_1000);
    CHECK(d.samples[2].bucket == SizeBucket::d1000_inf);
    CHECK(d.samples[3].bucket == SizeBucket::d0_100);
    CHECK(d.samples[2].num_nodes == 5000);
    CHECK(d.samples[1].features.lwcc == 500);

    const auto hist = bucket_histogram(d);
    std::size_t total = 0;
    for (const auto& [bucket, count] : hist) total += count;
    CHECK(total == d.size());
    CHECK(hist.at(SizeBucket::d0_100) == 2);
    CHECK(d.restrict_to(SizeBucket::d0_100).size() == 2);
    CHECK(d.restrict_to(SizeBucket::all).size() == 4);

    DatasetFilter no_a;
    no_a.exclude_sources = {"a.com"};
    CHECK(assemble(CorpusManifest::read(dir / "manifest.csv", no_a)).size() == 3);
  }

  TEST_CASE("missing files are listed together") {
    const auto dir = testutil::scratch_dir("dataset_missing");
    std::vector<ManifestEntry> rows = {
        write_star(dir, "a.com:1", 5, Label::mainstream, Bias::left, 60),
        {"b.com:2", "nowhere/b.tsv", Label::mainstream, Bias::left, 60},
        {"c.com:3", "nowhere/c.tsv", Label::disinformation, Bias::left, 60},
    };
    append_manifest(dir / "manifest.csv", rows);
    const auto manifest = CorpusManifest::read(dir / "manifest.csv");
    const auto loaded = load_corpus(manifest);
    REQUIRE(loaded.size() == 3);
    CHECK(loaded[0].network.has_value());
    CHECK_FALSE(loaded[1].error.empty());
    try {
      assemble(manifest);
      FAIL("expected an InputError");
    } catch (const InputError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("nowhere/b.tsv") != std::string::npos);
      CHECK(msg.find("nowhere/c.tsv") != std::string::npos);
    }
  }

  TEST_CASE("feature table round-trip") {
    std::vector<Sample> rows = {sample("a.com:1", Label::mainstream, 10),
                                sample("b,c:2", Label::disinformation, 300),
                                sample("d:3", Label::unlabeled, 2)};
    rows[1].features.cc = 1.0 / 3.0;
    rows[1].bias = Bias::right;
    std::ostringstream out;
    write_feature_table(out, rows);
    CHECK(out.str().rfind("network_id,label,bias,n_nodes,scc,lscc,wcc,lwcc,dwcc,cc,kc\n", 0) == 0);
    const auto back = parse_feature_table(out.str());
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(back[i].network_id == rows[i].network_id);
      CHECK(back[i].label == rows[i].label);
      CHECK(back[i].bias == rows[i].bias);
      CHECK(back[i].num_nodes == rows[i].num_nodes);
      CHECK(back[i].bucket == rows[i].bucket);
      CHECK(back[i].features == rows[i].features);
    }
    CHECK_THROWS_AS(parse_feature_table("network_id,label\n"), FormatError);
    CHECK_THROWS_AS(
        parse_feature_table("network_id,label,bias,n_nodes,scc,lscc,wcc,lwcc,dwcc,cc,kc\n"
                            "a,mainstream,left,x,1,1,1,1,0,0,0\n"),
        FormatError);
  }

  TEST_CASE("distance matrix round-trip") {
    const auto dir = testutil::scratch_dir("dataset_matrix");
    DistanceMatrix m({"a", "b,x", "c"});
    m.set(0, 1, 0.125);
    m.set(0, 2, 1.0 / 3.0);
    m.set(1, 2, 2.5);
    write_distance_matrix(dir / "d.csv", m);
    const auto back = read_distance_matrix(dir / "d.csv");
    CHECK(back.ids() == m.ids());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
    CHECK_THROWS(parse_distance_matrix("network_id,a,b\na,0,1\nb,2,0\n"));
  }

  TEST_CASE("tables join into a labeled dataset") {
    std::vector<Sample> rows = {sample("a", Label::mainstream, 10), sample("b", Label::disinformation, 20),
                                sample("c", Label::mainstream, 200), sample("u", Label::unlabeled, 10)};
    DistanceMatrix m({"c", "b", "a"});
    m.set(0, 1, 3.0);
    m.set(0, 2, 4.0);
    m.set(1, 2, 5.0);

    testutil::WarningCapture capture;
    const auto d = dataset_from_table(rows, m, SizeBucket::d0_100);
    REQUIRE(d.size() == 2);
    REQUIRE(d.distances.has_value());
    CHECK(d.distances->ids() == std::vector<std::string>{"a", "b"});
    CHECK((*d.distances)(0, 1) == 5.0);
    CHECK_FALSE(capture.messages.empty());

    CHECK(dataset_from_table(rows).size() == 3);

    DistanceMatrix partial({"a", "c"});
    try {
      dataset_from_table(rows, partial);
      FAIL("expected an InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("dimension mismatch") != std::string::npos);
    }
    DistanceMatrix stranger({"a", "b", "c", "zzz"});
    CHECK_THROWS_AS(dataset_from_table(rows, stranger), InputError);
    rows.push_back(sample("a", Label::mainstream, 10));
    CHECK_THROWS_AS(dataset_from_table(rows), InputError);
  }
}
