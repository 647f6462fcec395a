#include <doctest.h>

#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "graphforge/batch.hpp"
#include "graphforge/error.hpp"

using namespace graphforge;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("graphforge-test-" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& item : fs::recursive_directory_iterator(root)) {
    if (item.is_regular_file()) files[fs::relative(item.path(), root).string()] = read_text_file(item.path());
  }
  return files;
}

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_SUITE("presets") {
  TEST_CASE("catalog sizes") {
    CHECK(preset_names() == std::vector<std::string>{"paper-cifar10", "paper-cifar100", "smoke"});
    const auto cifar10 = expand_preset("paper-cifar10", 0);
    CHECK(cifar10.entries.size() == 1020);
    std::size_t small = 0, large = 0;
    std::map<std::string, std::size_t> by_family;
    for (const auto& e : cifar10.entries) {
      (e.params.at("n") == 30 ? small : large) += 1;
      ++by_family[e.family];
    }
    CHECK(small == 475);
    CHECK(large == 545);
    CHECK(by_family["bottleneck"] == 150);
    CHECK(by_family["fmri"] == 70);
    CHECK(expand_preset("paper-cifar100", 0).entries.size() == 450);
    CHECK(expand_preset("smoke", 0).entries.size() == 18);
    CHECK_THROWS_AS(expand_preset("nope", 0), InvalidArgument);
  }

  TEST_CASE("entries are unique and seeded from the root") {
    const auto a = expand_preset("paper-cifar10", 1);
    const auto b = expand_preset("paper-cifar10", 2);
    CHECK_NOTHROW(validate_manifest(a));
    std::set<std::string> names;
    for (const auto& e : a.entries) names.insert(e.name);
    CHECK(names.size() == a.entries.size());
    CHECK(a.entries[0].name == b.entries[0].name);
    CHECK(a.entries[0].seed != b.entries[0].seed);
    CHECK(expand_preset("paper-cifar10", 1).entries[5].seed == a.entries[5].seed);
  }

  TEST_CASE("bottleneck entries share the base seed") {
    const auto m = expand_preset("smoke", 3);
    const BatchEntry* ablated = nullptr;
    for (const auto& e : m.entries)
      if (e.family == "bottleneck" && !ablated) ablated = &e;
    REQUIRE(ablated != nullptr);
    nlohmann::json base = ablated->params;
    base.erase("base");
    REQUIRE(ablated->name.ends_with("_v0"));
    CHECK(ablated->seed == entry_seed(3, "rdag", base, 0));
  }

  TEST_CASE("duplicates are rejected") {
    auto m = expand_preset("smoke", 0);
    m.entries.push_back(m.entries.front());
    CHECK_THROWS_AS(validate_manifest(m), InvalidArgument);
    m.entries.back().name = "renamed";
    CHECK_THROWS_AS(validate_manifest(m), InvalidArgument);
  }
}

TEST_SUITE("building") {
  TEST_CASE("every family yields a valid staged DAG") {
    for (const auto& e : expand_preset("smoke", 9).entries) {
      const auto result = process_entry(e);
      const Dag d = result.graph.to_dag();
      CHECK(validate_dag(d).ok());
      CHECK(d.has_stages());
      CHECK(result.graph.meta.seed == e.seed);
      CHECK(result.spec.predicted_params == param_count(d, result.spec.channels));
      CHECK(result.features.depth >= 1);
    }
  }

  TEST_CASE("unknown family") {
    CHECK_THROWS_AS(build_graph("grid", {{"n", 10}}, 1), InvalidArgument);
    CHECK_THROWS_AS(build_graph("fmri", {{"n", 10}, {"threshold", 2.0}, {"source", "file"}}, 1), InvalidArgument);
  }
}

TEST_SUITE("batch runs") {
  TEST_CASE("empty manifest writes header-only tables") {
    TempDir dir("empty");
    const auto summary = run_batch(BatchManifest{"empty", 0, {}}, dir.path, {1});
    CHECK(summary.total == 0);
    CHECK(summary.ok());
    CHECK(read_text_file(dir.path / "summary.csv") == feature_record_header() + "\n");
    CHECK(read_text_file(dir.path / "failures.csv") == "graph,family,seed,error\n");
  }

  TEST_CASE("smoke batch is byte-identical across runs and thread counts") {
    const auto manifest = expand_preset("smoke", 2024);
    TempDir one("one"), again("again"), four("four");
    const auto s1 = run_batch(manifest, one.path, {1});
    run_batch(manifest, again.path, {1});
    run_batch(manifest, four.path, {4});
    CHECK(s1.ok());
    CHECK(s1.succeeded == 18);
    const auto files = snapshot(one.path);
    CHECK(files.size() == 4 + 3 * 18);
    CHECK(files == snapshot(again.path));
    CHECK(files == snapshot(four.path));

    const std::string summary = files.at("summary.csv");
    CHECK(line_count(summary) == 19);
    for (const auto& e : manifest.entries) {
      const std::string prefix = e.name + "," + e.family + "," + std::to_string(e.seed) + ",";
      CHECK(summary.find("\n" + prefix) != std::string::npos);
      const auto graph = parse_graph_json(files.at("graphs/" + e.name + ".json"));
      CHECK(graph.meta.seed == e.seed);
      CHECK(files.at("features/" + e.name + ".csv").find(prefix) != std::string::npos);
    }
    CHECK(nlohmann::json::parse(files.at("manifest.json"))["entries"].size() == 18);
  }

  TEST_CASE("a failing entry is recorded and the rest complete") {
    auto manifest = expand_preset("smoke", 5);
    manifest.entries.resize(3);
    manifest.entries.push_back({"empty_er", "er", {{"n", 10}, {"p", 0.0}}, 77, "graphs/empty_er.json"});
    TempDir dir("failure");
    const auto summary = run_batch(manifest, dir.path, {2});
    CHECK(summary.total == 4);
    CHECK(summary.succeeded == 3);
    REQUIRE(summary.failures.size() == 1);
    CHECK(summary.failures[0].name == "empty_er");
    const std::string failures = read_text_file(dir.path / "failures.csv");
    CHECK(failures.find("\nempty_er,er,77,\"") != std::string::npos);
    CHECK_FALSE(fs::exists(dir.path / "graphs/empty_er.json"));
    CHECK(line_count(read_text_file(dir.path / "summary.csv")) == 4);
  }

  TEST_CASE("progress reports every entry") {
    auto manifest = expand_preset("smoke", 5);
    manifest.entries.resize(4);
    TempDir dir("progress");
    std::size_t calls = 0, last = 0;
    BatchOptions options{2};
    options.progress = [&](std::size_t done, std::size_t total, const BatchEntry&, bool) {
      ++calls;
      CHECK(total == 4);
      CHECK(done > last);
      last = done;
    };
    run_batch(manifest, dir.path, options);
    CHECK(calls == 4);
    CHECK(last == 4);
  }
}
