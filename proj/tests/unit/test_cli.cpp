#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "graphforge/arch.hpp"
#include "graphforge/batch.hpp"
#include "graphforge/graph_io.hpp"

using namespace graphforge;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "graphforge-cli-test";

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::string& args) {
  fs::create_directories(kWork);
  const fs::path out = kWork / "stdout.txt", err = kWork / "stderr.txt";
  const std::string command =
      std::string(GRAPHFORGE_CLI_PATH) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(command.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text_file(out);
  r.err = read_text_file(err);
  return r;
}

std::string path(const std::string& name) { return (kWork / name).string(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 1") {
    CHECK(run("").code == 1);
    CHECK(run("gen --family rdag -n 10 --bogus").code == 1);
    CHECK(run("gen -n 10").code == 1);
    const auto bad = run("gen --family lattice -n 10");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("lattice") != std::string::npos);
    CHECK(run("analyze --graph /nonexistent/graph.json").code == 1);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("malformed input exits with 2") {
    write_file_atomic(kWork / "broken.json", "{\"n\": 3");
    CHECK(run("analyze --graph " + path("broken.json")).code == 2);
  }

  TEST_CASE("presets listing") {
    const auto r = run("presets");
    CHECK(r.code == 0);
    CHECK(r.out.find("paper-cifar10") != std::string::npos);
    CHECK(r.out.find("1020") != std::string::npos);
  }

  TEST_CASE("gen, analyze and export reproduce the batch output") {
    const std::uint64_t root = 31;
    const auto manifest = expand_preset("smoke", root);
    const fs::path batch_dir = kWork / "batch";
    fs::remove_all(batch_dir);
    REQUIRE(run("batch -q --preset smoke --threads 2 --root-seed 31 --out-dir " + batch_dir.string()).code == 0);

    const BatchEntry* rdag = nullptr;
    const BatchEntry* ws = nullptr;
    for (const auto& e : manifest.entries) {
      if (!rdag && e.family == "rdag" && e.params.at("out_degree") == 3) rdag = &e;
      if (!ws && e.family == "ws") ws = &e;
    }
    REQUIRE(rdag != nullptr);
    REQUIRE(ws != nullptr);

    const std::string rdag_graph = path(rdag->name + ".json");
    REQUIRE(run("gen --family rdag -n 14 --f exp2 --out-degree 3 --B 5 --alpha 0.5 --seed " +
                std::to_string(rdag->seed) + " -o " + rdag_graph)
                .code == 0);
    CHECK(read_text_file(rdag_graph) == read_text_file(batch_dir / rdag->output));

    const auto analyzed = run("analyze --graph " + rdag_graph);
    CHECK(analyzed.code == 0);
    CHECK(analyzed.out == read_text_file(batch_dir / "features" / (rdag->name + ".csv")));

    const auto exported = run("export --graph " + rdag_graph);
    CHECK(exported.code == 0);
    CHECK(exported.out == read_text_file(batch_dir / "specs" / (rdag->name + ".json")));

    const std::string ws_graph = path(ws->name + ".json");
    REQUIRE(run("gen --family ws -n 14 --k 4 --p 0.2 --seed " + std::to_string(ws->seed) + " -o " + ws_graph).code ==
            0);
    CHECK(read_text_file(ws_graph) == read_text_file(batch_dir / ws->output));
  }

  TEST_CASE("raw graph, dagify and ablate compose") {
    REQUIRE(run("gen --family er -n 20 --p 0.3 --seed 4 --raw -o " + path("raw.json")).code == 0);
    const auto raw = read_graph_file(kWork / "raw.json");
    CHECK(raw.stages.empty());
    REQUIRE(run("dagify --graph " + path("raw.json") + " --embedding-out " + path("layout.csv") + " -o " +
                path("dag.json"))
                .code == 0);
    CHECK(read_text_file(kWork / "layout.csv").rfind("node,x,y,stress\n", 0) == 0);
    const Dag d = read_graph_file(kWork / "dag.json").to_dag();
    CHECK(validate_dag(d).ok());
    REQUIRE(run("ablate --graph " + path("dag.json") + " -o " + path("ablated.json")).code == 0);
    const auto ablated = read_graph_file(kWork / "ablated.json");
    CHECK(ablated.meta.family == "bottleneck");
    CHECK(ablated.meta.params.at("base") == "er");
    CHECK(ablated.to_dag() == bottleneck_ablation(d));
    const auto spec = run("export --graph " + path("ablated.json") + " --num-classes 100");
    REQUIRE(spec.code == 0);
    CHECK(parse_archspec_json(spec.out).channels.num_classes == 100);
  }

  TEST_CASE("export rejects an unattainable budget") {
    REQUIRE(run("gen --family rdag -n 10 --seed 1 -o " + path("small.json")).code == 0);
    const auto r = run("export --graph " + path("small.json") + " --target-params 10");
    CHECK(r.code == 2);
    CHECK(r.err.find("below") != std::string::npos);
  }
}
