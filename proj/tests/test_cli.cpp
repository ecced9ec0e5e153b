// End-to-end checks of the command line binary: exit codes, pipeable JSON,
// and the experiment file outputs. The binary path comes from the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <string>

#include "stretchlab/io.hpp"
#include "stretchlab/model.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(STRETCHLAB_BIN) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::trunc);
  f << body;
  REQUIRE(f.good());
}

}  // namespace

TEST_CASE("generate emits a parseable graph and honors --out") {
  const RunResult direct = run_cli("generate --n 30 --p 0.4 --seed 9");
  REQUIRE(direct.exit_code == 0);
  const stretchlab::EmbeddedGraph g = stretchlab::graph_from_json(direct.out);
  CHECK(g.n() == 30);
  CHECK(g.params.p == 0.4);
  CHECK(g.params.seed == 9);

  // byte-identical to the library generator's serialization
  const stretchlab::EmbeddedGraph lib = stretchlab::generate({30, 0.4, 9});
  CHECK(direct.out == stretchlab::graph_to_json(lib) + "\n");

  const RunResult to_file =
      run_cli("generate --n 30 --p 0.4 --seed 9 --out cli_graph_scratch.json");
  REQUIRE(to_file.exit_code == 0);
  CHECK(stretchlab::read_text_file("cli_graph_scratch.json") ==
        stretchlab::graph_to_json(lib));
}

TEST_CASE("generate then stretch round trips through files") {
  const RunResult gen =
      run_cli("generate --n 12 --p 1 --seed 4 --out cli_graph_scratch.json");
  REQUIRE(gen.exit_code == 0);

  const RunResult st = run_cli("stretch --in cli_graph_scratch.json");
  REQUIRE(st.exit_code == 0);
  const json rep = json::parse(st.out);
  CHECK(rep["defined"].get<bool>());
  CHECK(rep["stretch"].get<double>() == 1.0);
  CHECK(rep["pair"][0].get<int>() == 0);
  CHECK(rep["pair"][1].get<int>() == 1);
  fs::remove("cli_graph_scratch.json");
}

TEST_CASE("stretch reports undefined on a disconnected instance") {
  const RunResult gen =
      run_cli("generate --n 8 --p 0 --seed 4 --out cli_graph_scratch.json");
  REQUIRE(gen.exit_code == 0);
  const RunResult st = run_cli("stretch --in cli_graph_scratch.json");
  REQUIRE(st.exit_code == 0);
  const json rep = json::parse(st.out);
  CHECK(!rep["defined"].get<bool>());
  CHECK(rep["stretch"].is_null());
  fs::remove("cli_graph_scratch.json");
}

TEST_CASE("cli exit codes separate bad input from io failure") {
  // invalid model parameters
  CHECK(run_cli("generate --n 10 --p 1.5 --seed 1").exit_code == 2);
  // unknown flags / missing required flags
  CHECK(run_cli("generate --n 10").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  // unreadable input file
  CHECK(run_cli("stretch --in no_such_file.json").exit_code == 4);
  // readable but malformed graph document
  write_file("cli_bad_graph_scratch.json", "{\"n\": 3}");
  CHECK(run_cli("stretch --in cli_bad_graph_scratch.json").exit_code == 2);
  fs::remove("cli_bad_graph_scratch.json");
  // unwritable output target
  CHECK(run_cli("generate --n 4 --p 0.5 --seed 1 --out /no_dir/x.json")
            .exit_code == 4);
}

TEST_CASE("bounds evaluates thresholds from p or a p expression") {
  const RunResult res = run_cli("bounds --n 10000 --p 0.5 --lambda 10");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["n"].get<int>() == 10000);
  CHECK(doc["p"].get<double>() == 0.5);
  CHECK(doc["lower_threshold"].get<double>() ==
        doctest::Approx(std::sqrt(5000.0) / std::log(10000.0)));
  CHECK(doc["upper_bound"]["value"].get<double>() > 1.0);
  CHECK(doc["tail_bound"].get<double>() > 0.0);
  CHECK(doc["c"].get<double>() == doctest::Approx(0.0198));

  const RunResult expr =
      run_cli("bounds --n 10000 --p-expr power:2,1 --lambda 10");
  REQUIRE(expr.exit_code == 0);
  CHECK(json::parse(expr.out)["p"].get<double>() ==
        doctest::Approx(1.0 - 2.0 / 10000.0));

  // exactly one of --p / --p-expr
  CHECK(run_cli("bounds --n 100 --lambda 2").exit_code == 2);
  CHECK(run_cli("bounds --n 100 --p 0.5 --p-expr const:0.5 --lambda 2")
            .exit_code == 2);
  // expression value must be a probability at this n
  CHECK(run_cli("bounds --n 1 --p-expr power:2,1 --lambda 2").exit_code == 2);
}

TEST_CASE("experiment runs a config end to end and writes six tables") {
  const std::string prefix = "cli_exp_scratch";
  json cfg = {{"name", "cli-smoke"},
              {"n_grid", {25, 45}},
              {"p_expr", "const:0.6"},
              {"trials", 4},
              {"master_seed", 77},
              {"lambda_grid", {2.0}},
              {"w_choice", "log_n"},
              {"generator", "direct"},
              {"output_path", prefix}};
  write_file("cli_exp_cfg_scratch.json", cfg.dump());

  const RunResult res =
      run_cli("experiment --config cli_exp_cfg_scratch.json");
  REQUIRE(res.exit_code == 0);
  const char* suffixes[] = {"_records.csv",  "_records.json", "_summary.csv",
                            "_summary.json", "_report.csv",   "_report.json"};
  for (const char* s : suffixes) CHECK(fs::exists(prefix + s));

  // reruns are byte-stable; --threads must not perturb any output
  const std::string first =
      stretchlab::read_text_file(prefix + std::string("_records.csv"));
  const RunResult rerun =
      run_cli("experiment --config cli_exp_cfg_scratch.json --threads 3");
  REQUIRE(rerun.exit_code == 0);
  CHECK(stretchlab::read_text_file(prefix + std::string("_records.csv")) ==
        first);

  for (const char* s : suffixes) fs::remove(prefix + s);

  // config schema violations exit 2, missing file exits 4
  json bad = cfg;
  bad["trials"] = 0;
  write_file("cli_exp_cfg_scratch.json", bad.dump());
  CHECK(run_cli("experiment --config cli_exp_cfg_scratch.json").exit_code ==
        2);
  fs::remove("cli_exp_cfg_scratch.json");
  CHECK(run_cli("experiment --config cli_exp_cfg_scratch.json").exit_code ==
        4);
}

TEST_CASE("staged construction subcommand prints its trace") {
  const RunResult res = run_cli(
      "constructs three-phase --n 500 --p 0.2 --lambda 2 --seed 3 --c 0.02");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  REQUIRE(doc.is_object());
  CHECK(doc.size() == 7);
  CHECK(doc["c"].get<double>() == 0.02);
  CHECK(doc["lambda"].get<double>() == 2.0);
  CHECK(doc["conditioning_ok"].is_boolean());
  CHECK(doc["A"].is_array());
  CHECK(doc["disc_assignment"].is_array());
  CHECK(doc["two_vertex_discs"].is_array());
  CHECK(doc["nice_discs"].is_array());

  // without an explicit c the window pick must exist for this n
  CHECK(run_cli("constructs three-phase --n 101 --p 0.5 --lambda 2 --seed 1")
            .exit_code == 0);
  CHECK(run_cli("constructs three-phase --n 100 --p 0.5 --lambda 2 --seed 1")
            .exit_code == 2);
}
