#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  std::string cmd = std::string(FOLNAR_CLI) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char chunk[4096];
  std::size_t n = 0;
  while ((n = fread(chunk, 1, sizeof(chunk), pipe)) > 0)
    result.out.append(chunk, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("folnar_cli_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

const std::string kCard1Fol =
    "values_creativity(Jasiah)\n"
    "forall x ((loves_drawings(x) & values_creativity(x)) -> artistic(x))\n"
    "loves_drawings(Jones)\n"
    "loves_drawings(Jasiah)\n"
    "~innovative(Jasiah)\n";

const std::string kCard1Narsese =
    "<{Jasiah} --> values_creativity>.\n"
    "<<($1 --> loves_drawings) && ($1 --> values_creativity)> ==> "
    "<$1 --> artistic>>.\n"
    "<{Jones} --> loves_drawings>.\n"
    "<{Jasiah} --> loves_drawings>.\n"
    "(-- <{Jasiah} --> innovative>)?\n";

}  // namespace

TEST_CASE("cli compiles the worked example from a file") {
  auto path = write_file("card1.fol", kCard1Fol);
  auto r = run_cli("compile " + path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == kCard1Narsese);

  // Byte-for-byte deterministic across invocations.
  CHECK(run_cli("compile " + path.string()).out == r.out);
}

TEST_CASE("cli compiles inline premises with an explicit query") {
  auto r = run_cli(
      "compile -p \"values_creativity(Jasiah)\""
      " -p \"forall x ((loves_drawings(x) & values_creativity(x)) ->"
      " artistic(x))\""
      " -p \"loves_drawings(Jones)\" -p \"loves_drawings(Jasiah)\""
      " -q \"~innovative(Jasiah)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == kCard1Narsese);
}

TEST_CASE("cli compile emits single judgments and report blocks") {
  auto r = run_cli("compile -p \"p(a)\" -q \"q(a)\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "<{a} --> p>.\n<{a} --> q>?\n");

  r = run_cli("compile -p \"p(a)\" -q \"q(a)\" --report");
  CHECK(r.out.find("// fallback: none\n") != std::string::npos);
  CHECK(r.out.find("// premise 0 -> lines 0\n") != std::string::npos);

  auto out_path = scratch_dir() / "program.nar";
  r = run_cli("compile -p \"p(a)\" -q \"q(a)\" -o " + out_path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out_path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == "<{a} --> p>.\n<{a} --> q>?\n");
}

TEST_CASE("cli exit codes distinguish failure classes") {
  CHECK(run_cli("compile -p \"p(a) | q(a)\" -q \"p(a)\"").exit_code == 3);
  CHECK(run_cli("compile -p \"p(a\" -q \"p(a)\"").exit_code == 2);
  CHECK(run_cli("compile -q \"\"").exit_code == 2);
  CHECK(run_cli("stats /nonexistent/data.jsonl").exit_code == 5);
  CHECK(run_cli("run " + std::string(FOLNAR_SYNTH_CORPUS) +
                " --mode engine").exit_code == 4);

  auto r = run_cli("compile -p \"p(a) | q(a)\" -q \"p(a)\"", true);
  CHECK(r.out.find("premise 0") != std::string::npos);
}

TEST_CASE("cli oracle agrees across output formats") {
  auto path = write_file("card1o.fol", kCard1Fol);
  auto table = run_cli("oracle " + path.string());
  CHECK(table.exit_code == 0);
  CHECK(table.out ==
        "models     Uncertain\n"
        "chase      Uncertain\n"
        "agreement  agree\n");

  auto machine = run_cli("oracle " + path.string() + " --format json-lines");
  auto record = json::parse(machine.out);
  CHECK(record["models"] == "Uncertain");
  CHECK(record["chase"] == "Uncertain");
  CHECK(record["agreement"] == "agree");
}

TEST_CASE("cli run labels the bundled corpus with the chase oracle") {
  auto corpus = std::string(FOLNAR_SYNTH_CORPUS);
  auto table = run_cli("run " + corpus + " --mode chase");
  CHECK(table.exit_code == 0);
  auto rows = lines_of(table.out);
  REQUIRE(rows.size() == 30);
  CHECK(rows[0] == "syn-001\tTrue\t-");

  auto machine = run_cli("run " + corpus + " --mode chase --format json-lines");
  auto records = lines_of(machine.out);
  REQUIRE(records.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    auto record = json::parse(records[i]);
    auto expected = rows[i];
    CHECK(expected.find(record["id"].get<std::string>()) == 0);
    CHECK(expected.find("\t" + record["label"].get<std::string>() + "\t") !=
          std::string::npos);
  }
}

TEST_CASE("cli validate reports retention of the bundled corpus") {
  auto corpus = std::string(FOLNAR_SYNTH_CORPUS);
  auto table = run_cli("validate " + corpus + " --mode chase");
  CHECK(table.exit_code == 0);
  auto rows = lines_of(table.out);
  REQUIRE_FALSE(rows.empty());
  CHECK(rows.back() == "retained 28/30");

  std::size_t dropped = 0;
  for (const auto& row : rows)
    if (row.find("\tdropped") != std::string::npos) ++dropped;
  CHECK(dropped == 2);

  auto machine =
      run_cli("validate " + corpus + " --mode chase --format json-lines");
  auto records = lines_of(machine.out);
  REQUIRE(records.size() == 30);
  std::size_t retained = 0;
  for (const auto& line : records) {
    auto record = json::parse(line);
    if (record["retained"].get<bool>()) ++retained;
  }
  CHECK(retained == 28);

  auto parallel =
      run_cli("validate " + corpus + " --mode chase --jobs 4");
  CHECK(parallel.out == table.out);
}

TEST_CASE("cli stats matches across formats") {
  auto corpus = std::string(FOLNAR_SYNTH_CORPUS);
  auto table = run_cli("stats " + corpus);
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("dev") != std::string::npos);
  CHECK(table.out.find("total") != std::string::npos);

  auto machine = run_cli("stats " + corpus + " --format json-lines");
  auto records = lines_of(machine.out);
  REQUIRE(records.size() == 2);
  auto dev = json::parse(records[0]);
  auto total = json::parse(records[1]);
  CHECK(dev["split"] == "dev");
  CHECK(dev["easy"] == 10);
  CHECK(dev["medium"] == 10);
  CHECK(dev["hard"] == 10);
  CHECK(total["split"] == "total");
  CHECK(total["total"] == 30);
}

TEST_CASE("cli score closes the loop over run output") {
  auto corpus = std::string(FOLNAR_SYNTH_CORPUS);
  auto machine = run_cli("run " + corpus + " --mode chase --format json-lines");
  std::ostringstream preds;
  for (const auto& line : lines_of(machine.out)) {
    auto record = json::parse(line);
    json p;
    p["id"] = record["id"];
    p["label"] = record["label"];
    p["executed"] = true;
    preds << p.dump() << '\n';
  }
  auto pred_path = write_file("preds.jsonl", preds.str());

  auto r = run_cli("score " + corpus + " --predictions " + pred_path.string() +
                   " --format json-lines");
  CHECK(r.exit_code == 0);
  auto report = json::parse(r.out);
  CHECK(report["total"] == 30);
  // Oracle labels disagree with gold exactly on the two corrupted instances.
  CHECK(report["accuracy"].get<double>() == Catch::Approx(28.0 / 30.0));
  CHECK(report["execution_success_rate"].get<double>() == 1.0);
  CHECK(report["missing_predictions"].empty());

  auto unknown = write_file("ghost.jsonl",
                            "{\"id\":\"ghost\",\"label\":\"True\"}\n");
  CHECK(run_cli("score " + corpus + " --predictions " + unknown.string())
            .exit_code == 5);
}

TEST_CASE("cli engine mode accepts the flag or the environment variable") {
  auto corpus = std::string(FOLNAR_SYNTH_CORPUS);
  std::string engine_cmd =
      std::string(FOLNAR_FAKE_ENGINE) +
      " answer Answer: <{x} --> y>. Truth: frequency=1.000000 "
      "confidence=0.900000";

  auto flagged = run_cli("run " + corpus + " --jobs 4 --engine \"" +
                         engine_cmd + "\"");
  CHECK(flagged.exit_code == 0);
  auto rows = lines_of(flagged.out);
  REQUIRE(rows.size() == 30);
  for (const auto& row : rows)
    CHECK(row.find("\tTrue\t1.000000") != std::string::npos);

  setenv("NARS_ENGINE_PATH", engine_cmd.c_str(), 1);
  auto via_env = run_cli("run " + corpus + " --jobs 4");
  unsetenv("NARS_ENGINE_PATH");
  CHECK(via_env.out == flagged.out);
}
