#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "folnar/dataset/export.hpp"
#include "folnar/dataset/instance.hpp"
#include "folnar/dataset/io.hpp"
#include "folnar/dataset/score.hpp"
#include "folnar/dataset/stats.hpp"
#include "folnar/dataset/synthetic.hpp"
#include "folnar/dataset/validate.hpp"

using namespace folnar;
using namespace folnar::dataset;

namespace {

BenchmarkInstance make_inst(std::string id, int steps, Label gold,
                            std::vector<std::string> premises,
                            std::string conclusion) {
  BenchmarkInstance inst;
  inst.id = std::move(id);
  inst.steps = steps;
  inst.difficulty = difficulty_band(steps);
  inst.context_nl = "context for " + inst.id;
  inst.claim_nl = "claim for " + inst.id;
  inst.fol_premises = std::move(premises);
  inst.fol_conclusion = std::move(conclusion);
  inst.gold_label = gold;
  return inst;
}

BenchmarkInstance card1_instance() {
  BenchmarkInstance inst;
  inst.id = "card-1";
  inst.steps = 1;
  inst.difficulty = Difficulty::Easy;
  inst.context_nl =
      "Jasiah values creativity. Anyone who loves drawings and values "
      "creativity is artistic. Jones loves drawings. Jasiah loves drawings.";
  inst.claim_nl = "Jasiah is not innovative.";
  inst.fol_premises = {
      "values_creativity(Jasiah)",
      "forall x ((loves_drawings(x) & values_creativity(x)) -> artistic(x))",
      "loves_drawings(Jones)", "loves_drawings(Jasiah)"};
  inst.fol_conclusion = "~innovative(Jasiah)";
  inst.gold_label = Label::Uncertain;
  return inst;
}

std::string saved_bytes(const std::vector<BenchmarkInstance>& instances) {
  std::ostringstream out;
  save_instances(instances, out);
  return out.str();
}

std::vector<BenchmarkInstance> loaded(const std::string& text) {
  std::istringstream in(text);
  return load_instances(in);
}

}  // namespace

TEST_CASE("difficulty bands follow the step ranges") {
  CHECK(difficulty_band(1) == Difficulty::Easy);
  CHECK(difficulty_band(2) == Difficulty::Easy);
  CHECK(difficulty_band(3) == Difficulty::Medium);
  CHECK(difficulty_band(5) == Difficulty::Medium);
  CHECK(difficulty_band(6) == Difficulty::Hard);
  CHECK(difficulty_band(9) == Difficulty::Hard);
  CHECK_THROWS_AS(difficulty_band(0), std::invalid_argument);
  CHECK_THROWS_AS(difficulty_band(10), std::invalid_argument);
}

TEST_CASE("saved records use a fixed field order") {
  auto inst = make_inst("x-1", 1, Label::True, {"p(a)"}, "p(a)");
  CHECK(saved_bytes({inst}) ==
        "{\"id\":\"x-1\",\"difficulty\":\"easy\",\"steps\":1,"
        "\"context_nl\":\"context for x-1\",\"claim_nl\":\"claim for x-1\","
        "\"fol_premises\":[\"p(a)\"],\"fol_conclusion\":\"p(a)\","
        "\"gold_label\":\"True\"}\n");

  inst.split = "train";
  inst.narsese_program = {"<{a} --> p>."};
  inst.narsese_query = "<{a} --> p>?";
  inst.extras["origin"] = "unit-test";
  CHECK(saved_bytes({inst}) ==
        "{\"id\":\"x-1\",\"split\":\"train\",\"difficulty\":\"easy\","
        "\"steps\":1,\"context_nl\":\"context for x-1\","
        "\"claim_nl\":\"claim for x-1\",\"fol_premises\":[\"p(a)\"],"
        "\"fol_conclusion\":\"p(a)\",\"gold_label\":\"True\","
        "\"narsese_program\":[\"<{a} --> p>.\"],"
        "\"narsese_query\":\"<{a} --> p>?\",\"origin\":\"unit-test\"}\n");
}

TEST_CASE("load inverts save and unknown fields survive round trips") {
  auto a = make_inst("r-1", 2, Label::False, {"p(a)", "q(b)"}, "~p(b)");
  a.split = "test";
  auto b = make_inst("r-2", 7, Label::Uncertain, {"p(c)"}, "q(c)");
  b.extras["source_row"] = 41;
  b.extras["tags"] = {"alpha", "beta"};

  auto text = saved_bytes({a, b});
  auto back = loaded(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == a);
  CHECK(back[1] == b);
  CHECK(saved_bytes(back) == text);
}

TEST_CASE("unknown fields written by other tools are preserved") {
  auto insts = loaded(
      "{\"id\":\"z\",\"difficulty\":\"easy\",\"steps\":1,"
      "\"context_nl\":\"c\",\"claim_nl\":\"d\",\"fol_premises\":[],"
      "\"fol_conclusion\":\"p(a)\",\"gold_label\":\"True\","
      "\"upstream_id\":\"x17\",\"meta\":{\"depth\":3}}\n");
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].extras["upstream_id"] == "x17");
  CHECK(insts[0].extras["meta"]["depth"] == 3);
  CHECK(saved_bytes(insts).find("\"upstream_id\":\"x17\"") !=
        std::string::npos);
}

TEST_CASE("empty and blank-line files load cleanly") {
  CHECK(loaded("").empty());
  CHECK(loaded("\n  \n").empty());
  auto two = saved_bytes({make_inst("a", 1, Label::True, {}, "p(a)"),
                          make_inst("b", 1, Label::True, {}, "p(a)")});
  auto with_gap = two;
  auto pos = with_gap.find('\n');
  with_gap.insert(pos + 1, "\n");
  CHECK(loaded(with_gap).size() == 2);
}

TEST_CASE("worked example card loads with an uncertain gold label") {
  auto insts = loaded(saved_bytes({card1_instance()}));
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].gold_label == Label::Uncertain);
  CHECK(insts[0].fol_premises.size() == 4);
}

TEST_CASE("schema violations carry line numbers and field names") {
  auto base = [](const std::string& patch_key, const std::string& patch) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(
        "{\"id\":\"z\",\"difficulty\":\"easy\",\"steps\":1,"
        "\"context_nl\":\"c\",\"claim_nl\":\"d\",\"fol_premises\":[],"
        "\"fol_conclusion\":\"p(a)\",\"gold_label\":\"True\"}");
    if (patch == "__remove__") {
      j.erase(patch_key);
    } else if (!patch_key.empty()) {
      j[patch_key] = nlohmann::ordered_json::parse(patch);
    }
    return j.dump() + "\n";
  };

  auto expect_schema_error = [](const std::string& text,
                                std::size_t line, const std::string& field) {
    try {
      loaded(text);
      FAIL("expected SchemaError for: " << text);
    } catch (const SchemaError& e) {
      CHECK(e.line() == line);
      CHECK(e.field() == field);
    }
  };

  expect_schema_error(base("id", "__remove__"), 1, "id");
  expect_schema_error(base("steps", "\"one\""), 1, "steps");
  expect_schema_error(base("steps", "0"), 1, "steps");
  expect_schema_error(base("steps", "12"), 1, "steps");
  expect_schema_error(base("difficulty", "\"trivial\""), 1, "difficulty");
  expect_schema_error(base("gold_label", "\"Maybe\""), 1, "gold_label");
  expect_schema_error(base("fol_premises", "[3]"), 1, "fol_premises");
  expect_schema_error(base("fol_premises", "\"p(a)\""), 1, "fol_premises");
  expect_schema_error(base("narsese_program", "[\"not narsese\"]"), 1,
                      "narsese_program");
  expect_schema_error(base("narsese_query", "\"<{a} --> p>\""), 1,
                      "narsese_query");
  expect_schema_error(base("split", "7"), 1, "split");
  expect_schema_error("[1,2]\n", 1, "");
  expect_schema_error("{oops\n", 1, "");
  expect_schema_error(base("", "") + base("id", "__remove__"), 2, "id");

  // A record whose steps sit in a different band than its difficulty tag.
  expect_schema_error(base("steps", "4"), 1, "difficulty");
  CHECK_THROWS_AS(load_instances(std::string("/nonexistent/corpus.jsonl")),
                  SchemaError);
}

TEST_CASE("split statistics count by tag and difficulty") {
  CHECK(stats({}).overall == DifficultyCounts{});

  std::vector<BenchmarkInstance> six = {
      make_inst("a", 1, Label::True, {}, "p(a)"),
      make_inst("b", 2, Label::True, {}, "p(a)"),
      make_inst("c", 3, Label::True, {}, "p(a)"),
      make_inst("d", 4, Label::True, {}, "p(a)"),
      make_inst("e", 6, Label::True, {}, "p(a)"),
      make_inst("f", 9, Label::True, {}, "p(a)")};
  auto s = stats(six);
  CHECK(s.overall == DifficultyCounts{2, 2, 2});
  CHECK(s.by_split.empty());

  for (std::size_t i = 0; i < 4; ++i) six[i].split = "train";
  six[4].split = "test";
  six[5].split = "test";
  s = stats(six);
  CHECK(s.by_split.at("train") == DifficultyCounts{2, 2, 0});
  CHECK(s.by_split.at("test") == DifficultyCounts{0, 0, 2});
  CHECK(s.overall.total() == 6);
}

TEST_CASE("chase validation executes the worked example as uncertain") {
  auto outcomes = validate({card1_instance()}, ValidationMode::Chase);
  REQUIRE(outcomes.size() == 1);
  REQUIRE(outcomes[0].executed_label.has_value());
  CHECK(*outcomes[0].executed_label == Label::Uncertain);
  CHECK(outcomes[0].retained);
  CHECK(outcomes[0].provenance == "chase");
  CHECK(outcomes[0].error.empty());
}

TEST_CASE("unsupported claims fail validation without aborting the batch") {
  auto good = make_inst("ok", 1, Label::True,
                        {"p(a)", "forall x (p(x) -> q(x))"}, "q(a)");
  auto bad_fol = make_inst("bad-fol", 1, Label::True, {"p(a) ->"}, "p(a)");
  auto bad_pattern =
      make_inst("bad-pattern", 1, Label::True, {"p(a) | q(a)"}, "p(a)");

  auto outcomes =
      validate({good, bad_fol, bad_pattern}, ValidationMode::Chase);
  REQUIRE(outcomes.size() == 3);
  // Sorted by id: bad-fol, bad-pattern, ok.
  CHECK(outcomes[0].id == "bad-fol");
  CHECK_FALSE(outcomes[0].retained);
  CHECK_FALSE(outcomes[0].executed_label.has_value());
  CHECK_FALSE(outcomes[0].error.empty());
  CHECK(outcomes[1].id == "bad-pattern");
  CHECK_FALSE(outcomes[1].retained);
  CHECK(outcomes[1].error.find("premise") != std::string::npos);
  CHECK(outcomes[2].id == "ok");
  CHECK(outcomes[2].retained);
}

TEST_CASE("gold true with a premise-free conclusion is dropped") {
  auto inst = make_inst("free", 1, Label::True, {}, "p(a)");
  auto outcomes = validate({inst}, ValidationMode::Models);
  REQUIRE(outcomes.size() == 1);
  CHECK(*outcomes[0].executed_label == Label::Uncertain);
  CHECK_FALSE(outcomes[0].retained);
}

TEST_CASE("ten instances with two corrupted golds retain exactly eight") {
  auto corpus = make_synthetic_corpus();
  std::vector<BenchmarkInstance> ten(corpus.begin() + 10,
                                     corpus.begin() + 20);
  ten[3].gold_label = dataset::detail::flip_label(ten[3].gold_label);
  ten[7].gold_label = dataset::detail::flip_label(ten[7].gold_label);

  auto outcomes = validate(ten, ValidationMode::Chase);
  std::size_t retained = 0;
  for (const auto& o : outcomes) retained += o.retained ? 1 : 0;
  CHECK(retained == 8);
}

TEST_CASE("validation order and results are independent of job count") {
  auto corpus = make_synthetic_corpus();
  std::reverse(corpus.begin(), corpus.end());
  auto serial = validate(corpus, ValidationMode::Chase, {}, 1);
  auto parallel = validate(corpus, ValidationMode::Chase, {}, 4);
  REQUIRE(serial.size() == parallel.size());
  CHECK(std::is_sorted(serial.begin(), serial.end(),
                       [](const auto& a, const auto& b) { return a.id < b.id; }));
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].id == parallel[i].id);
    CHECK(serial[i].executed_label == parallel[i].executed_label);
    CHECK(serial[i].retained == parallel[i].retained);
  }
}

TEST_CASE("engine-mode validation drives the external process") {
  auto inst = make_inst("live", 1, Label::True,
                        {"p(a)", "forall x (p(x) -> q(x))"}, "q(a)");
  engine::EngineConfig cfg;
  cfg.executable_path =
      std::string(FOLNAR_FAKE_ENGINE) +
      " answer Answer: <{a} --> q>. Truth: frequency=1.000000 "
      "confidence=0.900000";
  auto outcomes = validate({inst}, ValidationMode::Engine, cfg);
  REQUIRE(outcomes.size() == 1);
  CHECK(*outcomes[0].executed_label == Label::True);
  CHECK(outcomes[0].retained);
  CHECK(outcomes[0].provenance == "engine");
  REQUIRE(outcomes[0].verdict.has_value());
  CHECK(outcomes[0].verdict->answered);

  cfg.executable_path = std::string(FOLNAR_FAKE_ENGINE) + " silent";
  outcomes = validate({inst}, ValidationMode::Engine, cfg);
  CHECK(*outcomes[0].executed_label == Label::Uncertain);
  CHECK_FALSE(outcomes[0].retained);

  cfg.executable_path = "/nonexistent/engine";
  outcomes = validate({inst}, ValidationMode::Engine, cfg);
  CHECK_FALSE(outcomes[0].executed_label.has_value());
  CHECK_FALSE(outcomes[0].retained);
  CHECK_FALSE(outcomes[0].error.empty());
}

TEST_CASE("hand-computed six-instance score is reproduced exactly") {
  // Gold (T,T,F,F,U,U) against predictions (T,F,F,U,U,U). Confusion, per
  // class precision/recall, and the macro mean were worked out on paper
  // before this test existed; the assertions pin those numbers.
  std::vector<BenchmarkInstance> instances = {
      make_inst("i1", 1, Label::True, {}, "p(a)"),
      make_inst("i2", 1, Label::True, {}, "p(a)"),
      make_inst("i3", 1, Label::False, {}, "p(a)"),
      make_inst("i4", 1, Label::False, {}, "p(a)"),
      make_inst("i5", 1, Label::Uncertain, {}, "p(a)"),
      make_inst("i6", 1, Label::Uncertain, {}, "p(a)")};
  std::map<std::string, Label> predictions = {
      {"i1", Label::True},      {"i2", Label::False},
      {"i3", Label::False},     {"i4", Label::Uncertain},
      {"i5", Label::Uncertain}, {"i6", Label::Uncertain}};

  auto report = score(predictions, instances);
  CHECK(report.overall_accuracy == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  // Rows gold, columns predicted, both ordered True/False/Uncertain.
  CHECK(report.confusion[0] == std::array<std::size_t, 3>{1, 1, 0});
  CHECK(report.confusion[1] == std::array<std::size_t, 3>{0, 1, 1});
  CHECK(report.confusion[2] == std::array<std::size_t, 3>{0, 0, 2});
  CHECK(report.per_class[0].f1 == Catch::Approx(2.0 / 3.0));
  CHECK(report.per_class[1].f1 == Catch::Approx(1.0 / 2.0));
  CHECK(report.per_class[2].f1 == Catch::Approx(4.0 / 5.0));
  CHECK(report.macro_f1 == Catch::Approx(59.0 / 90.0).epsilon(1e-12));
}

TEST_CASE("perfect predictions give unit scores and a diagonal confusion") {
  std::vector<BenchmarkInstance> instances = {
      make_inst("i1", 1, Label::True, {}, "p(a)"),
      make_inst("i2", 3, Label::False, {}, "p(a)"),
      make_inst("i3", 6, Label::Uncertain, {}, "p(a)")};
  std::map<std::string, Label> predictions = {{"i1", Label::True},
                                              {"i2", Label::False},
                                              {"i3", Label::Uncertain}};
  std::map<std::string, bool> exec = {
      {"i1", true}, {"i2", true}, {"i3", true}};
  auto report = score(predictions, instances, exec);
  CHECK(report.overall_accuracy == 1.0);
  CHECK(report.macro_f1 == 1.0);
  CHECK(report.execution_success_rate == 1.0);
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t p = 0; p < 3; ++p)
      CHECK(report.confusion[g][p] == (g == p ? 1u : 0u));
  CHECK(report.accuracy_by_difficulty ==
        std::array<double, 3>{1.0, 1.0, 1.0});
}

TEST_CASE("missing predictions default to uncertain and are recorded") {
  std::vector<BenchmarkInstance> instances = {
      make_inst("i1", 1, Label::Uncertain, {}, "p(a)"),
      make_inst("i2", 1, Label::True, {}, "p(a)")};
  auto report = score({}, instances);
  CHECK(report.overall_accuracy == Catch::Approx(0.5));
  CHECK(report.missing_predictions ==
        std::vector<std::string>{"i1", "i2"});
}

TEST_CASE("predictions and flags for unknown ids are rejected") {
  std::vector<BenchmarkInstance> instances = {
      make_inst("i1", 1, Label::True, {}, "p(a)")};
  CHECK_THROWS_AS(score({{"ghost", Label::True}}, instances), UnknownId);
  CHECK_THROWS_AS(score({}, instances, {{"ghost", true}}), UnknownId);
  try {
    score({{"ghost", Label::True}}, instances);
  } catch (const UnknownId& e) {
    CHECK(e.id() == "ghost");
  }
}

TEST_CASE("accuracy splits by difficulty band") {
  std::vector<BenchmarkInstance> instances = {
      make_inst("e1", 1, Label::True, {}, "p(a)"),
      make_inst("e2", 2, Label::True, {}, "p(a)"),
      make_inst("m1", 4, Label::False, {}, "p(a)"),
      make_inst("h1", 8, Label::Uncertain, {}, "p(a)")};
  std::map<std::string, Label> predictions = {{"e1", Label::True},
                                              {"e2", Label::False},
                                              {"m1", Label::False},
                                              {"h1", Label::True}};
  auto report = score(predictions, instances);
  CHECK(report.accuracy_by_difficulty[0] == Catch::Approx(0.5));
  CHECK(report.accuracy_by_difficulty[1] == 1.0);
  CHECK(report.accuracy_by_difficulty[2] == 0.0);
  CHECK(report.overall_accuracy == Catch::Approx(0.5));

  std::size_t sum = 0;
  for (const auto& row : report.confusion)
    for (auto cell : row) sum += cell;
  CHECK(sum == instances.size());
}

TEST_CASE("execution success rate counts flagged instances") {
  std::vector<BenchmarkInstance> instances = {
      make_inst("i1", 1, Label::True, {}, "p(a)"),
      make_inst("i2", 1, Label::True, {}, "p(a)"),
      make_inst("i3", 1, Label::True, {}, "p(a)"),
      make_inst("i4", 1, Label::True, {}, "p(a)")};
  std::map<std::string, bool> exec = {
      {"i1", true}, {"i2", false}, {"i3", true}};
  auto report = score({}, instances, exec);
  CHECK(report.execution_success_rate == Catch::Approx(0.5));
}

TEST_CASE("classification export writes letter labels") {
  std::vector<BenchmarkInstance> instances = {
      make_inst("i1", 1, Label::True, {}, "p(a)"),
      make_inst("i2", 1, Label::False, {}, "p(a)"),
      make_inst("i3", 1, Label::Uncertain, {}, "p(a)")};
  instances[0].context_nl = "ctx one";
  instances[0].claim_nl = "claim one";
  std::ostringstream out;
  export_classification(instances, out);
  auto text = out.str();
  CHECK(text.find("{\"context_nl\":\"ctx one\",\"claim_nl\":\"claim one\","
                  "\"label\":\"A\"}\n") != std::string::npos);
  CHECK(text.find("\"label\":\"B\"") != std::string::npos);
  CHECK(text.find("\"label\":\"C\"") != std::string::npos);

  for (Label l : {Label::True, Label::False, Label::Uncertain})
    CHECK(label_from_letter(to_letter(l)) == l);
}

TEST_CASE("bundled corpus is balanced and matches the checked-in file") {
  auto corpus = make_synthetic_corpus();
  REQUIRE(corpus.size() == 30);
  auto s = stats(corpus);
  CHECK(s.overall == DifficultyCounts{10, 10, 10});

  std::set<std::string> ids;
  for (const auto& inst : corpus) ids.insert(inst.id);
  CHECK(ids.size() == 30);

  std::ifstream file(FOLNAR_SYNTH_CORPUS, std::ios::binary);
  REQUIRE(file.good());
  std::stringstream disk;
  disk << file.rdbuf();
  CHECK(saved_bytes(corpus) == disk.str());
}

TEST_CASE("bundled corpus labels come from the oracles") {
  auto corpus = make_synthetic_corpus();
  std::size_t corrupted = 0;
  for (const auto& inst : corpus) {
    compiler::CompileUnit unit;
    for (const auto& p : inst.fol_premises)
      unit.premises.push_back(fol::parse_fol(p));
    unit.conclusion = fol::parse_fol(inst.fol_conclusion);
    Label models = oracle::entail_models(unit);
    auto report = compiler::compile_unit(unit);
    Label chase =
        oracle::chase_compiled(report.program, oracle::unit_constants(unit));
    CHECK(models == chase);
    if (inst.gold_label != models) {
      ++corrupted;
      CHECK(inst.extras.contains("corrupted"));
    }
  }
  CHECK(corrupted == 2);
}

TEST_CASE("chase validation of the bundled corpus retains 28 of 30") {
  auto corpus = make_synthetic_corpus();
  auto outcomes = validate(corpus, ValidationMode::Chase);
  std::vector<std::string> dropped;
  for (const auto& o : outcomes)
    if (!o.retained) dropped.push_back(o.id);
  CHECK(dropped == std::vector<std::string>{"syn-007", "syn-022"});

  // Strengthening-free corpus: the model oracle must drop the same two.
  auto via_models = validate(corpus, ValidationMode::Models);
  std::vector<std::string> dropped_models;
  for (const auto& o : via_models)
    if (!o.retained) dropped_models.push_back(o.id);
  CHECK(dropped_models == dropped);
}
