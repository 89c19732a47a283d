#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "solspace/errors.hpp"
#include "solspace/harness.hpp"
#include "solspace/scaling.hpp"

using namespace solspace;
namespace fs = std::filesystem;

namespace {

std::string scratch_dir() {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("solspace-harness-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
  fs::create_directories(p);
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
  size_t count = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++count;
  return count;
}

ExperimentConfig small_shatter(const std::string& out) {
  ExperimentConfig c;
  c.experiment = "shatter";
  c.n = 25;
  c.alpha = 3.5;
  c.probes = 20;
  c.seeds_per_size = 4;
  c.master_seed = 11;
  c.output_dir = out;
  return c;
}

}  // namespace

TEST_CASE("data files are byte-identical across worker counts") {
  std::string out = scratch_dir();

  ExperimentConfig c = small_shatter(out);
  c.workers = 1;
  RunRecord serial = run(c);
  c.workers = 4;
  RunRecord pooled = run(c);
  CHECK(serial.data_csv == pooled.data_csv);
  CHECK(serial.data_json == pooled.data_json);
  CHECK(serial.run_dir != pooled.run_dir);

  ExperimentConfig x;
  x.experiment = "xortest";
  x.n = 14;
  x.alpha = 3.0;
  x.triples = 40;
  x.seeds_per_size = 3;
  x.master_seed = 2;
  x.output_dir = out;
  x.workers = 1;
  RunRecord a = run(x);
  x.workers = 3;
  RunRecord b = run(x);
  CHECK(a.data_csv == b.data_csv);
  CHECK(a.data_json == b.data_json);

  ExperimentConfig s;
  s.experiment = "scaling";
  s.sizes = {12, 16, 20};
  s.alpha = 5.5;
  s.seeds_per_size = 3;
  s.budget = 100000;
  s.master_seed = 3;
  s.output_dir = out;
  s.workers = 1;
  RunRecord sa = run(s);
  s.workers = 4;
  RunRecord sb = run(s);
  CHECK(sa.data_csv == sb.data_csv);
  CHECK(sa.data_json == sb.data_json);
}

TEST_CASE("shatter runs emit one cluster-statistics row per seed") {
  std::string out = scratch_dir();
  ExperimentConfig c = small_shatter(out);
  c.seeds_per_size = 5;
  c.probes = 15;
  RunRecord r = run(c);
  CHECK(r.data_csv.rfind("n,seed,probes_run,solutions,clusters,intra_mean,"
                         "intra_diameter,inter_mean,ratio,inter_over_n,tau",
                         0) == 0);
  CHECK(count_occurrences(r.data_csv, "\n") == 6);
  REQUIRE(r.items.size() == 5);
  for (const auto& it : r.items) CHECK(it.ok);
}

TEST_CASE("timing never enters the data files") {
  std::string out = scratch_dir();
  ExperimentConfig c = small_shatter(out);
  c.seeds_per_size = 2;
  c.probes = 10;
  RunRecord r = run(c);
  CHECK(r.data_csv.find("wall") == std::string::npos);
  CHECK(r.data_csv.find("seconds") == std::string::npos);
  CHECK(r.data_json.find("wall") == std::string::npos);
  CHECK(r.wall_seconds >= 0.0);
  std::string runj = slurp(fs::path(r.run_dir) / "run.json");
  CHECK(runj.find("wall_seconds") != std::string::npos);
}

TEST_CASE("config text round-trips through emit and parse") {
  ExperimentConfig c;
  CHECK(parse_config(emit_config(c)) == c);

  c.experiment = "scaling";
  c.family = "tseitin";
  c.sizes = {16, 36, 64};
  c.charge = "even";
  c.budget = 123456789;
  c.master_seed = 0xdeadbeefcafe;
  c.workers = 8;
  c.tau = 7;
  c.fraction = 0.0125;
  c.output_dir = "runs/elsewhere";
  CHECK(parse_config(emit_config(c)) == c);

  ExperimentConfig d = parse_config(emit_config(c));
  d.triples += 1;
  CHECK_FALSE(d == c);
}

TEST_CASE("parse accepts partial configs and fills defaults") {
  ExperimentConfig c = parse_config(R"({"experiment": "xortest", "n": 50})");
  CHECK(c.experiment == "xortest");
  CHECK(c.n == 50);
  CHECK(c.alpha == 4.0);
  CHECK(c.schema_version == 1);
  CHECK(c.workers == 1);
  CHECK(c.sizes.empty());
}

TEST_CASE("parse rejects malformed configs") {
  CHECK_THROWS_AS(parse_config("not json at all"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("[1, 2, 3]"), InvalidParameter);
  CHECK_THROWS_AS(parse_config(R"({"experiment": "gen", "bogus_key": 1})"),
                  InvalidParameter);
  CHECK_THROWS_AS(parse_config(R"({"n": "fifty"})"), InvalidParameter);
  CHECK_THROWS_AS(parse_config(R"({"sizes": [10, "x"]})"), InvalidParameter);
  CHECK_THROWS_AS(parse_config(R"({"experiment": 7})"), InvalidParameter);

  try {
    parse_config(R"({"experiment": "gen", "bogus_key": 1})");
    FAIL("expected a throw");
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
}

TEST_CASE("validation rejects bad configs before any work happens") {
  std::string out = scratch_dir();

  auto rejected = [&](ExperimentConfig c, const std::string& needle) {
    c.output_dir = out;
    try {
      run(c);
      FAIL_CHECK("accepted config that should fail on: ", needle);
    } catch (const InvalidParameter& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
    CHECK(fs::exists(fs::path(out) / c.experiment) == false);
  };

  ExperimentConfig c;
  c.experiment = "homology";
  c.n = 30;
  rejected(c, "n <= 24");

  c = ExperimentConfig{};
  c.experiment = "telepathy";
  c.n = 10;
  rejected(c, "experiment");

  c = ExperimentConfig{};
  c.experiment = "scaling";
  rejected(c, "sizes");

  c = ExperimentConfig{};
  c.experiment = "scaling";
  c.family = "tseitin";
  c.sizes = {16, 17};
  rejected(c, "4*m^2");

  c = ExperimentConfig{};
  c.experiment = "scaling";
  c.sizes = {20, 20};
  rejected(c, "ascending");

  c = ExperimentConfig{};
  c.experiment = "shatter";
  c.n = 20;
  c.fraction = 1.0;
  rejected(c, "fraction");

  c = ExperimentConfig{};
  c.experiment = "gen";
  c.n = 10;
  c.workers = 0;
  rejected(c, "workers");
  c.workers = 65;
  rejected(c, "workers");

  c = ExperimentConfig{};
  c.experiment = "solve";
  c.n = 10;
  c.budget = 0;
  rejected(c, "budget");

  c = ExperimentConfig{};
  c.experiment = "gen";
  c.family = "tseitin";
  c.m = 2;
  c.charge = "sideways";
  rejected(c, "charge");

  c = ExperimentConfig{};
  c.experiment = "gen";
  c.n = 10;
  c.schema_version = 2;
  rejected(c, "schema_version");

  c = ExperimentConfig{};
  c.experiment = "drunkwalk";
  c.n = 20;
  c.trials = 0;
  c.fraction = 2.0;
  try {
    validate_config(c);
    FAIL("expected a throw");
  } catch (const InvalidParameter& e) {
    std::string msg = e.what();
    CHECK(msg.find("trials") != std::string::npos);
    CHECK(msg.find("fraction") != std::string::npos);
    CHECK(msg.find(';') != std::string::npos);
  }
}

TEST_CASE("a failing item is recorded without sinking the batch") {
  std::string out = scratch_dir();
  ExperimentConfig c;
  c.experiment = "xortest";
  c.n = 10;
  c.alpha = 5.0;
  c.triples = 20;
  c.seeds_per_size = 4;
  c.master_seed = 1;
  c.output_dir = out;
  RunRecord r = run(c);

  REQUIRE(r.items.size() == 4);
  int ok = 0, failed = 0;
  for (const auto& it : r.items) {
    if (it.ok) {
      ++ok;
      CHECK(it.error.empty());
    } else {
      ++failed;
      CHECK(it.error.find("distinct solutions") != std::string::npos);
    }
  }
  CHECK(ok == 2);
  CHECK(failed == 2);

  size_t rows = count_occurrences(r.data_csv, "\n") - 1;
  CHECK(rows == static_cast<size_t>(ok));
  CHECK(fs::exists(fs::path(r.run_dir) / "data.csv"));
  CHECK(slurp(fs::path(r.run_dir) / "data.csv") == r.data_csv);
}

TEST_CASE("run directories hold the advertised files") {
  std::string out = scratch_dir();
  ExperimentConfig c;
  c.experiment = "gen";
  c.sizes = {8, 12};
  c.seeds_per_size = 2;
  c.alpha = 3.0;
  c.master_seed = 6;
  c.output_dir = out;
  RunRecord r = run(c);

  fs::path dir(r.run_dir);
  CHECK(fs::exists(dir / "data.csv"));
  CHECK(fs::exists(dir / "data.json"));
  CHECK(fs::exists(dir / "run.json"));
  CHECK(fs::exists(dir / "chart.svg"));
  CHECK(fs::exists(dir / "instance-8-0.cnf"));
  CHECK(fs::exists(dir / "instance-8-1.cnf"));
  CHECK(fs::exists(dir / "instance-12-0.cnf"));
  CHECK(fs::exists(dir / "instance-12-1.cnf"));
  CHECK(slurp(dir / "data.csv") == r.data_csv);
  CHECK(slurp(dir / "data.json") == r.data_json);
  CHECK(slurp(dir / "instance-8-0.cnf").rfind("p cnf 8 ", 0) == 0);

  std::string runj = slurp(dir / "run.json");
  CHECK(runj.find("\"tool_version\"") != std::string::npos);
  CHECK(runj.find(kToolVersion) != std::string::npos);
  CHECK(runj.find("\"solver_fingerprint\"") != std::string::npos);
  CHECK(runj.find("\"experiment\": \"gen\"") != std::string::npos);
}

TEST_CASE("scaling runs report fits for both growth models") {
  std::string out = scratch_dir();
  ExperimentConfig c;
  c.experiment = "scaling";
  c.sizes = {12, 16, 20, 24};
  c.alpha = 5.5;
  c.seeds_per_size = 3;
  c.budget = 100000;
  c.master_seed = 5;
  c.output_dir = out;
  RunRecord r = run(c);

  CHECK(r.data_json.find("\"fits\"") != std::string::npos);
  CHECK(r.data_json.find(scaling_model_name(ScalingModel::exp_linear)) !=
        std::string::npos);
  CHECK(r.data_json.find(scaling_model_name(ScalingModel::exp_two_thirds)) !=
        std::string::npos);
  CHECK(r.data_json.find("\"censored\"") != std::string::npos);
  CHECK(r.data_csv.rfind("n,seed,conflicts,status", 0) == 0);
}

TEST_CASE("drunkwalk runs produce one row per strategy") {
  std::string out = scratch_dir();
  ExperimentConfig c;
  c.experiment = "drunkwalk";
  c.n = 25;
  c.alpha = 3.5;
  c.probes = 20;
  c.steps = 10;
  c.trials = 8;
  c.master_seed = 4;
  c.output_dir = out;
  RunRecord r = run(c);

  REQUIRE(r.items.size() == 4);
  for (const auto& it : r.items) CHECK(it.ok);
  for (const char* name : {"S1", "S2", "S3", "S4"})
    CHECK(r.data_csv.find(name) != std::string::npos);
  CHECK(r.data_json.find("\"summary\"") != std::string::npos);
}

TEST_CASE("below and above threshold annotations track alpha") {
  std::string out = scratch_dir();
  ExperimentConfig c;
  c.experiment = "gen";
  c.n = 10;
  c.alpha = 3.0;
  c.seeds_per_size = 1;
  c.output_dir = out;
  RunRecord below = run(c);
  CHECK(below.data_json.find("below-threshold") != std::string::npos);
  c.alpha = 5.0;
  RunRecord above = run(c);
  CHECK(above.data_json.find("above-threshold") != std::string::npos);
  CHECK(above.data_json.find("4.267") != std::string::npos);
}

TEST_CASE("emit_chart draws points, bands, and fit overlays") {
  CHECK_THROWS_AS(emit_chart(ChartSeries{}), InvalidParameter);

  ChartSeries one;
  one.title = "single";
  one.x_label = "x";
  one.y_label = "y";
  one.points = {{3.0, 5.0}};
  std::string svg = emit_chart(one);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_occurrences(svg, "<circle") == 1);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("single") != std::string::npos);

  ChartSeries banded;
  banded.title = "banded";
  banded.x_label = "seed";
  banded.y_label = "ratio";
  banded.points = {{1.0, 0.36}, {2.0, 0.40}, {3.0, 0.38}};
  banded.band = {{0.35, 0.41}};
  svg = emit_chart(banded);
  CHECK(count_occurrences(svg, "<circle") == 3);
  CHECK(svg.find("fill-opacity") != std::string::npos);

  ChartSeries fitted;
  fitted.title = "fitted";
  fitted.x_label = "n";
  fitted.y_label = "log2(conflicts)";
  fitted.points = {{10.0, 4.0}, {20.0, 8.0}, {30.0, 12.0}};
  ScalingFit fit;
  fit.model = ScalingModel::exp_linear;
  fit.coefficient = 0.4;
  fit.intercept = 0.0;
  fit.r_squared = 1.0;
  fit.points_used = 3;
  svg = emit_chart(fitted, fit);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(count_occurrences(svg, "<circle") == 3);
}
