#include <doctest.h>

#include <qzeno/report.hpp>
#include <qzeno/runner.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace qzeno;

namespace {
std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}
}  // namespace

// ---------------------------------------------------------------------------
// Report rows and serialization
// ---------------------------------------------------------------------------

TEST_CASE("row builders judge their checks") {
  CHECK(info_row("x", "", 123.0).pass);
  CHECK(abs_row("x", "", 2.0, 2.5, 0.6).pass);
  CHECK_FALSE(abs_row("x", "", 2.0, 2.5, 0.4).pass);
  CHECK(lower_row("x", "", 0.9, 0.5).pass);
  CHECK_FALSE(lower_row("x", "", 0.4, 0.5).pass);
  CHECK(lower_row("x", "", 0.4, 0.5, 0.2).pass);
  CHECK(upper_row("x", "", 0.4, 0.5).pass);
  CHECK_FALSE(upper_row("x", "", 0.9, 0.5).pass);
  const double nan = std::nan("");
  CHECK_FALSE(abs_row("x", "", nan, 0.0, 1e9).pass);
  CHECK_FALSE(lower_row("x", "", nan, -1e9).pass);
  CHECK_FALSE(upper_row("x", "", nan, 1e9).pass);
}

TEST_CASE("csv serialization is frozen") {
  RunReport report;
  report.scenario = "zeno";
  report.seed = 1;
  report.config_hash = "0123456789abcdef";
  report.rows.push_back(abs_row("x", "n=16", 2.0, 2.5, 1.0));
  report.rows.push_back(info_row("third", "", 1.0 / 3.0));
  report.rows.push_back(lower_row("f", "", 0.9, 0.5));
  report.rows.push_back(upper_row("g", "", 2.0, 1.0));
  report.rows.push_back(info_row("a,b", "q\"x", 1.0));

  const std::string want =
      "label,param,value,reference,abs_error,cmp,tol,pass\n"
      "x,n=16,2,2.5,0.5,abs_error,1,true\n"
      "third,,0.33333333333333331,,,none,,true\n"
      "f,,0.90000000000000002,0.5,,lower_bound,,true\n"
      "g,,2,1,,upper_bound,,false\n"
      "\"a,b\",\"q\"\"x\",1,,,none,,true\n";
  CHECK(to_csv(report) == want);
  CHECK_FALSE(report.all_passed());
}

TEST_CASE("csv quotes embedded newlines") {
  RunReport report;
  report.rows.push_back(info_row("line\nbreak", "", 0.0));
  const std::string csv = to_csv(report);
  CHECK(csv.find("\"line\nbreak\"") != std::string::npos);
}

TEST_CASE("json carries the metadata csv omits") {
  RunReport report;
  report.scenario = "closure";
  report.seed = 9;
  report.config_hash = "feed";
  report.wall_time_ms = 12.5;
  report.rows.push_back(abs_row("sum", "seed=9", 1.0, 1.0, 1e-9));
  const std::string json = to_json(report);
  CHECK(json.find("\"wall_time_ms\": 12.5") != std::string::npos);
  CHECK(json.find("\"scenario\": \"closure\"") != std::string::npos);
  CHECK(json.find("\"all_passed\": true") != std::string::npos);
  CHECK(json.find("\"cmp\": \"abs_error\"") != std::string::npos);
  // CSV stays free of wall time so reruns are byte-identical.
  CHECK(to_csv(report).find("wall_time") == std::string::npos);
}

TEST_CASE("emit_csv writes atomically and leaves no temp file") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "qzeno_report_test";
  std::filesystem::create_directories(dir);
  const std::filesystem::path out = dir / "report.csv";

  RunReport report;
  report.rows.push_back(info_row("x", "", 1.0));
  emit_csv(report, out.string());
  CHECK(slurp(out) == to_csv(report));
  CHECK_FALSE(std::filesystem::exists(out.string() + ".tmp"));

  report.rows.push_back(info_row("y", "", 2.0));
  emit_csv(report, out.string());  // overwrite in place
  CHECK(slurp(out) == to_csv(report));
  std::filesystem::remove_all(dir);
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

TEST_CASE("parse accepts a sparse config and fills defaults") {
  const ScenarioConfig c =
      parse_config(R"({"scenario": "zeno", "seed": 7, "zeno": {"dim": 3}})");
  CHECK(c.scenario == ScenarioKind::zeno);
  CHECK(c.seed == 7);
  CHECK(c.zeno.dim == 3);
  CHECK(c.zeno.hamiltonian_scale == 1.0);
  CHECK(c.schedule.t_start == 0.0);
  CHECK(c.schedule.t_end == 1.0);
  REQUIRE(c.schedule.n_values.size() == 3);
  CHECK(c.schedule.n_values[0] == 16);
}

TEST_CASE("subcommand can stand in for the scenario key") {
  const ScenarioConfig c = parse_config(R"({"closure": {"dim": 4}})",
                                        ScenarioKind::closure);
  CHECK(c.scenario == ScenarioKind::closure);
  CHECK(c.closure.dim == 4);
}

TEST_CASE("scalar n collapses the sweep") {
  const ScenarioConfig c =
      parse_config(R"({"scenario": "zeno", "schedule": {"n": 8}})");
  REQUIRE(c.schedule.n_values.size() == 1);
  CHECK(c.schedule.n_values[0] == 8);
}

TEST_CASE("invalid json is reported as such") {
  CHECK_THROWS_WITH_AS(parse_config("not json"),
                       doctest::Contains("invalid JSON"), ValidationError);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"scenario": "zeno", "bogus": 1})"),
                       doctest::Contains("bogus"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"scenario": "zeno", "zeno": {"dims": 4}})"),
      doctest::Contains("zeno.dims"), ValidationError);
}

TEST_CASE("every violation is listed, not just the first") {
  try {
    parse_config(R"({"scenario": "zeno", "seed": -3, "zeno": {"dim": 1}})");
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("seed") != std::string::npos);
    CHECK(what.find("zeno.dim") != std::string::npos);
  }
}

TEST_CASE("scenario key conflicting with the subcommand is an error") {
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"scenario": "zeno"})", ScenarioKind::antizeno),
      doctest::Contains("conflicts"), ValidationError);
}

TEST_CASE("n and n_values are mutually exclusive") {
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"scenario": "zeno", "schedule": {"n": 8, "n_values": [8]}})"),
      doctest::Contains("not both"), ValidationError);
}

TEST_CASE("schedule must run forward") {
  CHECK_THROWS_AS(parse_config(
                      R"({"scenario": "zeno",
                          "schedule": {"t_start": 1.0, "t_end": 0.5}})"),
                  ValidationError);
}

TEST_CASE("antizeno relational and enum checks") {
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"scenario": "antizeno", "antizeno": {"dim": 3, "rank": 3}})"),
      doctest::Contains("smaller than dim"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"scenario": "antizeno", "antizeno": {"family": "x"}})"),
      doctest::Contains("qubit-rotation"), ValidationError);
  const ScenarioConfig c = parse_config(
      R"({"scenario": "antizeno", "antizeno": {"family": "qubit-rotation"}})");
  CHECK(c.antizeno.family == "qubit-rotation");
}

TEST_CASE("breakpoints must be increasing pairs") {
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"scenario": "swept-window",
                       "swept-window": {"left": [[0.5, 2.0], [0.2, 3.0]]}})"),
      doctest::Contains("strictly increasing"), ValidationError);
  CHECK_THROWS_AS(
      parse_config(R"({"scenario": "swept-window",
                       "swept-window": {"left": [[0.0, 2.0, 9.0]]}})"),
      ValidationError);
  const ScenarioConfig c = parse_config(
      R"({"scenario": "swept-window",
          "swept-window": {"left": [[0.0, 2.0], [1.0, 1.0]]}})");
  REQUIRE(c.swept_window.left.points.size() == 2);
  CHECK(c.swept_window.left(0.5) == 1.5);
}

TEST_CASE("piecewise-linear curves clamp outside their breakpoints") {
  const PiecewiseLinear f{{{0.0, 2.0}, {1.0, 4.0}}};
  CHECK(f(-1.0) == 2.0);
  CHECK(f(0.0) == 2.0);
  CHECK(f(0.25) == 2.5);
  CHECK(f(1.0) == 4.0);
  CHECK(f(7.0) == 4.0);
}

TEST_CASE("scenario names round-trip") {
  for (ScenarioKind kind :
       {ScenarioKind::zeno, ScenarioKind::antizeno, ScenarioKind::steering,
        ScenarioKind::spin_series, ScenarioKind::swept_window,
        ScenarioKind::closure}) {
    const auto back = scenario_from_name(scenario_name(kind));
    REQUIRE(back.has_value());
    CHECK(*back == kind);
  }
  CHECK_FALSE(scenario_from_name("qzeno").has_value());
}

// ---------------------------------------------------------------------------
// Canonical hash and the runner
// ---------------------------------------------------------------------------

TEST_CASE("canonical hash is frozen and key-order independent") {
  CHECK(config_hash(default_config(ScenarioKind::zeno)) ==
        "02407bde5be347dd");
  CHECK(config_hash(default_config(ScenarioKind::swept_window)) ==
        "74772ffdef77f428");

  const ScenarioConfig a =
      parse_config(R"({"scenario": "zeno", "seed": 5, "zeno": {"dim": 3}})");
  const ScenarioConfig b =
      parse_config(R"({"zeno": {"dim": 3}, "seed": 5, "scenario": "zeno"})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(default_config(ScenarioKind::zeno)));

  // A scalar n and the equivalent one-element sweep canonicalize alike.
  const ScenarioConfig c =
      parse_config(R"({"scenario": "zeno", "schedule": {"n": 16}})");
  const ScenarioConfig d =
      parse_config(R"({"scenario": "zeno", "schedule": {"n_values": [16]}})");
  CHECK(canonical_json(c) == canonical_json(d));
}

TEST_CASE("closure scenario runs green end to end") {
  ScenarioConfig config = default_config(ScenarioKind::closure);
  config.closure.num_seeds = 3;
  config.closure.n = 6;
  const RunReport report = run_scenario(config);
  CHECK(report.scenario == "closure");
  CHECK(report.seed == config.seed);
  CHECK(report.config_hash == config_hash(config));
  CHECK(report.rows.size() == 3);
  CHECK(report.all_passed());
  CHECK(report.wall_time_ms >= 0.0);
}

TEST_CASE("zeno scenario runs green on a reduced sweep") {
  ScenarioConfig config = default_config(ScenarioKind::zeno);
  // Keep n large enough for the runner's pinned extrapolation tolerance.
  config.schedule.n_values = {16, 64};
  config.zeno.dim = 3;
  const RunReport report = run_scenario(config);
  CHECK(report.all_passed());
  bool saw_continuum = false;
  for (const ReportRow& row : report.rows)
    if (row.label == "p_continuum") saw_continuum = true;
  CHECK(saw_continuum);
}

TEST_CASE("antizeno scenario rejects a shifted schedule") {
  ScenarioConfig config = default_config(ScenarioKind::antizeno);
  config.schedule.t_start = 0.5;
  CHECK_THROWS_AS(run_scenario(config), ValidationError);
}
