#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "detfield/cli.hpp"

using namespace detfield;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "detfield");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

cli::Table run_text(const std::string& text) { return cli::run(cli::parse_config(text)); }

double cell(const cli::Table& t, std::size_t r, std::size_t c) { return std::get<double>(t.rows[r][c]); }

}  // namespace

TEST_CASE("gap over a grid") {
  const cli::Table t = run_text(R"({"version": 1, "command": "gap",
      "system": {"bound_states": [{"kappa": 1, "c": 1}]},
      "grid": {"start": 0, "stop": 3, "steps": 12}})");
  CHECK(t.columns == std::vector<std::string>{"x", "F", "dlogF"});
  REQUIRE(t.rows.size() == 13);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double x = cell(t, i, 0);
    CHECK(cell(t, i, 1) == doctest::Approx(1.0 - std::exp(-2.0 * x) / 2.0).epsilon(1e-15));
  }
  CHECK(cell(t, 12, 0) == 3.0);
}

TEST_CASE("tw2 column is monotone in the unit interval") {
  const cli::Table t = run_text(R"({"version": 1, "command": "tw2",
      "grid": {"start": -4, "stop": 2, "steps": 12}})");
  double prev = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double f = cell(t, i, 1);
    CHECK(f > 0.0);
    CHECK(f <= 1.0);
    CHECK(f >= prev);
    prev = f;
  }
}

TEST_CASE("every command runs") {
  const std::string sys = R"("system": {"bound_states": [{"kappa": 1, "c": 1}, {"kappa": 2, "c": 0.5}]})";
  const std::string grid = R"("grid": {"start": 0, "stop": 1, "steps": 4})";
  for (const char* cmd : {"phi", "gramian", "det", "gap", "counts", "recover", "evolve"}) {
    const cli::Table t = run_text(std::string(R"({"version": 1, "command": ")") + cmd + "\", " + sys + ", " + grid + "}");
    CHECK(t.rows.size() == 5);
    CHECK(t.columns.size() == t.rows[0].size());
  }
  const cli::Table zs = run_text(R"({"version": 1, "command": "recover",
      "system": {"bound_states": [{"kappa": 1, "c": 1}]}, "grid": {"start": 0, "stop": 1, "steps": 2},
      "params": {"kind": "zs"}})");
  CHECK(zs.columns.back() == "q_abs_sq");
  for (std::size_t i = 0; i < zs.rows.size(); ++i) {
    const double re = cell(zs, i, 3);
    const double im = cell(zs, i, 4);
    CHECK(std::abs(cell(zs, i, 5) - (re * re + im * im)) < 1e-4);
  }
}

TEST_CASE("det closed form agrees with the Nystrom method") {
  const std::string base = R"({"version": 1, "command": "det",
      "system": {"A": [[[1.0, 0.2], [0.1, 0]], [[0, 0], [2.0, -0.3]]], "B": [1, [0.5, 0.5]], "C": [[0.3, 0], 0.8]},
      "grid": {"start": 0, "stop": 1, "steps": 2}, "params": {"kind": "square", "lambda": [0.4, 0.1])";
  const cli::Table closed = run_text(base + R"(, "method": "closed"}})");
  const cli::Table nys = run_text(base + R"(, "method": "nystrom", "N": 200}})");
  for (std::size_t i = 0; i < closed.rows.size(); ++i) {
    CHECK(std::abs(cell(closed, i, 1) - cell(nys, i, 1)) < 1e-8);
    CHECK(std::abs(cell(closed, i, 2) - cell(nys, i, 2)) < 1e-8);
  }
}

TEST_CASE("evolve expands the time list") {
  const cli::Table t = run_text(R"({"version": 1, "command": "evolve",
      "system": {"bound_states": [{"kappa": 1, "c": 1.4142135623730951}]},
      "grid": {"start": -2, "stop": 2, "steps": 4}, "params": {"t": [0, 0.5]}})");
  REQUIRE(t.rows.size() == 10);
  CHECK(cell(t, 0, 0) == 0.0);
  CHECK(cell(t, 5, 0) == 0.5);
}

TEST_CASE("system file relative to the config") {
  const cli::RunConfig cfg = cli::load_config(std::string(DETFIELD_CONFIG_DIR) + "/evolve_two_soliton.json");
  REQUIRE(cfg.system.has_value());
  REQUIRE(cfg.system->bound_states.has_value());
  CHECK(cfg.system->bound_states->size() == 2);
}

TEST_CASE("output is deterministic and uses full precision") {
  const std::string path = std::string(DETFIELD_CONFIG_DIR) + "/counts.json";
  const Result a = run_args({"counts", "--config", path});
  const Result b = run_args({"counts", "--config", path});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  CHECK(rows[0][0] == "x");
  CHECK(cli::format_number(0.1) == "0.10000000000000001");
  CHECK(cli::format_number(1.0) == "1");
  CHECK(std::stod(cli::format_number(std::exp(1.0))) == std::exp(1.0));
}

TEST_CASE("json output parses") {
  const Result r = run_args({"gap", "--config", std::string(DETFIELD_CONFIG_DIR) + "/gap_single.json", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"][1] == "F");
  CHECK(j["rows"].size() == 7);
  CHECK(j["rows"][0][1].get<double>() == 0.5);
  CHECK(j["ok"] == true);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_args({}).status == 2);
  CHECK(run_args({"frobnicate"}).status == 2);
  CHECK(run_args({"gap"}).status == 2);
  CHECK(run_args({"gap", "--config", "/nonexistent.json"}).status == 2);
  CHECK(run_args({"gap", "--config", std::string(DETFIELD_CONFIG_DIR) + "/gap_single.json", "--format", "xml"}).status == 2);
  CHECK(run_args({"det", "--config", std::string(DETFIELD_CONFIG_DIR) + "/gap_single.json"}).status == 2);

  const char* bad[] = {
      R"({"command": "gap"})",
      R"({"version": 2, "command": "gap"})",
      R"({"version": 1, "command": "gap", "grid": {"start": 1, "stop": 0, "steps": 3}})",
      R"({"version": 1, "command": "gap", "grid": {"start": 0, "stop": 1, "steps": 0}})",
      R"({"version": 1, "command": "gap", "bogus": 1})",
      R"({"version": 1, "command": "gap", "system": {"bound_states": [{"kappa": 1, "c": 1}], "A": [[1]]}})",
      R"({"version": 1, "command": "gap", "system": {"bound_states": [{"kappa": -1, "c": 1}]}})",
      R"({"version": 1, "command": "gap", "params": {"case": "weird"}})",
      R"({"version": 1, "format": "xml"})",
      R"({"version": 1)",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(cli::parse_config(text), cli::UsageError);
  }
  CHECK_THROWS_AS(run_text(R"({"version": 1, "command": "gap", "grid": {"start": 0, "stop": 1, "steps": 1}})"),
                  cli::UsageError);
}

TEST_CASE("hypothesis violations exit with status 3") {
  const std::string text = R"({"version": 1, "command": "gap",
      "system": {"bound_states": [{"kappa": 1, "c": 2}]}, "grid": {"start": 0, "stop": 1, "steps": 2}})";
  CHECK_THROWS_AS(run_text(text), HypothesisViolation);

  const std::string tmp = std::filesystem::temp_directory_path() / "detfield_violating.json";
  {
    std::ofstream f(tmp);
    f << text;
  }
  const Result r = run_args({"gap", "--config", tmp});
  CHECK(r.status == 3);
  CHECK(r.err.find("||Q_x||") != std::string::npos);
  std::filesystem::remove(tmp);
}
