// Copyright 2026 The pdcell Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pdcell::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("grid parsing") {
  using pdcell::cli::parse_grid;
  const auto lin = parse_grid("0:1:5:lin").points();
  CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto lg = parse_grid("1e-6:1:7:log").points();
  CHECK(lg.front() == 1e-6);
  CHECK(lg.back() == 1.0);
  CHECK(lg[3] == doctest::Approx(1e-3).epsilon(1e-12));
  for (const char* bad : {"1:0:5:lin", "0:1:1:lin", "0:1:5:cubic", "0:1:5", "a:1:5:lin", "0:1:4.5:lin", "0:1:5:log"}) {
    CAPTURE(bad);
    CHECK_THROWS(parse_grid(bad));
  }
}

TEST_CASE("pdf command on the exponential case") {
  const Run r = run({"pdf", "--d", "1", "--rho", "1", "--grid", "0.01:5:100:lin"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == std::vector<std::string>{"x", "pdf", "status"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = std::stod(rows[i][0]);
    CHECK(std::stod(rows[i][1]) == doctest::Approx(std::exp(-x)).epsilon(1e-8));
    CHECK(rows[i][2] == "ok");
  }
}

TEST_CASE("pdf command at tiny three-dimensional volumes") {
  const Run r = run({"pdf", "--d", "3", "--rho", "1", "--grid", "1e-6:0.6:50:log"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 51);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(6.84884e-4).epsilon(1e-5));
}

TEST_CASE("cdf command default grid is monotone below one") {
  const Run r = run({"cdf", "--d", "2", "--rho", "1"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  double last = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double v = std::stod(rows[i][1]);
    CHECK(v >= last);
    last = v;
  }
  CHECK(last < 1.0);
}

TEST_CASE("stats command") {
  const Run r = run({"stats"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0));
  CHECK(std::stod(rows[1][2]) == doctest::Approx(1.0));
  CHECK(std::stod(rows[1][3]) == doctest::Approx(2.0));
  CHECK(std::stod(rows[1][4]) == doctest::Approx(6.0));
  CHECK(std::stod(rows[3][1]) == doctest::Approx(0.14776).epsilon(1e-5));
  CHECK(std::stod(rows[5][1]) == doctest::Approx(0.0053551).epsilon(1e-5));
  CHECK(std::stod(rows[5][2]) == doctest::Approx(0.00002089).epsilon(1e-3));
  CHECK(std::stod(rows[5][3]) == doctest::Approx(1.95854).epsilon(1e-5));
  CHECK(std::stod(rows[5][4]) == doctest::Approx(6.16637).epsilon(1e-5));
}

TEST_CASE("constants command") {
  const Run r = run({"constants"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][5]) < 1e-10);
    CHECK(std::stod(rows[i][6]) < 1e-10);
  }
}

TEST_CASE("simulate command at desk scale") {
  const std::string samples = "cli_test_volumes.csv";
  const Run r = run({"simulate", "--seed", "42", "--lambda", "1", "--n", "100000", "--samples", samples});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "n");
  CHECK(std::stod(rows[1][0]) >= 100000);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::stod(rows[1][5]) < std::stod(rows[1][6]));
  const std::string body = slurp(samples);
  CHECK(body.rfind("volume\n", 0) == 0);
  std::remove(samples.c_str());
}

TEST_CASE("simulate output is byte-identical for a fixed seed") {
  const Run a = run({"simulate", "--seed", "9", "--n", "3000", "--box", "60", "--samples", "cli_a.csv"});
  const Run b = run({"simulate", "--seed", "9", "--n", "3000", "--box", "60", "--samples", "cli_b.csv"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
  CHECK(!slurp("cli_a.csv").empty());
  std::remove("cli_a.csv");
  std::remove("cli_b.csv");
}

TEST_CASE("void command") {
  const Run r = run({"void", "--seed", "5", "--ratios", "1,5", "--replicates", "20"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"ratio", "p_analytic", "p_bound", "p_mc", "p_mc_stderr", "avg_power",
                                            "status"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = std::stod(rows[i][0]);
    const double p = std::stod(rows[i][1]);
    CHECK(std::stod(rows[i][2]) == doctest::Approx(std::exp(-ratio / 2.0)).epsilon(1e-15));
    CHECK(std::fabs(std::stod(rows[i][3]) - p) < 3.0 * std::stod(rows[i][4]));
    CHECK(std::stod(rows[i][5]) == doctest::Approx(1.0 - p).epsilon(1e-15));
  }
  CHECK(std::stod(rows[2][1]) == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("json and csv carry identical values") {
  const Run csv = run({"pdf", "--d", "4", "--grid", "0.001:0.2:9:log"});
  const Run json = run({"pdf", "--d", "4", "--grid", "0.001:0.2:9:log", "--format", "json"});
  REQUIRE(csv.code == 0);
  REQUIRE(json.code == 0);
  const auto rows = parse_csv(csv.out);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["meta"]["command"] == "pdf");
  CHECK(doc["meta"]["artifact_version"] == pdcell::cli::kVersion);
  CHECK(doc["meta"]["config"]["d"] == 4);
  REQUIRE(doc["rows"].size() == rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(doc["rows"][i - 1]["x"].get<double>() == std::stod(rows[i][0]));
    CHECK(doc["rows"][i - 1]["pdf"].get<double>() == std::stod(rows[i][1]));
  }
  const Run again = run({"pdf", "--d", "4", "--grid", "0.001:0.2:9:log", "--format", "json"});
  CHECK(again.out == json.out);
}

TEST_CASE("seed is echoed in json meta") {
  const Run r = run({"void", "--seed", "17", "--ratios", "2", "--replicates", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["meta"]["seed"] == 17);
}

TEST_CASE("exit codes") {
  CHECK(run({"simulate"}).code == 2);
  CHECK(run({"void"}).code == 2);
  CHECK(run({"pdf", "--grid", "1:0:3:lin"}).code == 2);
  CHECK(run({"pdf", "--rho", "-1"}).code == 2);
  CHECK(run({"pdf", "--format", "xml"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"simulate", "--seed", "1", "--box", "10", "--buffer", "5"}).code == 2);
  CHECK(run({"pdf", "--help"}).code == 0);

  // A starved contour cannot converge in the far tail: that row carries the
  // error, the rest of the table is still written, and the exit code is 3.
  const Run r = run({"pdf", "--d", "5", "--grid", "0.1:0.2:2:lin", "--contour-half-length", "0.5",
                     "--contour-step", "2"});
  CHECK(r.code == 3);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][2] == "ok");
  CHECK(rows[2][1] == "nan");
  CHECK(rows[2][2].rfind("error:", 0) == 0);
}
