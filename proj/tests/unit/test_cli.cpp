// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gngs/cli.hpp"
#include "gngs/error.hpp"

using namespace gngs;
namespace fs = std::filesystem;

namespace
{

const char *solve_config = R"({
  "command": "solve",
  "problem": {
    "weights": [1],
    "terms": [{"coeffs": [1], "order": 0.4}, {"coeffs": [1], "order": "0"}],
    "p": 2, "q": "3",
    "grid": {"points": [256], "half_lengths": [30]}
  },
  "solver": {"tol_residual": 1e-7},
  "output_dir": "OUT",
  "seed": 3
})";

std::string with_dir(std::string text, const fs::path &dir)
{
  text.replace(text.find("OUT"), 3, dir.string());
  return text;
}

fs::path scratch(const std::string &name)
{
  const auto p = fs::temp_directory_path() / ("gngs_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path &p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing is strict and canonical")
{
  const auto cfg = cli::parse_config_text(solve_config);
  CHECK(cfg.command == "solve");
  REQUIRE(cfg.problem);
  CHECK(cfg.problem->terms[0].order == "2/5");
  CHECK(cfg.problem->q == "3");
  CHECK(cfg.seed == 3);

  // echo round trip
  CHECK(cli::parse_config(nlohmann::json::parse(cli::to_json(cfg).dump())) == cfg);

  std::string unknown = solve_config;
  unknown.replace(unknown.find("\"seed\""), 6, "\"sede\"");
  CHECK_THROWS_AS(cli::parse_config_text(unknown), Error);
  CHECK_THROWS_AS(cli::parse_config_text("{\"command\": \"solve\""), Error);
  CHECK_THROWS_AS(cli::parse_config_text("{\"command\": \"dance\"}"), Error);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"command":"solve","solver":{"init":"magic"}})"), Error);
  CHECK_THROWS_AS(cli::parse_config_text(R"({"command":"solve","seed":"x"})"), Error);
}

TEST_CASE("exit code contract")
{
  CHECK(cli::exit_code_for(ErrorCode::config) == 2);
  CHECK(cli::exit_code_for(ErrorCode::invalid_grid) == 2);
  CHECK(cli::exit_code_for(ErrorCode::inadmissible) == 3);
  CHECK(cli::exit_code_for(ErrorCode::supercritical_order) == 3);
  CHECK(cli::exit_code_for(ErrorCode::numeric) == 4);
  CHECK(cli::exit_code_for(ErrorCode::io) == 1);
}

TEST_CASE("solve writes its artifacts and is reproducible")
{
  const auto dir = scratch("solve");
  const auto cfg = cli::parse_config_text(with_dir(solve_config, dir));
  std::ostringstream out, err;
  REQUIRE(cli::run(cfg, out, err) == 0);
  for (const char *f : {"report.json", "constants.csv", "phi.bin", "phi.json", "iterations.csv"}) CHECK(fs::exists(dir / f));
  const auto first = slurp(dir / "constants.csv");

  const auto rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["result"]["converged"].get<bool>());
  CHECK(rep["environment"]["version"] == cli::version);

  // rerun from the echoed config
  const auto echoed = cli::parse_config(rep["config"]);
  CHECK(echoed == cfg);
  REQUIRE(cli::run(echoed, out, err) == 0);
  CHECK(slurp(dir / "constants.csv") == first);
  const auto rep2 = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep2["result"]["d"].get<double>() == doctest::Approx(rep["result"]["d"].get<double>()).epsilon(1e-8));
  fs::remove_all(dir);
}

TEST_CASE("errors leave no artifacts")
{
  const auto dir = scratch("inadmissible");
  std::string text = with_dir(solve_config, dir);
  text.replace(text.find("\"3\""), 3, "\"12\"");
  const auto cfg = cli::parse_config_text(text);
  std::ostringstream out, err;
  CHECK(cli::run(cfg, out, err) == 3);
  CHECK_FALSE(fs::exists(dir));
  const auto e = nlohmann::json::parse(err.str());
  CHECK(e["exit_code"] == 3);

  std::string grid = with_dir(solve_config, dir);
  grid.replace(grid.find("[256]"), 5, "[100]");
  std::ostringstream err2;
  CHECK(cli::run(cli::parse_config_text(grid), out, err2) == 2);
  CHECK_FALSE(fs::exists(dir));
}

TEST_CASE("exponents command")
{
  const auto dir = scratch("exponents");
  const std::string text = R"({"command":"exponents","exponents":{"a1":1,"p":2,"Q_values":[3,4,5,6]},"output_dir":")" +
                           dir.string() + R"("})";
  std::ostringstream out, err;
  REQUIRE(cli::run(cli::parse_config_text(text), out, err) == 0);
  const auto csv = slurp(dir / "exponents.csv");
  // 2n/(n-2)
  CHECK(csv.find("3,1,0,2,2,6,") != std::string::npos);
  CHECK(csv.find("4,1,0,2,2,4,") != std::string::npos);
  CHECK(csv.find("5,1,0,2,2,10/3,") != std::string::npos);
  CHECK(csv.find("6,1,0,2,2,3,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("report merges run directories")
{
  std::ostringstream out, err;
  CHECK(cli::report({}, true, out, err) == 0);
  const std::string empty = out.str();
  CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);

  const auto a = scratch("report_a"), b = scratch("report_b");
  for (const auto &[dir, c] : {std::pair{a, "1"}, std::pair{b, "2"}}) {
    std::string text = with_dir(solve_config, dir);
    text.replace(text.find("\"coeffs\": [1]"), 13, std::string("\"coeffs\": [") + c + "]");
    std::ostringstream o, e;
    REQUIRE(cli::run(cli::parse_config_text(text), o, e) == 0);
  }
  std::ostringstream csv, warn;
  CHECK(cli::report({b.string(), a.string(), a.string()}, false, csv, warn) == 0);
  CHECK(warn.str().find("duplicate") != std::string::npos);
  std::istringstream lines(csv.str());
  std::string header, row1, row2, extra;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(row1.rfind(a.string(), 0) == 0);
  CHECK(row2.rfind(b.string(), 0) == 0);

  // ratio column (11th field) agrees between the two symbol scalings
  auto field = [](const std::string &row, int k) {
    std::stringstream ss(row);
    std::string f;
    for (int i = 0; i <= k; ++i) std::getline(ss, f, ',');
    return std::stod(f);
  };
  CHECK(field(row1, 10) == doctest::Approx(field(row2, 10)).epsilon(1e-4));

  std::ostringstream miss, w2;
  CHECK(cli::report({"/nonexistent/run"}, false, miss, w2) == 0);
  CHECK(miss.str().find("missing") != std::string::npos);
  CHECK(cli::report({"/nonexistent/run"}, true, miss, w2) != 0);
  fs::remove_all(a);
  fs::remove_all(b);
}
