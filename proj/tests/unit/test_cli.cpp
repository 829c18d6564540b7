#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "conefourier/cli.hpp"

using namespace conefourier;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "conefourier");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "conefourier_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("format_value") {
  CHECK(format_value(1.0) == "1.000000000000000e0");
  CHECK(format_value(-0.00125) == "-1.250000000000000e-3");
  CHECK(format_value(Cx(1.5, -2.0)) == "1.500000000000000e0-2.000000000000000e0i");
  CHECK(format_value(Cx(1.5, 0.0)) == "1.500000000000000e0");
}

TEST_CASE("eval") {
  auto r = cli({"eval", "gegenbauer", "n=1", "mu=1", "x=0.5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "1.000000000000000e0\n");

  r = cli({"eval", "ft-f", "d=1", "k=0", "a=0.5", "xi=0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "3.141592653589793e0\n");

  r = cli({"eval", "hahn", "k=0", "x=0.3", "a=1", "b=1", "c=1", "d=1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "1.000000000000000e0\n");

  r = cli({"eval", "ft-f-closed", "d=2", "k=1,0", "a=0.9", "mu=0.8", "xi=0.4,-1.1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.back() == '\n');
  CHECK(r.out.find('i') != std::string::npos);

  CHECK(function_catalog().size() >= 20);
  CHECK(std::abs(evaluate_function("gamma", {{"z", {5.0}}}) - 24.0) == 0.0);
}

TEST_CASE("eval errors map to exit codes") {
  CHECK(cli({"eval", "nope"}).code == kExitUsage);
  CHECK(cli({"eval", "gegenbauer", "n=1", "mu=1"}).code == kExitUsage);
  CHECK(cli({"eval", "gegenbauer", "n=1", "mu=1", "x=abc"}).code == kExitUsage);
  CHECK(cli({"eval", "gegenbauer", "n=1", "n=2", "mu=1", "x=0"}).code == kExitUsage);
  CHECK(cli({"eval", "gamma", "z=-2"}).code == kExitDomain);
  const auto r = cli({"eval", "gegenbauer", "n=1", "mu=-0.6", "x=0.5"});
  CHECK(r.code == kExitDomain);
  CHECK(r.err.find("mu > -1/2") != std::string::npos);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("check") {
  auto r = cli({"check", "gegenbauer-orth", "n=2", "m=3", "mu=1"});
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["pass"] == true);
  CHECK(std::abs(doc["lhs"]["re"].get<double>()) < 1e-12);

  r = cli({"check", "ft-g-laguerre", "d=1", "n=2", "k=1", "a=0.7", "b=1.2", "beta=0.5", "mu=0.9", "xi=0.6,-0.8"});
  CHECK(r.code == kExitOk);

  r = cli({"check", "gegenbauer-orth", "n=2", "m=2", "mu=-0.6"});
  CHECK(r.code == kExitDomain);
  CHECK(r.err.find("mu > -1/2") != std::string::npos);

  r = cli({"check", "theta-dual", "k=1", "a=0.5", "mu=1", "xi=0.3", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(lines(r.out).size() == 2);

  CHECK(cli({"check", "no-such-id", "n=1"}).code == kExitUsage);
  CHECK(cli({"check", "gegenbauer-orth", "n=2"}).code == kExitUsage);
}

TEST_CASE("suite") {
  auto r = cli({"suite", "--ids", ""});
  CHECK(r.code == kExitOk);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["reports"].empty());
  CHECK(doc["summary"]["total"] == 0);

  const auto out = scratch("theta.json");
  r = cli({"suite", "--ids", "theta-dual,fd-recursion", "--out", out.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("total 300, passed 300, failed 0") != std::string::npos);
  doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["reports"].size() == 300);

  const auto csv = scratch("theta.csv");
  r = cli({"suite", "--ids", "theta-dual", "--out", csv.string(), "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(lines(slurp(csv)).size() == 201);

  CHECK(cli({"suite", "--ids", "bogus"}).code == kExitUsage);
  CHECK(cli({"suite", "--all", "--ids", "theta-dual"}).code == kExitUsage);
  CHECK(cli({"suite", "--ids", "theta-dual", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("seed changes randomized grids") {
  const auto a = cli({"suite", "--ids", "theta-dual", "--seed", "3"});
  const auto b = cli({"suite", "--ids", "theta-dual", "--seed", "3"});
  const auto c = cli({"suite", "--ids", "theta-dual", "--seed", "4"});
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
}

TEST_CASE("run config round trip") {
  const std::string text = R"({
    "ids": ["gegenbauer-orth", "theta-dual"],
    "seed": 9,
    "format": "json",
    "quadrature": {"rule": "adaptive-gk", "abs_tol": 1e-12, "rel_tol": 1e-11},
    "grids": {"gegenbauer-orth": [{"n": [2], "m": [2], "mu": [0.7]}, {"n": [1], "m": [3], "mu": [0.7]}]}
  })";
  const RunConfig cfg = parse_run_config(text);
  CHECK(cfg.seed == 9);
  CHECK(cfg.quad.rule == Rule::AdaptiveGK);
  CHECK(cfg.grids.at("gegenbauer-orth").size() == 2);
  const std::string dumped = run_config_to_json(cfg);
  CHECK(run_config_to_json(parse_run_config(dumped)) == dumped);

  const auto p1 = scratch("cfg1.json");
  const auto p2 = scratch("cfg2.json");
  std::ofstream(p1) << text;
  std::ofstream(p2) << dumped;
  const auto r1 = cli({"suite", "--config", p1.string()});
  const auto r2 = cli({"suite", "--config", p2.string()});
  CHECK(r1.code == kExitOk);
  CHECK(r1.out == r2.out);
  CHECK(nlohmann::json::parse(r1.out)["summary"]["total"] == 202);

  const auto w = scratch("written.json");
  CHECK(cli({"suite", "--config", p1.string(), "--write-config", w.string()}).code == kExitOk);
  CHECK(slurp(w) == dumped);

  CHECK_THROWS_AS(parse_run_config(R"({"seeed": 1})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"quadrature": {"abs_tol": 1e-9, "fast": true}})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"quadrature": {"rule": "simpson"}})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"grids": {"nope": []}})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config(R"({"format": "yaml"})"), ParameterError);
  CHECK_THROWS_AS(parse_run_config("{not json"), ParameterError);
  std::ofstream(p1) << R"({"unknown": 1})";
  CHECK(cli({"suite", "--config", p1.string()}).code == kExitUsage);
}

TEST_CASE("table") {
  auto r = cli({"table", "gegenbauer", "n=3", "mu=1", "x=-1:1:201"});
  CHECK(r.code == kExitOk);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 202);
  CHECK(rows[0] == "x,re,im");
  // C_3^1(x) = 8x^3 - 4x by direct summation.
  for (std::size_t i = 1; i < rows.size(); i += 20) {
    const double x = std::stod(rows[i].substr(0, rows[i].find(',')));
    const double v = std::stod(rows[i].substr(rows[i].find(',') + 1));
    CHECK(std::abs(v - (8 * x * x * x - 4 * x)) < 1e-13);
  }

  r = cli({"table", "ft-f", "d=1", "k=0", "a=0.5", "xi=-4:4:81"});
  rows = lines(r.out);
  REQUIRE(rows.size() == 82);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double xi = std::stod(rows[i].substr(0, rows[i].find(',')));
    const double v = std::stod(rows[i].substr(rows[i].find(',') + 1));
    CHECK(std::abs(v - std::numbers::pi / std::cosh(std::numbers::pi * xi / 2)) < 1e-14);
  }

  r = cli({"table", "gegenbauer", "n=3", "mu=1", "x=0.25:1:1"});
  rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1]) == 0.25);

  const auto out = scratch("grid.csv");
  r = cli({"table", "ft-f", "d=2", "k=0,0", "a=0.5", "xi=0,0", "xi1=-1:1:3", "xi2=0:2:5", "--out", out.string()});
  CHECK(r.code == kExitOk);
  rows = lines(slurp(out));
  REQUIRE(rows.size() == 16);
  CHECK(rows[0] == "xi1,xi2,re,im");
  CHECK(rows[1].rfind("-1.0000000000000000e+00,0.0000000000000000e+00,", 0) == 0);
  CHECK(rows[2].rfind("-1.0000000000000000e+00,5.0000000000000000e-01,", 0) == 0);

  CHECK(cli({"table", "gegenbauer", "n=3", "mu=1"}).code == kExitUsage);
  CHECK(cli({"table", "gegenbauer", "n=3", "mu=1", "x=1:0"}).code == kExitUsage);
  CHECK(cli({"table", "gegenbauer", "n=3", "mu=1", "x=0:1:0"}).code == kExitUsage);
}
