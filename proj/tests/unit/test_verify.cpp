#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <numbers>

#include "conefourier/verify.hpp"

using namespace conefourier;

namespace {

ParamMap pm(std::initializer_list<std::pair<const std::string, std::vector<double>>> init) { return ParamMap(init); }

}  // namespace

TEST_CASE("single checks") {
  const auto g = check_identity("gegenbauer-orth", pm({{"n", {2}}, {"m", {2}}, {"mu", {1.0}}}));
  CHECK(g.pass);
  CHECK(g.rel_err < 1e-10);
  CHECK(g.tol == 1e-10);

  const auto off = check_identity("gegenbauer-orth", pm({{"n", {2}}, {"m", {3}}, {"mu", {1.0}}}));
  CHECK(off.pass);
  CHECK(off.rhs == Cx(0.0));

  const auto t = check_identity("theta-dual", pm({{"k", {3}}, {"a", {0.5}}, {"mu", {1.0}}, {"xi", {2.0}}}));
  CHECK(t.pass);
  CHECK(t.rel_err < 1e-12);

  const auto f = check_identity("ft-f", pm({{"k", {0}}, {"a", {0.5}}, {"mu", {1.0}}, {"xi", {0.0}}}));
  CHECK(f.pass);
  CHECK(std::abs(f.rhs - std::numbers::pi) < 1e-14);
  CHECK(std::abs(f.lhs - std::numbers::pi) < 1e-6);
  CHECK(f.evals > 0);
  CHECK(f.seconds == 0.0);
}

TEST_CASE("parameter and domain errors") {
  CHECK_THROWS_AS(check_identity("no-such-id", {}), ParameterError);
  CHECK_THROWS_AS(check_identity("gegenbauer-orth", pm({{"n", {2}}, {"mu", {1.0}}})), ParameterError);
  CHECK_THROWS_AS(check_identity("gegenbauer-orth", pm({{"n", {2}}, {"m", {2}}, {"mu", {1.0}}, {"zeta", {1}}})),
                  ParameterError);
  CHECK_THROWS_AS(check_identity("gegenbauer-orth", pm({{"n", {2.5}}, {"m", {2}}, {"mu", {1.0}}})), ParameterError);
  CHECK_THROWS_AS(check_identity("gegenbauer-orth", pm({{"n", {2}}, {"m", {2}}, {"mu", {-0.6}}})), DomainError);
  CHECK_THROWS_AS(run_suite({"bogus"}, {}), ParameterError);
}

TEST_CASE("suite selection and grids") {
  CHECK(identity_catalog().size() == 15);
  CHECK(is_identity("parseval-b"));
  CHECK_FALSE(is_identity("parseval-c"));

  const auto empty = run_suite({}, {});
  CHECK(empty.reports.empty());
  CHECK(empty.summary.total == 0);

  const auto ft = run_suite({"ft-f"}, {});
  CHECK(ft.reports.size() == 36);
  CHECK(ft.summary.passed == 36);
  for (std::size_t i = 1; i < ft.reports.size(); ++i) CHECK(ft.reports[i - 1].params < ft.reports[i].params);
}

TEST_CASE("determinism across runs and job counts") {
  SuiteOptions one;
  one.jobs = 1;
  SuiteOptions two;
  two.jobs = 2;
  const std::vector<std::string> ids{"theta-dual", "fd-recursion", "gegenbauer-orth", "norm-constants"};
  const std::string a = suite_to_json(run_suite(ids, one));
  const std::string b = suite_to_json(run_suite(ids, one));
  const std::string c = suite_to_json(run_suite(ids, two));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(default_grid("theta-dual", 7) == default_grid("theta-dual", 7));
  CHECK_FALSE(default_grid("theta-dual", 7) == default_grid("theta-dual", 8));
}

TEST_CASE("a failing check stays isolated") {
  const std::vector<std::string> ids{"theta-dual", "gegenbauer-orth"};
  const auto clean = run_suite(ids, {});
  SuiteOptions opt;
  Grid g = default_grid("gegenbauer-orth", 1);
  g.push_back(pm({{"n", {2}}, {"m", {2}}, {"mu", {-0.6}}}));
  opt.grids["gegenbauer-orth"] = g;
  const auto dirty = run_suite(ids, opt);
  CHECK(dirty.summary.total == clean.summary.total + 1);
  CHECK(dirty.summary.passed == clean.summary.passed);
  int failures = 0;
  for (const auto& r : dirty.reports) {
    if (r.pass) continue;
    ++failures;
    CHECK(r.id == "gegenbauer-orth");
    CHECK(r.reason.find("mu > -1/2") != std::string::npos);
  }
  CHECK(failures == 1);
  for (const auto& r : clean.reports) {
    bool found = false;
    for (const auto& s : dirty.reports) {
      if (s.id == r.id && s.params == r.params) found = report_to_json(s) == report_to_json(r);
    }
    CHECK(found);
  }
}

TEST_CASE("report serialization") {
  CHECK(format_number(0.1) == "1.0000000000000001e-01");
  CHECK(format_number(NAN) == "null");
  CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);

  const auto s = run_suite({"norm-constants"}, {});
  const auto doc = nlohmann::json::parse(suite_to_json(s));
  CHECK(doc.size() == 2);
  CHECK(doc["reports"].size() == s.reports.size());
  CHECK(doc["summary"]["total"] == s.summary.total);
  CHECK(doc["summary"]["passed"] == s.summary.passed);
  CHECK(doc["summary"]["max_rel_err_by_id"].contains("norm-constants"));
  const auto& r = doc["reports"][0];
  for (const char* key : {"id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "seconds", "evals"}) {
    CHECK(r.contains(key));
  }
  CHECK(r["lhs"].contains("re"));
  CHECK(r["lhs"].contains("im"));
  CHECK(r["lhs"]["re"].get<double>() == s.reports[0].lhs.real());

  const std::string csv = reports_to_csv(s.reports);
  CHECK(csv.rfind("id,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(s.reports.size()) + 1);
}
