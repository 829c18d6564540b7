#pragma once

// Identity catalog and check engine. Each identity compares a closed-form
// value (rhs) against an independent computation (lhs), usually a
// quadrature oracle, and yields a CheckReport.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "conefourier/errors.hpp"
#include "conefourier/kernel.hpp"
#include "conefourier/quadrature.hpp"

namespace conefourier {

/// Missing, unknown or malformed check parameters, or an unknown identity.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Parameter record. Scalars are one-element vectors; multi-indices and
/// points are vectors ("k", "l", "x", "xi").
using ParamMap = std::map<std::string, std::vector<double>>;

const std::vector<std::string>& identity_catalog();
bool is_identity(const std::string& id);

struct CheckReport {
  std::string id;
  ParamMap params;
  Cx lhs;
  Cx rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  double seconds = 0.0;
  long long evals = 0;
  std::string reason;  // empty unless the check failed for a non-numeric cause
  // pass requires abs_err <= tol * scale. Not serialized.
  double scale = 0.0;
};

/// Tolerance applied to a check. Algebraic identities 1e-12 (theta-dual,
/// fd-recursion) or 1e-11 (norm-constants); one-variable orthogonality
/// 1e-10; ball orthogonality 1e-8; ball eigenfunction 1e-4; cone
/// orthogonality and Fourier transforms 1e-6; Parseval 1e-5 at d = 1 and
/// 1e-4 above.
double identity_tolerance(const std::string& id, const ParamMap& params);

/// Throws ParameterError on bad parameters and DomainError when the owning
/// module rejects them. Oracle non-convergence gives a failed report.
/// `seconds` is measured only when `timing` is set, so default reports are
/// bit-reproducible.
CheckReport check_identity(const std::string& id, const ParamMap& params, const QuadratureConfig& cfg = {},
                           bool timing = false);

using Grid = std::vector<ParamMap>;

/// Curated parameter grid of an identity. Random sweeps (theta-dual,
/// fd-recursion, ball-eigen) draw from mt19937_64 seeded with `seed`.
Grid default_grid(const std::string& id, std::uint64_t seed);

struct SuiteOptions {
  QuadratureConfig quad;
  std::map<std::string, Grid> grids;  // replaces the default grid per id
  std::uint64_t seed = 1;
  int jobs = 1;
  bool timing = false;
};

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  std::map<std::string, double> max_rel_err_by_id;
};

struct SuiteResult {
  std::vector<CheckReport> reports;  // sorted by (id, params)
  SuiteSummary summary;
};

/// Runs every grid point of the selected identities. Errors of single
/// checks become failed reports; unknown ids throw ParameterError.
SuiteResult run_suite(const std::vector<std::string>& ids, const SuiteOptions& opt);

/// Decimal with 17 significant digits ("null" for non-finite values).
std::string format_number(double v);

std::string report_to_json(const CheckReport& r);
std::string suite_to_json(const SuiteResult& s);
std::string reports_to_csv(const std::vector<CheckReport>& reports);

}  // namespace conefourier
