#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "feq/tableau.hpp"

namespace feq {

// Malformed or inconsistent experiment configuration. Messages name the
// offending field; unknown keys are hard errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One assertion row of a report. pass records the raw comparison
// value <= threshold; expected_fail marks rows whose residual is supposed
// to exceed the threshold (counterexample experiments) and only affects
// the exit code, not the pass column.
struct ReportRow {
  std::string experiment;
  int step = 0;
  int node = -1;  // -1 renders as an empty CSV field
  std::string residual;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool expected_fail = false;
};

struct RunOutcome {
  std::string id;
  std::vector<ReportRow> rows;
  double max_residual = 0.0;
  double measured_order = std::numeric_limits<double>::quiet_NaN();
  bool has_order = false;
  std::uint64_t seed = 0;
  double solver_tol = 1e-13;
  int exit_code = 0;       // 0 pass, 2 assertion failure, 3 solver failure
  std::string error;       // populated for exit_code 3

  void finalize(double min_fail_fraction);  // computes exit_code from rows
};

// Executes one experiment described by a JSON config string. Throws
// ConfigError on schema violations; solver failures are captured in the
// outcome (exit_code 3).
RunOutcome run_config_text(const std::string& json_text,
                           const std::string& source = "<inline>");

// File variants write <report>.csv and <report>.json next to the configured
// report path (FEQLAB_REPORT_DIR prefixes relative paths) and return the
// process exit code: 0 pass, 2 assertion failure, 3 solver failure,
// 4 config error.
int run_config_file(const std::string& path);

// Runs every *.json in the directory (sorted by filename; FEQLAB_JOBS > 1
// runs them concurrently), writes the per-config reports plus a combined
// <dir>/suite-summary.json, and returns the worst exit code.
int run_suite(const std::string& dir);

// Convergence study helper: least-squares slope of log error against
// log dt.
double fit_order(const std::vector<double>& dts, const std::vector<double>& errors);

// Catalog of builtin tableaux, problems, PDE systems, observables and laws.
std::string list_builtins();

// Tableau file: JSON object with fields name, s, A (row-major s*s), b, c,
// order, optional nonstandard_c.
ButcherTableau load_tableau_file(const std::string& path);
ButcherTableau parse_tableau_json(const std::string& json_text,
                                  const std::string& source = "<inline>");

// CSV serialization with the fixed column layout
// experiment,step,node,residual,value,threshold,pass.
std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const RunOutcome& outcome);

}  // namespace feq
