#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlab/error.hpp"

namespace qlab {

/// Invalid run configuration; the CLI maps it to exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string suite = "all";
  std::optional<double> q;
  std::optional<double> q0;
  double L = 1.0;
  double hbar = 1.0;
  int trunc = 32;
  int samples = 100;
  int scan_samples = 0;
  std::uint64_t seed = 1;
  std::string preset = "harmonic";
  std::string potential;  // expression in x; overrides preset when set
  std::vector<double> spacings{0.1, 0.05, 0.025};
  int levels = 4;
  std::optional<std::pair<double, double>> window;
  std::vector<double> qe{0.21, 0.1, 0.01};
  std::string gamma = "pauli";
  double tol_scale = 1.0;  // multiplies every floating-point tolerance
};

/// One named contract. `value` is compared with `limit` via `relation`
/// ("<=", ">=" or "==" for exact checks, where value counts mismatches).
struct CheckRow {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string relation = "<=";
  bool pass = false;
  std::string detail;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<bool> row_pass;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckRow> checks;
  std::vector<Table> tables;

  bool pass() const;
};

Report run_uncertainty(const RunConfig& cfg);
Report run_lattice(const RunConfig& cfg);
Report run_qcalc(const RunConfig& cfg);
Report run_nc(const RunConfig& cfg);
Report run_fiber(const RunConfig& cfg);

/// Writes the report; CSV puts the checks in `path` and every table in
/// `<path stem>_<table>.csv` beside it. Returns the files written.
std::vector<std::string> write_report(const Report& r, const std::string& path, const std::string& format);

}  // namespace qlab
