#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include <lieiso/symmetry.hpp>

namespace lieiso::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kRangeError = 2,
  kInvalidGram = 3,
  kIoError = 4,
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rows of the metric table as JSON objects.
nlohmann::json metrics_table();

/// Rows of the symmetry table, `grid` samples per stratum.
nlohmann::json symmetry_table(int grid, const Tolerances& tol);

std::string to_csv(const nlohmann::json& rows, const std::vector<std::string>& columns);

nlohmann::json scan_to_json(const ModuliScanResult& scan, const GridSpec& grid);

/// e.g. "g_mu_nu[mu=0.5;nu=1]".
std::string metric_label(const MetricParams& p);

}  // namespace lieiso::cli
