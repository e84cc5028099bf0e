#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gorbit {

struct Tolerances {
  double rel = 1e-9;
  double abs = 1e-12;
  /// Relative eigenvalue gap below which two commutant eigenvalues are one cluster.
  double cluster = 1e-7;
  /// Positivity threshold for metric endomorphisms.
  double positivity = 1e-10;
};

struct GoThresholds {
  /// Relative residual ‖[a+x, Λx]‖ / (‖x‖·‖Λx‖) above which x refutes the g.o. property.
  double refute = 1e-6;
  /// Relative residual at or below which x is accepted.
  double accept = 1e-9;
};

struct CertifyConfig {
  int samples = 200;
  std::uint64_t seed = 1;
  GoThresholds thresholds;
  bool structured = true;
  /// Cap on one-basis-vector-per-summand combinations added to the structured samples.
  int max_basis_combinations = 256;
  double svd_cutoff = 1e-10;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

inline const std::vector<double>& default_grid_values() {
  static const std::vector<double> values{0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0};
  return values;
}

/// Everything a CLI run depends on; embedded verbatim in every report.
struct RunConfig {
  Tolerances tol;
  CertifyConfig certify;
  /// Per-parameter grid values; parameters not listed use default_grid_values().
  std::map<std::string, std::vector<double>> grid;
  bool exclude_normal = false;
  std::string output_path;
};

void validate(const RunConfig& config);

}  // namespace gorbit
