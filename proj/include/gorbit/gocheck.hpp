#pragma once

// Certification of the geodesic-orbit property. A metric Λ on G/H is g.o.
// iff for every x ∈ m some a ∈ h solves [a + x, Λx] = 0. For a single x this
// is a linear least-squares problem in a; certify_go samples many x.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gorbit/config.hpp"
#include "gorbit/homspace.hpp"
#include "gorbit/invmetrics.hpp"

namespace gorbit {

struct GeodesicGraphSolution {
  AlgebraVector x;  // in m
  AlgebraVector a;  // in h, minimal-norm least-squares solution
  /// ‖[a + x, Λx]‖ (Q-norm).
  double residual = 0.0;
  /// residual / (‖x‖·‖Λx‖); 0 when x = 0.
  double relative_residual = 0.0;
  /// ‖proj_h [x, Λx]‖, which vanishes for equivariant Λ.
  double h_component = 0.0;
};

/// Solves for a ∈ h with x given in m coordinates.
GeodesicGraphSolution solve_geodesic_graph(const HomogeneousSpace& space, const MetricEndomorphism& metric,
                                           const Eigen::VectorXd& x_m, double svd_cutoff = 1e-10);
/// Same for an algebra element; throws InvalidArgument if x has an h-component.
GeodesicGraphSolution solve_geodesic_graph(const HomogeneousSpace& space, const MetricEndomorphism& metric,
                                           const AlgebraVector& x, double svd_cutoff = 1e-10);

enum class VerdictKind { certified_not_go, probably_go, inconclusive };

std::string_view to_string(VerdictKind kind);

struct GoVerdict {
  VerdictKind kind = VerdictKind::inconclusive;
  /// Worst sample; always set for certified_not_go.
  std::optional<GeodesicGraphSolution> witness;
  int samples = 0;
  int random_samples = 0;
  int structured_samples = 0;
  double max_residual = 0.0;  // relative
  std::uint64_t seed = 0;
};

/// Sample vectors (m coordinates) drawn by certify_go: `samples` Gaussian unit
/// vectors, then structured ones built from the summands. Sample i uses its
/// own RNG stream derived from (seed, i).
std::vector<Eigen::VectorXd> certification_samples(const HomogeneousSpace& space,
                                                   const ModuleDecomposition& decomposition,
                                                   const CertifyConfig& config, int* random_count = nullptr);

GoVerdict certify_go(const HomogeneousSpace& space, const ModuleDecomposition& decomposition,
                     const MetricEndomorphism& metric, const CertifyConfig& config);

struct ScanGrid {
  /// Parameters being varied, with their values. Other scalar parameters are
  /// fixed to 1 and intertwiner parameters to 0.
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
  bool exclude_normal = false;
};

/// The default grid: every scalar parameter except the homothety one over
/// default_grid_values(); `overrides` replaces the values of named
/// parameters. Intertwiner parameters are scanned only when listed in overrides.
ScanGrid default_grid(const MetricFamily& family, const std::map<std::string, std::vector<double>>& overrides = {},
                      bool exclude_normal = false);

struct ScanPoint {
  std::map<std::string, double> params;  // every family parameter
  GoVerdict verdict;
  bool valid = true;  // false if the point does not define a metric
  std::string error;
  bool normal = false;
};

struct ScanReport {
  std::string space;
  std::vector<std::string> parameter_names;
  std::vector<ScanPoint> points;
  std::vector<std::map<std::string, double>> passing_set;
};

ScanReport scan_parameters(const HomogeneousSpace& space, const ModuleDecomposition& decomposition,
                           const MetricFamily& family, const ScanGrid& grid, const CertifyConfig& config);

/// Deterministic per-index seed derivation (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace gorbit
