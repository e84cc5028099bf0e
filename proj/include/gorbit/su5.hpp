#pragma once

// End-to-end analysis of SU(5)/S(U(2)×U(2)): every structural fact of the
// known structural fact of the space is recomputed and checked, then the remaining
// one-parameter question (which μ give a g.o. metric) is answered
// numerically, twice: by the generic certifier on the reduced family, and
// by least squares on the terminal system in the unknown a ∈ h.

#include <map>
#include <string>
#include <vector>

#include "gorbit/config.hpp"
#include "gorbit/gocheck.hpp"
#include "gorbit/homspace.hpp"
#include "gorbit/invmetrics.hpp"

namespace gorbit {

/// The reference vectors of the fixture, as elements of su(5).
struct Su5Fixture {
  HomogeneousSpace space;
  /// v = f22 + f33 - f44 - f55 and w = 4 f11 - f22 - f33 - f44 - f55, with
  /// f_aa taken as i·E_aa: the normalization under which the bracket
  /// coefficients 5, -1, 1, 2 between v, w and the m_ij hold.
  AlgebraVector v;
  AlgebraVector w;
  /// f22 - f33, e23, f23, f44 - f55, e45, f45 and v.
  std::vector<AlgebraVector> h_listed;
  std::vector<AlgebraVector> m01;
  std::vector<AlgebraVector> m02;
  std::vector<AlgebraVector> m12;
};

Su5Fixture make_su5_fixture(const Tolerances& tol = {});

struct FactCheck {
  std::string name;
  bool verified = false;
  double residual = 0.0;
  std::string detail;
};

struct TerminalFeasibility {
  double mu = 0.0;
  bool feasible = false;
  int samples = 0;
  double max_residual = 0.0;  // relative, as in certify_go
};

/// Least-squares solvability over a ∈ h of
///   [a, X01] + 5(1-mu) bar(X01) = 0, [a, X02] + 5(1-mu) bar(X02) = 0, [a, X12] = 0
/// at `samples` random (X01, X02, X12); feasible iff every relative residual
/// is within the acceptance threshold.
TerminalFeasibility terminal_system_feasibility(const Su5Fixture& fixture, double mu, int samples,
                                                std::uint64_t seed, const GoThresholds& thresholds,
                                                double svd_cutoff = 1e-10);

struct Su5Report {
  RunConfig config;
  Su5Fixture fixture;
  Eigen::MatrixXd normalizer_basis;
  ReductiveSplit split;
  ModuleDecomposition decomposition;             // under ad(h)
  ModuleDecomposition normalizer_decomposition;  // under ad(normalizer)
  /// "n", "m_01", "m_02", "m_12" -> summand index.
  std::map<std::string, int> summand_labels;
  MetricFamily family_equivariant;
  MetricFamily family_normalizer;
  MetricFamily family_reduced;
  std::vector<FactCheck> facts;
  std::vector<FactCheck> bracket_identities;
  ScanReport scan;
  std::vector<TerminalFeasibility> terminal;
  std::vector<double> passing_mu;
  std::vector<double> terminal_feasible_mu;
  bool consistent = false;
};

/// Throws PipelineAssertion naming the first reference fact that fails.
Su5Report su5_pipeline(const RunConfig& config, int terminal_samples = 1000);

}  // namespace gorbit
