#pragma once

// G-invariant metrics on G/H as metric endomorphisms Λ of m: Q-symmetric,
// positive definite and commuting with ad(h)|_m. Families are linear spans of
// symmetric generators, reduced by the normalizer block constraint and by
// eigenvalue-equality constraints derived from brackets between summands.

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "gorbit/config.hpp"
#include "gorbit/homspace.hpp"

namespace gorbit {

struct MetricEndomorphism {
  Eigen::MatrixXd matrix;  // m coordinates

  /// Applies Λ to an m-coordinate vector.
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const { return matrix * x; }
};

/// Wraps a matrix after checking symmetry, positivity and ad(h)-equivariance.
/// Throws DomainError when a check fails.
MetricEndomorphism make_metric(const HomogeneousSpace& space, Eigen::MatrixXd matrix, const Tolerances& tol = {});

enum class ParamKind { scalar, intertwiner };

/// A group of parameters forced equal (or a single one forced to zero).
struct ParamMerge {
  std::vector<std::string> params;
  std::string equals;      // surviving parameter name, or "0"
  std::string provenance;  // "normalizer" | "eigen"
  std::string reason;
};

struct MetricFamily {
  std::vector<Eigen::MatrixXd> generators;
  std::vector<std::string> names;
  std::vector<ParamKind> kinds;
  std::vector<ParamMerge> merges;
  /// Index of the parameter fixed to 1 when normalizing away homotheties.
  int homothety_index = -1;
  /// p-block of m (m coordinates), used to locate the homothety parameter.
  Eigen::MatrixXd p_m;

  int size() const { return static_cast<int>(generators.size()); }
  int index_of(const std::string& name) const;
  Eigen::MatrixXd operator()(const Eigen::VectorXd& params) const;
  /// "all scalar parameters > 0" plus a note when intertwiner blocks exist.
  std::string positivity_domain() const;
};

/// Symmetric part of the ad(h)-commutant on m: one scalar generator per
/// summand and, for equivalent summands, the symmetrized intertwiners.
/// Scalar parameters are named mu / mu_k on n and lambda_k on p; intertwiners x_i_j_r.
MetricFamily metric_space(const HomogeneousSpace& space, const ReductiveSplit& split,
                          const ModuleDecomposition& decomposition, const Tolerances& tol = {});

/// Keeps the operators that are block-diagonal on n ⊕ p with an
/// ad(n)-invariant n-block.
MetricFamily apply_normalizer_constraint(const HomogeneousSpace& space, const ReductiveSplit& split,
                                         const MetricFamily& family, const Tolerances& tol = {});

/// Forces λ_i = λ_j when [m_i, m_j] has a non-zero component outside
/// m_i ⊕ m_j, and λ_i = λ_j = λ_k when [m_i, m_j] meets m_k. Only summands on
/// which every family member acts by a scalar take part.
MetricFamily eigen_constraints(const HomogeneousSpace& space, const ModuleDecomposition& decomposition,
                               const MetricFamily& family, const Tolerances& tol = {});

MetricEndomorphism normal_metric(const HomogeneousSpace& space);

/// Σ params·generators. Unlisted scalar parameters default to 1, intertwiner
/// parameters to 0. Throws InvalidArgument for unknown names or non-positive
/// scalar values, DomainError if the result is not positive definite.
MetricEndomorphism instantiate(const HomogeneousSpace& space, const MetricFamily& family,
                               const std::map<std::string, double>& params, const Tolerances& tol = {});

}  // namespace gorbit
