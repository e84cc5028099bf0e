#pragma once

// Small dense helpers shared by the subspace computations. Every subspace is
// stored as a matrix whose columns are an orthonormal basis.

#include <Eigen/Dense>
#include <vector>

namespace gorbit::linalg {

/// Orthonormal basis of ker(A); singular values ≤ rel_cutoff·σ_max count as zero.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_cutoff = 1e-9);

/// Orthonormal basis of span(cols); columns with residual norm ≤ tol are dropped.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, double tol = 1e-9);

/// Orthonormal basis of the orthogonal complement of span(u) in R^ambient.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& u, Eigen::Index ambient, double tol = 1e-9);

/// Basis of span(u) obtained by projecting the standard basis vectors onto it
/// in index order and orthonormalizing. Deterministic for a given subspace,
/// and reproduces coordinate-aligned subspaces exactly.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& u);

/// Orthogonal projector onto span(u) (u with orthonormal columns).
Eigen::MatrixXd projector(const Eigen::MatrixXd& u);

/// Largest principal-angle sine between two subspaces; 0 iff equal spans.
double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

/// Minimal-norm least-squares solution via SVD with relative cutoff.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rel_cutoff = 1e-10);

/// Null space in reduced-row-echelon form over the column order of c: each
/// basis vector has a 1 at one free column and 0 at the other free columns.
struct EchelonNullSpace {
  Eigen::MatrixXd basis;            // cols() × free.size()
  std::vector<Eigen::Index> free;   // free column indices, ascending
  std::vector<Eigen::Index> pivot;  // pivot column indices, ascending
};
EchelonNullSpace echelon_null_space(const Eigen::MatrixXd& c, double tol = 1e-9);

}  // namespace gorbit::linalg
