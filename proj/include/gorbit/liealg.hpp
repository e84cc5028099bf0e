#pragma once

// Compact classical matrix Lie algebras so(n), u(n), su(n), sp(n) with a
// Q-orthogonal basis, cached structure constants and Q(X, Y) = -Re tr(XY).
//
// Two coordinate systems are used throughout:
//  * basis coordinates (AlgebraVector::coeffs): X = sum_i c_i b_i, with the
//    basis elements exactly as labelled (e_12 = E_12 - E_21, ...);
//  * frame coordinates: coefficients against the Q-normalized basis
//    b_i / sqrt(Q(b_i, b_i)). Q is the Euclidean product in this frame and
//    every ad(X) is a skew-symmetric matrix.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gorbit/config.hpp"

namespace gorbit {

enum class Family { so, u, su, sp };

std::string_view to_string(Family family);
/// Throws InvalidSpec on an unknown name.
Family family_from_string(std::string_view name);

using ComplexMatrix = Eigen::MatrixXcd;

/// An element of a LieAlgebra in basis coordinates. Carries the id of its
/// algebra so that mixing elements of different algebras is detected.
struct AlgebraVector {
  std::uint64_t algebra_id = 0;
  Eigen::VectorXd coeffs;

  AlgebraVector& operator+=(const AlgebraVector& other);
  AlgebraVector& operator-=(const AlgebraVector& other);
  AlgebraVector& operator*=(double s);
};

AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b);
AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b);
AlgebraVector operator-(AlgebraVector a);
AlgebraVector operator*(double s, AlgebraVector a);

class LieAlgebra {
 public:
  /// Builds the algebra from an explicit Q-orthogonal basis. Throws
  /// InvalidSpec if the basis is not Q-orthogonal or not bracket-closed.
  LieAlgebra(Family family, int n, std::vector<std::string> labels, std::vector<ComplexMatrix> basis,
             Tolerances tol = {});

  Family family() const noexcept { return family_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  std::uint64_t id() const noexcept { return id_; }
  const Tolerances& tolerances() const noexcept { return tol_; }
  /// Size of the defining matrices (2n for sp(n)).
  int matrix_size() const noexcept { return matrix_size_; }

  const std::vector<ComplexMatrix>& basis() const noexcept { return basis_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Diagonal of the Gram matrix Q(b_i, b_i).
  const Eigen::VectorXd& gram() const noexcept { return gram_; }
  Eigen::MatrixXd gram_matrix() const { return gram_.asDiagonal(); }
  /// c[i][j][k] with [b_i, b_j] = sum_k c[i][j][k] b_k.
  double structure(int i, int j, int k) const;

  /// The Killing form equals killing_factor() * tr(XY) on simple algebras;
  /// empty for u(n) and the abelian so(2). Q differs from it by a homothety.
  std::optional<double> killing_factor() const noexcept { return killing_factor_; }

  /// Index of a basis label, or -1.
  int index_of(std::string_view label) const;

  AlgebraVector zero() const;
  AlgebraVector element(int i) const;
  /// Throws InvalidArgument for an unknown label.
  AlgebraVector element(std::string_view label) const;
  AlgebraVector from_coeffs(Eigen::VectorXd coeffs) const;

  ComplexMatrix to_matrix(const AlgebraVector& x) const;
  /// Expands a matrix in the basis; throws InvalidArgument if it is not in the algebra.
  AlgebraVector from_matrix(const ComplexMatrix& m) const;
  /// True if m lies in the algebra within tolerance.
  bool contains(const ComplexMatrix& m) const;

  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;
  /// The matrix commutator, re-expanded in the basis (reference route).
  AlgebraVector bracket_via_matrices(const AlgebraVector& x, const AlgebraVector& y) const;
  double inner(const AlgebraVector& x, const AlgebraVector& y) const;
  double norm(const AlgebraVector& x) const;

  Eigen::VectorXd to_frame(const AlgebraVector& x) const;
  AlgebraVector from_frame(const Eigen::VectorXd& frame) const;
  /// Matrix of ad(x) in frame coordinates (x given in frame coordinates).
  Eigen::MatrixXd ad_frame(const Eigen::VectorXd& x) const;
  /// Row-major dim×dim block of ad of the i-th normalized basis element.
  std::span<const double> ad_frame_block(int i) const;
  Eigen::VectorXd bracket_frame(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

 private:
  void require_same(const AlgebraVector& x) const;

  Family family_;
  int n_;
  int matrix_size_;
  std::uint64_t id_;
  Tolerances tol_;
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> basis_;
  Eigen::VectorXd gram_;
  Eigen::VectorXd scale_;             // sqrt(gram)
  std::vector<double> structure_;     // dim^3, [i][j][k]
  std::vector<double> ad_frame_;      // dim blocks of dim×dim, row-major
  std::optional<double> killing_factor_;
};

/// Q(X, Y) = -Re tr(XY) on matrices.
double q_inner(const ComplexMatrix& x, const ComplexMatrix& y);

/// su(n): {e_ab, f_ab (a<b), d_l (l = 1..n-1)} where e_ab = E_ab - E_ba,
/// f_ab = i(E_ab + E_ba), f_aa = (i/2) E_aa and d_l is f_ll - f_{l+1,l+1}
/// made Q-orthogonal to d_1..d_{l-1}.
LieAlgebra su_basis(int n, Tolerances tol = {});
/// so(n): {e_ab, a<b}.
LieAlgebra so_basis(int n, Tolerances tol = {});
/// u(n): {e_ab, f_ab (a<b), f_aa (a = 1..n)}.
LieAlgebra u_basis(int n, Tolerances tol = {});
/// sp(n) as complex 2n×2n matrices Z with Z skew-Hermitian and ZJ = J conj(Z),
/// Z = [[A, B], [-conj(B), conj(A)]]. Basis: the u(n) basis placed in A
/// (labels e_ab, f_ab, f_aa), real symmetric B (s_ab, s_aa) and imaginary
/// symmetric B (t_ab, t_aa).
LieAlgebra sp_basis(int n, Tolerances tol = {});
LieAlgebra make_algebra(Family family, int n, Tolerances tol = {});

/// X̄ = sum(-d_ab e_ab + c_ab f_ab) for X = sum(c_ab e_ab + d_ab f_ab).
/// Defined on u(n) and su(n) for X without diagonal part.
AlgebraVector bar_map(const LieAlgebra& g, const AlgebraVector& x);

}  // namespace gorbit
