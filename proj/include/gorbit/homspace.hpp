#pragma once

// Homogeneous spaces G/H with H a block-diagonal classical subgroup: the
// reductive split g = h ⊕ m, the normalizer of h, the split m = n ⊕ p, and
// the decomposition of m into irreducible ad(h)-invariant summands.
//
// Subspaces of g are matrices whose columns are Q-orthonormal vectors in
// frame coordinates (see liealg.hpp). Subspaces of m are expressed against
// the Q-orthonormal m basis ("m coordinates").

#include <Eigen/Dense>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gorbit/config.hpp"
#include "gorbit/liealg.hpp"

namespace gorbit {

using Rng = std::mt19937_64;

struct SpaceSpec {
  Family family = Family::su;
  int n = 0;
  std::vector<int> blocks;
  bool det_one = false;

  /// Number of leading coordinates not covered by a block.
  int free_coordinates() const;
  /// so(n) with a block of size 1 is admitted but outside the n_j > 1 hypothesis.
  bool all_blocks_nontrivial() const;
  /// Human-readable name, e.g. "SU(5)/S(U(2)xU(2))".
  std::string name() const;
  /// Canonical space-spec text, e.g. "family=su n=5 blocks=2,2 det_one=true".
  std::string text() const;
};

/// Throws InvalidSpec unless n >= 2, blocks non-empty, every block >= 1 and sum(blocks) <= n.
void validate(const SpaceSpec& spec);

struct HomogeneousSpace {
  SpaceSpec spec;
  std::shared_ptr<const LieAlgebra> g;
  Eigen::MatrixXd h;  // dim g × dim h
  Eigen::MatrixXd m;  // dim g × dim m

  int dim_g() const { return g->dim(); }
  int dim_h() const { return static_cast<int>(h.cols()); }
  int dim_m() const { return static_cast<int>(m.cols()); }

  std::vector<AlgebraVector> h_basis() const;
  std::vector<AlgebraVector> m_basis() const;

  Eigen::VectorXd proj_h(const Eigen::VectorXd& frame) const { return h * (h.transpose() * frame); }
  Eigen::VectorXd proj_m(const Eigen::VectorXd& frame) const { return m * (m.transpose() * frame); }

  /// ad(h_k) restricted to m, in m coordinates (skew-symmetric), one per h basis vector.
  std::vector<Eigen::MatrixXd> isotropy_action() const;
  /// ad(x) restricted to m for arbitrary x ∈ g preserving m (frame coordinates).
  Eigen::MatrixXd action_on_m(const Eigen::VectorXd& x) const;

  /// Frame coordinates of an m-coordinate vector, and back.
  Eigen::VectorXd lift(const Eigen::VectorXd& m_coords) const { return m * m_coords; }
  Eigen::VectorXd to_m(const Eigen::VectorXd& frame) const { return m.transpose() * frame; }
};

/// Builds h as the block subalgebra placed on the trailing coordinates, with
/// m its Q-orthogonal complement. Throws InvalidSpec for invalid specs.
HomogeneousSpace build_space(const SpaceSpec& spec, const Tolerances& tol = {});

/// Basis of {x ∈ g : [x, h] ⊆ h} in frame coordinates: the columns of
/// space.h first, followed by a Q-orthonormal basis of the rest.
Eigen::MatrixXd normalizer(const HomogeneousSpace& space, const Tolerances& tol = {});

struct ReductiveSplit {
  Eigen::MatrixXd n;  // frame coordinates
  Eigen::MatrixXd p;
  Eigen::MatrixXd n_m;  // m coordinates
  Eigen::MatrixXd p_m;
  int dim_n() const { return static_cast<int>(n.cols()); }
  int dim_p() const { return static_cast<int>(p.cols()); }
};

/// n = proj_m(normalizer), p = its Q-orthogonal complement in m.
ReductiveSplit reductive_split(const HomogeneousSpace& space, const Eigen::MatrixXd& normalizer_basis,
                               const Tolerances& tol = {});

struct Summand {
  Eigen::MatrixXd basis;  // m coordinates, orthonormal columns
  int class_id = 0;
  bool in_n = false;
  int dim() const { return static_cast<int>(basis.cols()); }
};

struct ModuleDecomposition {
  std::vector<Summand> summands;
  int n_dim = 0;
  /// "h" or "normalizer": which algebra's action was decomposed.
  std::string acting;
  /// Smallest relative gap between distinct commutant eigenvalue clusters.
  double min_cluster_gap = 0.0;

  std::vector<int> dims() const;
  int class_count() const;
};

/// Basis (m coordinates) of the symmetric operators on span(sub) commuting
/// with every operator in `action` (each given on all of m).
std::vector<Eigen::MatrixXd> symmetric_commutant(const std::vector<Eigen::MatrixXd>& action,
                                                 const Eigen::MatrixXd& sub, const Tolerances& tol = {});

/// Dimension of Hom(S_i, S_j) for the given action.
int intertwiner_dimension(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& si,
                          const Eigen::MatrixXd& sj, const Tolerances& tol = {});
/// Basis of Hom(S_i, S_j) as (dim S_j × dim S_i) matrices, Frobenius-orthonormal.
std::vector<Eigen::MatrixXd> intertwiners(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& si,
                                          const Eigen::MatrixXd& sj, const Tolerances& tol = {});

/// Splits the invariant subspace `sub` (m coordinates) into irreducible
/// summands of `action` by diagonalizing random symmetric commutant elements.
/// Throws DecompositionFailure if eigenvalue clusters cannot be resolved.
std::vector<Eigen::MatrixXd> split_irreducible(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& sub,
                                               Rng& rng, const Tolerances& tol = {}, double* min_gap = nullptr);

/// Irreducible decomposition of m under ad(h), with class ids and n/p flags.
ModuleDecomposition isotypic_decompose(const HomogeneousSpace& space, const ReductiveSplit& split, Rng& rng,
                                       const Tolerances& tol = {});
/// Same, under the action of the whole normalizer on m.
ModuleDecomposition normalizer_decompose(const HomogeneousSpace& space, const Eigen::MatrixXd& normalizer_basis,
                                         const ReductiveSplit& split, Rng& rng, const Tolerances& tol = {});

}  // namespace gorbit
