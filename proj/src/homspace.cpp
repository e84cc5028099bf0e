#include "gorbit/homspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gorbit/error.hpp"
#include "gorbit/linalg.hpp"

namespace gorbit {

int SpaceSpec::free_coordinates() const { return n - std::accumulate(blocks.begin(), blocks.end(), 0); }

bool SpaceSpec::all_blocks_nontrivial() const {
  if (family != Family::so) return true;
  return std::all_of(blocks.begin(), blocks.end(), [](int b) { return b > 1; });
}

std::string SpaceSpec::name() const {
  std::string group;
  switch (family) {
    case Family::so:
      group = "SO";
      break;
    case Family::u:
      group = "U";
      break;
    case Family::su:
      group = "SU";
      break;
    case Family::sp:
      group = "Sp";
      break;
  }
  const std::string sub = family == Family::su ? "U" : group;
  std::ostringstream os;
  os << group << "(" << n << ")/";
  const bool s_prefix = det_one || (family == Family::su && blocks.size() > 1);
  if (s_prefix) os << "S(";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) os << "x";
    os << (family == Family::su && !s_prefix ? "SU" : sub) << "(" << blocks[i] << ")";
  }
  if (s_prefix) os << ")";
  return os.str();
}

std::string SpaceSpec::text() const {
  std::ostringstream os;
  os << "family=" << to_string(family) << " n=" << n << " blocks=";
  for (std::size_t i = 0; i < blocks.size(); ++i) os << (i ? "," : "") << blocks[i];
  os << " det_one=" << (det_one ? "true" : "false");
  return os.str();
}

void validate(const SpaceSpec& spec) {
  if (spec.n < 2) throw InvalidSpec("n must be at least 2");
  if (spec.n > 12 && spec.family != Family::sp) throw InvalidSpec("n > 12 is outside the supported matrix sizes");
  if (spec.family == Family::sp && spec.n > 6) throw InvalidSpec("sp(n) with n > 6 is outside the supported matrix sizes");
  if (spec.blocks.empty()) throw InvalidSpec("at least one isotropy block is required");
  for (int b : spec.blocks) {
    if (b < 1) throw InvalidSpec("isotropy blocks must be positive");
  }
  const int total = std::accumulate(spec.blocks.begin(), spec.blocks.end(), 0);
  if (total > spec.n) {
    throw InvalidSpec("sum of blocks " + std::to_string(total) + " exceeds n = " + std::to_string(spec.n));
  }
}

std::vector<AlgebraVector> HomogeneousSpace::h_basis() const {
  std::vector<AlgebraVector> out;
  for (Eigen::Index k = 0; k < h.cols(); ++k) out.push_back(g->from_frame(h.col(k)));
  return out;
}

std::vector<AlgebraVector> HomogeneousSpace::m_basis() const {
  std::vector<AlgebraVector> out;
  for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(g->from_frame(m.col(k)));
  return out;
}

Eigen::MatrixXd HomogeneousSpace::action_on_m(const Eigen::VectorXd& x) const {
  return m.transpose() * g->ad_frame(x) * m;
}

std::vector<Eigen::MatrixXd> HomogeneousSpace::isotropy_action() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(h.cols());
  for (Eigen::Index k = 0; k < h.cols(); ++k) out.push_back(action_on_m(h.col(k)));
  return out;
}

namespace {

// Block index of a matrix row/column; -1 for the free coordinates.
std::vector<int> block_of_index(const SpaceSpec& spec) {
  const int size = spec.family == Family::sp ? 2 * spec.n : spec.n;
  std::vector<int> coord_block(spec.n, -1);
  int pos = spec.free_coordinates();
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    for (int k = 0; k < spec.blocks[b]; ++k) coord_block[pos++] = static_cast<int>(b);
  }
  std::vector<int> out(size);
  for (int r = 0; r < size; ++r) out[r] = coord_block[r % spec.n];
  return out;
}

void check_space(const HomogeneousSpace& s, const Tolerances& tol) {
  const LieAlgebra& g = *s.g;
  const double bound = std::max(tol.abs, tol.rel) * 1e3;
  if ((s.h.transpose() * s.m).cwiseAbs().maxCoeff() > bound && s.h.cols() > 0 && s.m.cols() > 0) {
    throw NumericalFailure("h and m are not Q-orthogonal");
  }
  for (Eigen::Index i = 0; i < s.h.cols(); ++i) {
    const Eigen::MatrixXd ad = g.ad_frame(s.h.col(i));
    if (s.m.cols() > 0 && (s.m.transpose() * ad * s.h).cwiseAbs().maxCoeff() > bound) {
      throw NumericalFailure("h is not closed under the bracket");
    }
    if (s.m.cols() > 0 && s.h.cols() > 0 && (s.h.transpose() * ad * s.m).cwiseAbs().maxCoeff() > bound) {
      throw NumericalFailure("[h, m] is not contained in m");
    }
  }
}

}  // namespace

HomogeneousSpace build_space(const SpaceSpec& spec, const Tolerances& tol) {
  validate(spec);
  auto g = std::make_shared<const LieAlgebra>(make_algebra(spec.family, spec.n, tol));
  const int d = g->dim();
  const auto block = block_of_index(spec);
  const int size = g->matrix_size();

  // h = elements of g supported on the diagonal blocks.
  std::vector<std::pair<int, int>> forbidden;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      if (block[r] < 0 || block[r] != block[c]) forbidden.emplace_back(r, c);
    }
  }
  const bool trace_row = spec.det_one;
  Eigen::MatrixXd constraints(2 * static_cast<Eigen::Index>(forbidden.size()) + (trace_row ? 1 : 0), d);
  for (int i = 0; i < d; ++i) {
    const ComplexMatrix b = g->basis()[i] / std::sqrt(g->gram()(i));
    for (std::size_t f = 0; f < forbidden.size(); ++f) {
      const auto [r, c] = forbidden[f];
      constraints(2 * f, i) = b(r, c).real();
      constraints(2 * f + 1, i) = b(r, c).imag();
    }
    if (trace_row) constraints(constraints.rows() - 1, i) = b.trace().imag();
  }

  HomogeneousSpace space;
  space.spec = spec;
  space.g = g;
  space.h = linalg::canonical_basis(linalg::null_space(constraints, 1e-10));
  space.m = linalg::canonical_basis(linalg::orthogonal_complement(space.h, d));
  if (space.dim_h() == 0) throw InvalidSpec("isotropy subalgebra is trivial; the space is the group itself");
  check_space(space, tol);
  return space;
}

Eigen::MatrixXd normalizer(const HomogeneousSpace& space, const Tolerances& tol) {
  const LieAlgebra& g = *space.g;
  const int d = g.dim();
  const Eigen::Index dm = space.dim_m();
  // x normalizes h iff proj_m [h_k, x] = 0 for every h basis vector.
  Eigen::MatrixXd system(dm * space.dim_h(), d);
  for (int k = 0; k < space.dim_h(); ++k) {
    system.middleRows(k * dm, dm) = space.m.transpose() * g.ad_frame(space.h.col(k));
  }
  const Eigen::MatrixXd kernel = linalg::null_space(system, 1e-10);
  Eigen::MatrixXd extra = kernel - space.h * (space.h.transpose() * kernel);
  extra = linalg::orthonormalize(extra, 1e-8);
  if (extra.cols() > 0) extra = linalg::canonical_basis(extra);
  Eigen::MatrixXd out(d, space.dim_h() + extra.cols());
  out << space.h, extra;
  (void)tol;
  return out;
}

ReductiveSplit reductive_split(const HomogeneousSpace& space, const Eigen::MatrixXd& normalizer_basis,
                               const Tolerances& tol) {
  ReductiveSplit split;
  const Eigen::MatrixXd in_m = space.m.transpose() * normalizer_basis;
  Eigen::MatrixXd n_m = linalg::orthonormalize(in_m, 1e-8);
  if (n_m.cols() > 0) n_m = linalg::canonical_basis(n_m);
  split.n_m = n_m;
  split.p_m = linalg::canonical_basis(linalg::orthogonal_complement(n_m, space.dim_m()));
  split.n = space.m * split.n_m;
  split.p = space.m * split.p_m;
  (void)tol;
  return split;
}

std::vector<int> ModuleDecomposition::dims() const {
  std::vector<int> out;
  for (const auto& s : summands) out.push_back(s.dim());
  return out;
}

int ModuleDecomposition::class_count() const {
  int count = 0;
  for (const auto& s : summands) count = std::max(count, s.class_id + 1);
  return count;
}

namespace {

std::vector<Eigen::MatrixXd> restrict_action(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& sub,
                                             const Tolerances& tol) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(action.size());
  for (const auto& a : action) {
    const Eigen::MatrixXd image = a * sub;
    const Eigen::MatrixXd restricted = sub.transpose() * image;
    const double leak = (image - sub * restricted).norm();
    if (leak > std::max(tol.abs, tol.rel * std::max(1.0, a.norm())) * 1e3) {
      throw InvalidArgument("subspace is not invariant under the action (leak " + std::to_string(leak) + ")");
    }
    out.push_back(restricted);
  }
  return out;
}

std::vector<Eigen::MatrixXd> symmetric_commutant_restricted(const std::vector<Eigen::MatrixXd>& restricted,
                                                            Eigen::Index d) {
  if (d == 0) return {};
  std::vector<std::pair<Eigen::Index, Eigen::Index>> params;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) params.emplace_back(i, j);
  }
  const Eigen::Index u = static_cast<Eigen::Index>(params.size());
  Eigen::MatrixXd system(static_cast<Eigen::Index>(restricted.size()) * d * d, u);
  system.setZero();
  for (Eigen::Index c = 0; c < u; ++c) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    s(params[c].first, params[c].second) = 1.0;
    s(params[c].second, params[c].first) = 1.0;
    for (std::size_t k = 0; k < restricted.size(); ++k) {
      const Eigen::MatrixXd comm = s * restricted[k] - restricted[k] * s;
      system.block(static_cast<Eigen::Index>(k) * d * d, c, d * d, 1) = comm.reshaped();
    }
  }
  const Eigen::MatrixXd kernel = linalg::null_space(system, 1e-9);
  std::vector<Eigen::MatrixXd> out;
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index c = 0; c < u; ++c) {
      s(params[c].first, params[c].second) = kernel(c, k);
      s(params[c].second, params[c].first) = kernel(c, k);
    }
    out.push_back(s);
  }
  return out;
}

struct Clustering {
  std::vector<Eigen::MatrixXd> pieces;  // sub coordinates
  double min_gap = 0.0;
};

// Eigenspaces of one random symmetric commutant element.
Clustering cluster_once(const std::vector<Eigen::MatrixXd>& commutant, Eigen::Index d, Rng& rng, double cluster_tol) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  for (const auto& c : commutant) s += normal(rng) * c;
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  Eigen::VectorXd values = eig.eigenvalues();
  const double scale = std::max(values.cwiseAbs().maxCoeff(), 1e-300);
  values /= scale;
  Clustering out;
  out.min_gap = 2.0;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= d; ++i) {
    const bool boundary = i == d || values(i) - values(i - 1) > cluster_tol;
    if (!boundary) continue;
    if (i < d) out.min_gap = std::min(out.min_gap, values(i) - values(i - 1));
    out.pieces.push_back(eig.eigenvectors().middleCols(start, i - start));
    start = i;
  }
  return out;
}

std::vector<int> sorted_dims(const std::vector<Eigen::MatrixXd>& pieces) {
  std::vector<int> dims;
  for (const auto& p : pieces) dims.push_back(static_cast<int>(p.cols()));
  std::sort(dims.begin(), dims.end());
  return dims;
}

}  // namespace

std::vector<Eigen::MatrixXd> symmetric_commutant(const std::vector<Eigen::MatrixXd>& action,
                                                 const Eigen::MatrixXd& sub, const Tolerances& tol) {
  return symmetric_commutant_restricted(restrict_action(action, sub, tol), sub.cols());
}

std::vector<Eigen::MatrixXd> intertwiners(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& si,
                                          const Eigen::MatrixXd& sj, const Tolerances& tol) {
  const auto ai = restrict_action(action, si, tol);
  const auto aj = restrict_action(action, sj, tol);
  const Eigen::Index di = si.cols();
  const Eigen::Index dj = sj.cols();
  if (di == 0 || dj == 0) return {};
  // Unknown T (dj × di), column-major vec(T); T·A_i − A_j·T = 0.
  Eigen::MatrixXd system(static_cast<Eigen::Index>(action.size()) * dj * di, dj * di);
  for (Eigen::Index c = 0; c < dj * di; ++c) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dj, di);
    t(c % dj, c / dj) = 1.0;
    for (std::size_t k = 0; k < action.size(); ++k) {
      const Eigen::MatrixXd r = t * ai[k] - aj[k] * t;
      system.block(static_cast<Eigen::Index>(k) * dj * di, c, dj * di, 1) = r.reshaped();
    }
  }
  const Eigen::MatrixXd kernel = linalg::null_space(system, 1e-9);
  std::vector<Eigen::MatrixXd> out;
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) out.push_back(kernel.col(k).reshaped(dj, di));
  return out;
}

int intertwiner_dimension(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& si,
                          const Eigen::MatrixXd& sj, const Tolerances& tol) {
  return static_cast<int>(intertwiners(action, si, sj, tol).size());
}

std::vector<Eigen::MatrixXd> split_irreducible(const std::vector<Eigen::MatrixXd>& action, const Eigen::MatrixXd& sub,
                                               Rng& rng, const Tolerances& tol, double* min_gap) {
  const Eigen::Index d = sub.cols();
  if (d == 0) return {};
  const auto restricted = restrict_action(action, sub, tol);
  const auto commutant = symmetric_commutant_restricted(restricted, d);
  if (commutant.size() <= 1) return {sub};

  // Gaps inside (cluster, ambiguous] are treated as unresolved and retried.
  const double ambiguous = std::max(1e-5, 100.0 * tol.cluster);
  constexpr int kAttempts = 6;
  double worst_gap = 0.0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Clustering first = cluster_once(commutant, d, rng, tol.cluster);
    if (first.min_gap <= ambiguous) {
      worst_gap = first.min_gap;
      continue;
    }
    // A second independent element must reproduce the same summand dimensions.
    Clustering second = cluster_once(commutant, d, rng, tol.cluster);
    if (second.min_gap <= ambiguous || sorted_dims(first.pieces) != sorted_dims(second.pieces)) {
      worst_gap = std::min(first.min_gap, second.min_gap);
      continue;
    }
    if (min_gap) *min_gap = std::min(*min_gap, first.min_gap);
    std::vector<Eigen::MatrixXd> out;
    for (const auto& piece : first.pieces) {
      const Eigen::MatrixXd in_m = sub * piece;
      // A piece whose symmetric commutant is still larger than the scalars is split further.
      auto refined = split_irreducible(action, in_m, rng, tol, min_gap);
      out.insert(out.end(), refined.begin(), refined.end());
    }
    return out;
  }
  throw DecompositionFailure("commutant eigenvalue clusters unresolved after " + std::to_string(kAttempts) +
                                 " attempts; smallest gap " + std::to_string(worst_gap),
                             worst_gap);
}

namespace {

ModuleDecomposition assemble(const std::vector<Eigen::MatrixXd>& action, const ReductiveSplit& split, Rng& rng,
                             const Tolerances& tol, std::string acting) {
  ModuleDecomposition out;
  out.acting = std::move(acting);
  out.n_dim = split.dim_n();
  double gap = 2.0;
  struct Piece {
    Eigen::MatrixXd basis;
    bool in_n;
    Eigen::Index lead;
  };
  std::vector<Piece> pieces;
  for (const bool in_n : {true, false}) {
    const Eigen::MatrixXd& sub = in_n ? split.n_m : split.p_m;
    for (const auto& raw : split_irreducible(action, sub, rng, tol, &gap)) {
      Eigen::MatrixXd basis = linalg::canonical_basis(raw);
      Eigen::Index lead = 0;
      basis.col(0).cwiseAbs().maxCoeff(&lead);
      pieces.push_back({std::move(basis), in_n, lead});
    }
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.in_n != b.in_n) return a.in_n;
    if (a.basis.cols() != b.basis.cols()) return a.basis.cols() < b.basis.cols();
    return a.lead < b.lead;
  });
  std::vector<int> representatives;
  for (auto& piece : pieces) {
    Summand s;
    s.basis = std::move(piece.basis);
    s.in_n = piece.in_n;
    s.class_id = -1;
    for (std::size_t c = 0; c < representatives.size(); ++c) {
      const Summand& rep = out.summands[representatives[c]];
      if (rep.dim() == s.dim() && intertwiner_dimension(action, rep.basis, s.basis, tol) > 0) {
        s.class_id = static_cast<int>(c);
        break;
      }
    }
    if (s.class_id < 0) {
      s.class_id = static_cast<int>(representatives.size());
      representatives.push_back(static_cast<int>(out.summands.size()));
    }
    out.summands.push_back(std::move(s));
  }
  out.min_cluster_gap = gap;
  return out;
}

}  // namespace

ModuleDecomposition isotypic_decompose(const HomogeneousSpace& space, const ReductiveSplit& split, Rng& rng,
                                       const Tolerances& tol) {
  return assemble(space.isotropy_action(), split, rng, tol, "h");
}

ModuleDecomposition normalizer_decompose(const HomogeneousSpace& space, const Eigen::MatrixXd& normalizer_basis,
                                         const ReductiveSplit& split, Rng& rng, const Tolerances& tol) {
  std::vector<Eigen::MatrixXd> action = space.isotropy_action();
  for (Eigen::Index k = space.dim_h(); k < normalizer_basis.cols(); ++k) {
    action.push_back(space.action_on_m(normalizer_basis.col(k)));
  }
  return assemble(action, split, rng, tol, "normalizer");
}

}  // namespace gorbit
