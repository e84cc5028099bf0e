#include "gorbit/liealg.hpp"

#include <atomic>
#include <cmath>

#include "gorbit/error.hpp"
#include "gorbit/kernels.hpp"

namespace gorbit {

namespace {

std::uint64_t next_algebra_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

const std::complex<double> kI{0.0, 1.0};

ComplexMatrix unit(int size, int a, int b) {
  ComplexMatrix m = ComplexMatrix::Zero(size, size);
  m(a, b) = 1.0;
  return m;
}

std::string pair_label(char prefix, int a, int b) {
  const std::string sep = (a >= 9 || b >= 9) ? "," : "";
  return std::string(1, prefix) + "_" + std::to_string(a + 1) + sep + std::to_string(b + 1);
}

void require_rank(int n) {
  if (n < 2) throw InvalidSpec("matrix algebras need n >= 2, got n = " + std::to_string(n));
}

void check_ids(const AlgebraVector& a, const AlgebraVector& b) {
  if (a.algebra_id != b.algebra_id || a.coeffs.size() != b.coeffs.size()) {
    throw InvalidArgument("algebra elements belong to different algebras");
  }
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::so:
      return "so";
    case Family::u:
      return "u";
    case Family::su:
      return "su";
    case Family::sp:
      return "sp";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  if (name == "so") return Family::so;
  if (name == "u") return Family::u;
  if (name == "su") return Family::su;
  if (name == "sp") return Family::sp;
  throw InvalidSpec("unknown family '" + std::string(name) + "'");
}

AlgebraVector& AlgebraVector::operator+=(const AlgebraVector& other) {
  check_ids(*this, other);
  coeffs += other.coeffs;
  return *this;
}

AlgebraVector& AlgebraVector::operator-=(const AlgebraVector& other) {
  check_ids(*this, other);
  coeffs -= other.coeffs;
  return *this;
}

AlgebraVector& AlgebraVector::operator*=(double s) {
  coeffs *= s;
  return *this;
}

AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
AlgebraVector operator-(AlgebraVector a) { return a *= -1.0; }
AlgebraVector operator*(double s, AlgebraVector a) { return a *= s; }

double q_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  return -(x.array() * y.transpose().array()).sum().real();
}

LieAlgebra::LieAlgebra(Family family, int n, std::vector<std::string> labels, std::vector<ComplexMatrix> basis,
                       Tolerances tol)
    : family_(family),
      n_(n),
      matrix_size_(basis.empty() ? 0 : static_cast<int>(basis.front().rows())),
      id_(next_algebra_id()),
      tol_(tol),
      labels_(std::move(labels)),
      basis_(std::move(basis)) {
  if (basis_.empty()) throw InvalidSpec("empty basis");
  if (labels_.size() != basis_.size()) throw InvalidSpec("basis/label count mismatch");
  const int d = dim();

  gram_.resize(d);
  for (int i = 0; i < d; ++i) {
    gram_(i) = q_inner(basis_[i], basis_[i]);
    if (!(gram_(i) > 0.0)) throw InvalidSpec("basis element " + labels_[i] + " has non-positive Q-norm");
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double q = q_inner(basis_[i], basis_[j]);
      if (std::abs(q) > tol_.abs * std::sqrt(gram_(i) * gram_(j)) * 10.0) {
        throw InvalidSpec("basis is not Q-orthogonal: Q(" + labels_[i] + ", " + labels_[j] + ") = " + std::to_string(q));
      }
    }
  }
  scale_ = gram_.cwiseSqrt();

  structure_.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  ad_frame_.assign(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const ComplexMatrix comm = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      ComplexMatrix rebuilt = ComplexMatrix::Zero(comm.rows(), comm.cols());
      for (int k = 0; k < d; ++k) {
        const double c = q_inner(comm, basis_[k]) / gram_(k);
        structure_[(static_cast<std::size_t>(i) * d + j) * d + k] = c;
        ad_frame_[(static_cast<std::size_t>(i) * d + k) * d + j] = c * scale_(k) / (scale_(i) * scale_(j));
        rebuilt += c * basis_[k];
      }
      const double resid = (rebuilt - comm).norm();
      if (resid > 1e-10 * std::max(1.0, comm.norm())) {
        throw InvalidSpec("basis is not closed under the bracket at [" + labels_[i] + ", " + labels_[j] + "]");
      }
    }
  }

  switch (family_) {
    case Family::so:
      if (n_ >= 3) killing_factor_ = static_cast<double>(n_ - 2);
      break;
    case Family::su:
      killing_factor_ = 2.0 * n_;
      break;
    case Family::sp:
      killing_factor_ = 2.0 * n_ + 2.0;
      break;
    case Family::u:
      break;
  }
}

double LieAlgebra::structure(int i, int j, int k) const {
  const int d = dim();
  if (i < 0 || j < 0 || k < 0 || i >= d || j >= d || k >= d) throw InvalidArgument("structure index out of range");
  return structure_[(static_cast<std::size_t>(i) * d + j) * d + k];
}

int LieAlgebra::index_of(std::string_view label) const {
  for (int i = 0; i < dim(); ++i) {
    if (labels_[i] == label) return i;
  }
  return -1;
}

AlgebraVector LieAlgebra::zero() const { return AlgebraVector{id_, Eigen::VectorXd::Zero(dim())}; }

AlgebraVector LieAlgebra::element(int i) const {
  if (i < 0 || i >= dim()) throw InvalidArgument("basis index out of range");
  AlgebraVector v = zero();
  v.coeffs(i) = 1.0;
  return v;
}

AlgebraVector LieAlgebra::element(std::string_view label) const {
  const int i = index_of(label);
  if (i < 0) throw InvalidArgument("unknown basis label '" + std::string(label) + "'");
  return element(i);
}

AlgebraVector LieAlgebra::from_coeffs(Eigen::VectorXd coeffs) const {
  if (coeffs.size() != dim()) throw InvalidArgument("coefficient vector has wrong length");
  return AlgebraVector{id_, std::move(coeffs)};
}

void LieAlgebra::require_same(const AlgebraVector& x) const {
  if (x.algebra_id != id_ || x.coeffs.size() != dim()) {
    throw InvalidArgument("element does not belong to this algebra");
  }
}

ComplexMatrix LieAlgebra::to_matrix(const AlgebraVector& x) const {
  require_same(x);
  ComplexMatrix m = ComplexMatrix::Zero(matrix_size_, matrix_size_);
  for (int i = 0; i < dim(); ++i) {
    if (x.coeffs(i) != 0.0) m += x.coeffs(i) * basis_[i];
  }
  return m;
}

AlgebraVector LieAlgebra::from_matrix(const ComplexMatrix& m) const {
  if (m.rows() != matrix_size_ || m.cols() != matrix_size_) throw InvalidArgument("matrix has wrong size");
  AlgebraVector v = zero();
  for (int i = 0; i < dim(); ++i) v.coeffs(i) = q_inner(m, basis_[i]) / gram_(i);
  const double resid = (to_matrix(v) - m).norm();
  if (resid > std::max(tol_.abs, tol_.rel * m.norm()) * 100.0) {
    throw InvalidArgument("matrix is not an element of " + std::string(to_string(family_)) + "(" +
                          std::to_string(n_) + "), residual " + std::to_string(resid));
  }
  return v;
}

bool LieAlgebra::contains(const ComplexMatrix& m) const {
  try {
    from_matrix(m);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

Eigen::VectorXd LieAlgebra::to_frame(const AlgebraVector& x) const {
  require_same(x);
  return x.coeffs.cwiseProduct(scale_);
}

AlgebraVector LieAlgebra::from_frame(const Eigen::VectorXd& frame) const {
  if (frame.size() != dim()) throw InvalidArgument("frame vector has wrong length");
  return AlgebraVector{id_, frame.cwiseQuotient(scale_)};
}

std::span<const double> LieAlgebra::ad_frame_block(int i) const {
  const std::size_t len = static_cast<std::size_t>(dim()) * dim();
  return {ad_frame_.data() + static_cast<std::size_t>(i) * len, len};
}

Eigen::MatrixXd LieAlgebra::ad_frame(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw InvalidArgument("frame vector has wrong length");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor out(dim(), dim());
  kernels::combine({x.data(), static_cast<std::size_t>(x.size())}, ad_frame_,
                   {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

Eigen::VectorXd LieAlgebra::bracket_frame(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return ad_frame(x) * y;
}

AlgebraVector LieAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  require_same(x);
  require_same(y);
  const int d = dim();
  AlgebraVector out = zero();
  // out_k = sum_ij x_i y_j c_ijk: contract one row of structure constants at a time.
  std::vector<double> row(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) {
    if (x.coeffs(i) == 0.0) continue;
    const double* block = structure_.data() + static_cast<std::size_t>(i) * d * d;
    for (int j = 0; j < d; ++j) {
      if (y.coeffs(j) == 0.0) continue;
      kernels::axpy(x.coeffs(i) * y.coeffs(j), {block + static_cast<std::size_t>(j) * d, static_cast<std::size_t>(d)},
                    {out.coeffs.data(), static_cast<std::size_t>(d)});
    }
  }
  return out;
}

AlgebraVector LieAlgebra::bracket_via_matrices(const AlgebraVector& x, const AlgebraVector& y) const {
  const ComplexMatrix mx = to_matrix(x);
  const ComplexMatrix my = to_matrix(y);
  return from_matrix(mx * my - my * mx);
}

double LieAlgebra::inner(const AlgebraVector& x, const AlgebraVector& y) const {
  require_same(x);
  require_same(y);
  const Eigen::VectorXd wx = x.coeffs.cwiseProduct(gram_);
  return kernels::dot({wx.data(), static_cast<std::size_t>(wx.size())},
                      {y.coeffs.data(), static_cast<std::size_t>(y.coeffs.size())});
}

double LieAlgebra::norm(const AlgebraVector& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

namespace {

// e_ab and f_ab for a < b, in lexicographic order: all e first, then all f.
void add_offdiagonal(int size, int n, bool with_f, std::vector<std::string>& labels, std::vector<ComplexMatrix>& basis) {
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      labels.push_back(pair_label('e', a, b));
      basis.push_back(unit(size, a, b) - unit(size, b, a));
    }
  }
  if (!with_f) return;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      labels.push_back(pair_label('f', a, b));
      basis.push_back(kI * (unit(size, a, b) + unit(size, b, a)));
    }
  }
}

ComplexMatrix f_diag(int size, int a) { return 0.5 * kI * unit(size, a, a); }

}  // namespace

LieAlgebra so_basis(int n, Tolerances tol) {
  require_rank(n);
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> basis;
  add_offdiagonal(n, n, false, labels, basis);
  return LieAlgebra(Family::so, n, std::move(labels), std::move(basis), tol);
}

LieAlgebra u_basis(int n, Tolerances tol) {
  require_rank(n);
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> basis;
  add_offdiagonal(n, n, true, labels, basis);
  for (int a = 0; a < n; ++a) {
    labels.push_back(pair_label('f', a, a));
    basis.push_back(f_diag(n, a));
  }
  return LieAlgebra(Family::u, n, std::move(labels), std::move(basis), tol);
}

LieAlgebra su_basis(int n, Tolerances tol) {
  require_rank(n);
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> basis;
  add_offdiagonal(n, n, true, labels, basis);
  // f_ll - f_{l+1,l+1} are not mutually Q-orthogonal (consecutive ones have
  // Q = -1/4), so each is orthogonalized against its predecessors.
  std::vector<ComplexMatrix> diag;
  for (int l = 0; l + 1 < n; ++l) {
    ComplexMatrix d = f_diag(n, l) - f_diag(n, l + 1);
    for (const auto& prev : diag) d -= (q_inner(d, prev) / q_inner(prev, prev)) * prev;
    diag.push_back(d);
    labels.push_back("d_" + std::to_string(l + 1));
    basis.push_back(d);
  }
  return LieAlgebra(Family::su, n, std::move(labels), std::move(basis), tol);
}

LieAlgebra sp_basis(int n, Tolerances tol) {
  require_rank(n);
  const int size = 2 * n;
  std::vector<std::string> labels;
  std::vector<ComplexMatrix> basis;
  auto embed_a = [&](const ComplexMatrix& a) {
    ComplexMatrix z = ComplexMatrix::Zero(size, size);
    z.topLeftCorner(n, n) = a;
    z.bottomRightCorner(n, n) = a.conjugate();
    return z;
  };
  auto embed_b = [&](const ComplexMatrix& b) {
    ComplexMatrix z = ComplexMatrix::Zero(size, size);
    z.topRightCorner(n, n) = b;
    z.bottomLeftCorner(n, n) = -b.conjugate();
    return z;
  };
  std::vector<std::string> ulabels;
  std::vector<ComplexMatrix> ubasis;
  add_offdiagonal(n, n, true, ulabels, ubasis);
  for (int a = 0; a < n; ++a) {
    ulabels.push_back(pair_label('f', a, a));
    ubasis.push_back(f_diag(n, a));
  }
  for (std::size_t k = 0; k < ubasis.size(); ++k) {
    labels.push_back(ulabels[k]);
    basis.push_back(embed_a(ubasis[k]));
  }
  for (const char prefix : {'s', 't'}) {
    const std::complex<double> phase = prefix == 's' ? std::complex<double>(1.0) : kI;
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        ComplexMatrix s = unit(n, a, b);
        if (a != b) s += unit(n, b, a);
        labels.push_back(pair_label(prefix, a, b));
        basis.push_back(embed_b(phase * s));
      }
    }
  }
  return LieAlgebra(Family::sp, n, std::move(labels), std::move(basis), tol);
}

LieAlgebra make_algebra(Family family, int n, Tolerances tol) {
  switch (family) {
    case Family::so:
      return so_basis(n, tol);
    case Family::u:
      return u_basis(n, tol);
    case Family::su:
      return su_basis(n, tol);
    case Family::sp:
      return sp_basis(n, tol);
  }
  throw InvalidSpec("unknown family");
}

AlgebraVector bar_map(const LieAlgebra& g, const AlgebraVector& x) {
  if (g.family() != Family::u && g.family() != Family::su) {
    throw InvalidArgument("bar map needs the e/f basis of u(n) or su(n)");
  }
  const ComplexMatrix m = g.to_matrix(x);
  const double scale = std::max(1.0, m.norm());
  if (m.diagonal().norm() > g.tolerances().abs * 100.0 * scale) {
    throw InvalidArgument("bar map is undefined on elements with a diagonal part");
  }
  // Multiplication by i above the diagonal and by -i below it.
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) {
      if (a < b) out(a, b) = kI * m(a, b);
      if (a > b) out(a, b) = -kI * m(a, b);
    }
  }
  return g.from_matrix(out);
}

}  // namespace gorbit
