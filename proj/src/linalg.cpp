#include "gorbit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace gorbit::linalg {

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_cutoff) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);

  // Tall systems are reduced to their triangular factor first; ker(A) = ker(R).
  Eigen::MatrixXd work;
  if (a.rows() > n) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    work = a;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(work, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_cutoff * smax && s(i) > 0.0) ++rank;
  }
  if (smax == 0.0) rank = 0;
  return svd.matrixV().rightCols(n - rank);
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, double tol) {
  Eigen::MatrixXd out(cols.rows(), 0);
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    Eigen::VectorXd v = cols.col(j);
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass) {
      if (out.cols() > 0) v -= out * (out.transpose() * v);
    }
    const double nrm = v.norm();
    if (nrm <= tol * scale) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v / nrm;
  }
  return out;
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& u, Eigen::Index ambient, double tol) {
  Eigen::MatrixXd out = Eigen::MatrixXd(ambient, 0);
  const Eigen::Index want = ambient - u.cols();
  Eigen::MatrixXd basis = u;
  for (Eigen::Index j = 0; j < ambient && out.cols() < want; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(ambient, j);
    for (int pass = 0; pass < 2; ++pass) {
      if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
    }
    const double nrm = v.norm();
    if (nrm <= std::max(tol, 1e-6)) continue;
    v /= nrm;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v;
  }
  return out;
}

Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& u) {
  const Eigen::Index ambient = u.rows();
  const Eigen::Index dim = u.cols();
  Eigen::MatrixXd out(ambient, 0);
  if (dim == 0) return out;
  // Threshold on the residual of each projected unit vector. The squared
  // residuals over all j sum to the remaining dimension, so some j always
  // clears 1/(2·ambient); the fixed threshold only keeps the order stable.
  for (double threshold : {1e-4, 0.0}) {
    out.resize(ambient, 0);
    for (Eigen::Index j = 0; j < ambient && out.cols() < dim; ++j) {
      Eigen::VectorXd v = u * u.row(j).transpose();
      for (int pass = 0; pass < 2; ++pass) {
        if (out.cols() > 0) v -= out * (out.transpose() * v);
      }
      const double nrm = v.norm();
      if (nrm <= std::max(threshold, 1e-10)) continue;
      out.conservativeResize(Eigen::NoChange, out.cols() + 1);
      out.col(out.cols() - 1) = v / nrm;
    }
    if (out.cols() == dim) return out;
  }
  return u;
}

Eigen::MatrixXd projector(const Eigen::MatrixXd& u) { return u * u.transpose(); }

double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  if (u.cols() != v.cols()) return 1.0;
  if (u.cols() == 0) return 0.0;
  // ‖(I − P_v) u‖₂ is the sine of the largest principal angle.
  const Eigen::MatrixXd r = u - v * (v.transpose() * u);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rel_cutoff) {
  if (a.cols() == 0) return Eigen::VectorXd(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(rel_cutoff);
  return svd.solve(b);
}

EchelonNullSpace echelon_null_space(const Eigen::MatrixXd& c, double tol) {
  Eigen::MatrixXd r = c;
  const Eigen::Index rows = r.rows();
  const Eigen::Index cols = r.cols();
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff() * (rows > 0 && cols > 0 ? 1.0 : 0.0));
  EchelonNullSpace out;
  Eigen::Index prow = 0;
  for (Eigen::Index j = 0; j < cols; ++j) {
    Eigen::Index best = -1;
    double best_val = tol * scale;
    for (Eigen::Index i = prow; i < rows; ++i) {
      if (std::abs(r(i, j)) > best_val) {
        best_val = std::abs(r(i, j));
        best = i;
      }
    }
    if (best < 0) {
      out.free.push_back(j);
      continue;
    }
    r.row(prow).swap(r.row(best));
    r.row(prow) /= r(prow, j);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i != prow && r(i, j) != 0.0) r.row(i) -= r(i, j) * r.row(prow);
    }
    out.pivot.push_back(j);
    ++prow;
  }
  out.basis = Eigen::MatrixXd::Zero(cols, static_cast<Eigen::Index>(out.free.size()));
  for (std::size_t k = 0; k < out.free.size(); ++k) {
    const Eigen::Index f = out.free[k];
    out.basis(f, static_cast<Eigen::Index>(k)) = 1.0;
    for (std::size_t p = 0; p < out.pivot.size(); ++p) {
      double v = -r(static_cast<Eigen::Index>(p), f);
      if (std::abs(v) <= tol) v = 0.0;
      out.basis(out.pivot[p], static_cast<Eigen::Index>(k)) = v;
    }
  }
  return out;
}

}  // namespace gorbit::linalg
