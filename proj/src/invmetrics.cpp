#include "gorbit/invmetrics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gorbit/error.hpp"
#include "gorbit/linalg.hpp"

namespace gorbit {

MetricEndomorphism make_metric(const HomogeneousSpace& space, Eigen::MatrixXd matrix, const Tolerances& tol) {
  const Eigen::Index dm = space.dim_m();
  if (matrix.rows() != dm || matrix.cols() != dm) throw DomainError("metric endomorphism has the wrong size");
  const double scale = std::max(1.0, matrix.norm());
  if ((matrix - matrix.transpose()).norm() > tol.rel * scale) throw DomainError("metric endomorphism is not Q-symmetric");
  matrix = 0.5 * (matrix + matrix.transpose());
  if (dm > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() <= tol.positivity) {
      throw DomainError("metric endomorphism is not positive definite (smallest eigenvalue " +
                        std::to_string(eig.eigenvalues().minCoeff()) + ")");
    }
  }
  for (const auto& a : space.isotropy_action()) {
    const double comm = (matrix * a - a * matrix).norm();
    if (comm > tol.rel * scale * std::max(1.0, a.norm())) {
      throw DomainError("metric endomorphism is not ad(h)-equivariant (commutator " + std::to_string(comm) + ")");
    }
  }
  return MetricEndomorphism{std::move(matrix)};
}

int MetricFamily::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

Eigen::MatrixXd MetricFamily::operator()(const Eigen::VectorXd& params) const {
  if (params.size() != size()) throw InvalidArgument("parameter vector has the wrong length");
  if (generators.empty()) return {};
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(generators.front().rows(), generators.front().cols());
  for (int k = 0; k < size(); ++k) out += params(k) * generators[k];
  return out;
}

std::string MetricFamily::positivity_domain() const {
  std::ostringstream os;
  os << "all scalar parameters > 0";
  if (std::find(kinds.begin(), kinds.end(), ParamKind::intertwiner) != kinds.end()) {
    os << "; intertwiner parameters restricted so that the operator stays positive definite";
  }
  return os.str();
}

namespace {

std::string format_coeff(double c) {
  std::ostringstream os;
  os.precision(12);
  os << c;
  return os.str();
}

bool has_p_support(const Eigen::MatrixXd& g, const Eigen::MatrixXd& p_m) {
  if (p_m.cols() == 0) return false;
  return (p_m.transpose() * g * p_m).norm() > 1e-9;
}

bool has_n_support(const Eigen::MatrixXd& g, const Eigen::MatrixXd& p_m) {
  const Eigen::MatrixXd rest = g - p_m * (p_m.transpose() * g * p_m) * p_m.transpose();
  return rest.norm() > 1e-9;
}

void set_homothety(MetricFamily& f) {
  f.homothety_index = -1;
  for (int k = 0; k < f.size(); ++k) {
    if (f.kinds[k] == ParamKind::scalar && has_p_support(f.generators[k], f.p_m)) {
      f.homothety_index = k;
      return;
    }
  }
  for (int k = 0; k < f.size(); ++k) {
    if (f.kinds[k] == ParamKind::scalar) {
      f.homothety_index = k;
      return;
    }
  }
}

// Renames a lone parameter on n to "mu" and a lone scalar parameter on p to "lambda".
void canonical_names(MetricFamily& f) {
  std::vector<int> on_n;
  std::vector<int> on_p;
  for (int k = 0; k < f.size(); ++k) {
    if (f.kinds[k] != ParamKind::scalar) continue;
    const bool p = has_p_support(f.generators[k], f.p_m);
    const bool n = has_n_support(f.generators[k], f.p_m);
    if (n && !p) on_n.push_back(k);
    if (p && !n) on_p.push_back(k);
  }
  auto rename = [&](int k, const std::string& to) {
    const std::string from = f.names[k];
    if (from == to || f.index_of(to) >= 0) return;
    f.names[k] = to;
    for (auto& merge : f.merges) {
      if (merge.equals == from) merge.equals = to;
    }
  };
  if (on_n.size() == 1) rename(on_n.front(), "mu");
  if (on_p.size() == 1) rename(on_p.front(), "lambda");
}

// Restricts the family to the parameter vectors annihilated by `constraints`
// (rows × params). Earlier parameters are kept free in preference to later ones.
MetricFamily reduce(const MetricFamily& in, const Eigen::MatrixXd& constraints, const std::string& provenance,
                    const std::string& reason) {
  const int k = in.size();
  if (constraints.rows() == 0 || k == 0) return in;
  Eigen::MatrixXd reversed = constraints.rowwise().reverse();
  const auto ns = linalg::echelon_null_space(reversed, 1e-9);
  auto orig = [&](Eigen::Index rev) { return static_cast<int>(k - 1 - rev); };

  // Map back to original column order, with free columns ascending.
  std::vector<std::pair<int, Eigen::VectorXd>> kept;
  for (std::size_t c = 0; c < ns.free.size(); ++c) {
    Eigen::VectorXd coeffs = ns.basis.col(static_cast<Eigen::Index>(c)).reverse();
    kept.emplace_back(orig(ns.free[c]), coeffs);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  MetricFamily out;
  out.p_m = in.p_m;
  out.merges = in.merges;
  for (const auto& [free_index, coeffs] : kept) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(in.generators.front().rows(), in.generators.front().cols());
    bool scalar = true;
    for (int j = 0; j < k; ++j) {
      if (coeffs(j) == 0.0) continue;
      g += coeffs(j) * in.generators[j];
      if (in.kinds[j] != ParamKind::scalar) scalar = false;
    }
    out.generators.push_back(std::move(g));
    out.names.push_back(in.names[free_index]);
    out.kinds.push_back(scalar ? ParamKind::scalar : ParamKind::intertwiner);
  }

  // Report eliminated parameters: grouped when equal to a surviving one.
  std::map<std::string, std::vector<std::string>> equal_to;
  std::vector<std::string> zeroed;
  for (Eigen::Index rev : ns.pivot) {
    const int j = orig(rev);
    std::vector<std::pair<std::string, double>> terms;
    for (std::size_t c = 0; c < kept.size(); ++c) {
      const double v = kept[c].second(j);
      if (std::abs(v) > 1e-9) terms.emplace_back(in.names[kept[c].first], v);
    }
    if (terms.empty()) {
      zeroed.push_back(in.names[j]);
    } else if (terms.size() == 1 && std::abs(terms[0].second - 1.0) <= 1e-9) {
      equal_to[terms[0].first].push_back(in.names[j]);
    } else {
      std::ostringstream expr;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        expr << (t ? " + " : "") << format_coeff(terms[t].second) << "*" << terms[t].first;
      }
      out.merges.push_back({{in.names[j]}, expr.str(), provenance, reason});
    }
  }
  for (auto& [survivor, params] : equal_to) {
    std::vector<std::string> group{survivor};
    group.insert(group.end(), params.begin(), params.end());
    out.merges.push_back({group, survivor, provenance, reason});
  }
  if (!zeroed.empty()) out.merges.push_back({zeroed, "0", provenance, reason});
  set_homothety(out);
  return out;
}

}  // namespace

MetricFamily metric_space(const HomogeneousSpace& space, const ReductiveSplit& split,
                          const ModuleDecomposition& decomposition, const Tolerances& tol) {
  MetricFamily family;
  family.p_m = split.p_m;
  const auto& summands = decomposition.summands;
  const int n_count = static_cast<int>(std::count_if(summands.begin(), summands.end(), [](const Summand& s) { return s.in_n; }));
  int n_seen = 0;
  int p_seen = 0;
  for (const auto& s : summands) {
    family.generators.push_back(s.basis * s.basis.transpose());
    family.kinds.push_back(ParamKind::scalar);
    if (s.in_n) {
      ++n_seen;
      family.names.push_back(n_count == 1 ? std::string("mu") : "mu_" + std::to_string(n_seen));
    } else {
      ++p_seen;
      family.names.push_back("lambda_" + std::to_string(p_seen));
    }
  }
  const auto action = space.isotropy_action();
  for (std::size_t i = 0; i < summands.size(); ++i) {
    for (std::size_t j = i + 1; j < summands.size(); ++j) {
      if (summands[i].class_id != summands[j].class_id) continue;
      const auto maps = intertwiners(action, summands[i].basis, summands[j].basis, tol);
      for (std::size_t r = 0; r < maps.size(); ++r) {
        const Eigen::MatrixXd cross = summands[j].basis * maps[r] * summands[i].basis.transpose();
        family.generators.push_back(cross + cross.transpose());
        family.kinds.push_back(ParamKind::intertwiner);
        family.names.push_back("x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "_" + std::to_string(r + 1));
      }
    }
  }
  set_homothety(family);
  return family;
}

MetricFamily apply_normalizer_constraint(const HomogeneousSpace& space, const ReductiveSplit& split,
                                         const MetricFamily& family, const Tolerances& tol) {
  (void)tol;
  if (split.dim_n() == 0 || family.size() == 0) return family;
  const Eigen::Index dn = split.dim_n();
  const Eigen::Index dp = split.dim_p();
  std::vector<Eigen::MatrixXd> n_action;
  for (Eigen::Index k = 0; k < dn; ++k) {
    n_action.push_back(split.n_m.transpose() * space.action_on_m(split.n.col(k)) * split.n_m);
  }
  const Eigen::Index rows = dn * dp + static_cast<Eigen::Index>(n_action.size()) * dn * dn;
  Eigen::MatrixXd constraints(rows, family.size());
  for (int k = 0; k < family.size(); ++k) {
    const Eigen::MatrixXd& g = family.generators[k];
    Eigen::VectorXd col(rows);
    if (dp > 0) col.head(dn * dp) = (split.n_m.transpose() * g * split.p_m).reshaped();
    const Eigen::MatrixXd nn = split.n_m.transpose() * g * split.n_m;
    for (std::size_t a = 0; a < n_action.size(); ++a) {
      col.segment(dn * dp + static_cast<Eigen::Index>(a) * dn * dn, dn * dn) =
          (nn * n_action[a] - n_action[a] * nn).reshaped();
    }
    constraints.col(k) = col;
  }
  MetricFamily out = reduce(family, constraints, "normalizer", "block-diagonal on n + p with ad(n)-invariant n-block");
  canonical_names(out);
  return out;
}

MetricFamily eigen_constraints(const HomogeneousSpace& space, const ModuleDecomposition& decomposition,
                               const MetricFamily& family, const Tolerances& tol) {
  (void)tol;
  const auto& summands = decomposition.summands;
  const int count = static_cast<int>(summands.size());
  const int k = family.size();

  // Scalar functional of each summand, when every generator acts on it by a scalar.
  std::vector<std::optional<Eigen::VectorXd>> scalar_of(count);
  for (int i = 0; i < count; ++i) {
    const Eigen::MatrixXd& b = summands[i].basis;
    Eigen::VectorXd values(k);
    bool scalar = true;
    for (int j = 0; j < k && scalar; ++j) {
      const Eigen::MatrixXd& g = family.generators[j];
      const Eigen::MatrixXd image = g * b;
      const Eigen::MatrixXd block = b.transpose() * image;
      const double c = block.trace() / static_cast<double>(b.cols());
      const double off = (block - c * Eigen::MatrixXd::Identity(b.cols(), b.cols())).norm();
      const double leak = (image - b * block).norm();
      if (off > 1e-9 || leak > 1e-9) scalar = false;
      values(j) = c;
    }
    if (scalar) scalar_of[i] = values;
  }

  const LieAlgebra& g = *space.g;
  std::vector<Eigen::MatrixXd> frames(count);
  for (int i = 0; i < count; ++i) frames[i] = space.m * summands[i].basis;

  // Brackets of all basis pairs between summands i and j, as columns.
  auto brackets = [&](int i, int j) {
    Eigen::MatrixXd out(g.dim(), frames[i].cols() * frames[j].cols());
    Eigen::Index col = 0;
    for (Eigen::Index a = 0; a < frames[i].cols(); ++a) {
      const Eigen::MatrixXd ad = g.ad_frame(frames[i].col(a));
      for (Eigen::Index b = 0; b < frames[j].cols(); ++b) out.col(col++) = ad * frames[j].col(b);
    }
    return out;
  };
  constexpr double kFire = 1e-8;

  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::vector<std::string> reasons;
  for (int i = 0; i < count; ++i) {
    if (!scalar_of[i]) continue;
    for (int j = i + 1; j < count; ++j) {
      if (!scalar_of[j]) continue;
      const Eigen::MatrixXd br = brackets(i, j);
      const Eigen::MatrixXd outside =
          br - frames[i] * (frames[i].transpose() * br) - frames[j] * (frames[j].transpose() * br);
      if (outside.norm() > kFire) {
        unite(i, j);
        reasons.push_back("[m" + std::to_string(i + 1) + ", m" + std::to_string(j + 1) + "] leaves m" +
                          std::to_string(i + 1) + " + m" + std::to_string(j + 1));
      }
      for (int l = 0; l < count; ++l) {
        if (l == i || l == j || !scalar_of[l]) continue;
        if ((frames[l].transpose() * br).norm() > kFire) {
          unite(i, j);
          unite(i, l);
          reasons.push_back("[m" + std::to_string(i + 1) + ", m" + std::to_string(j + 1) + "] meets m" +
                            std::to_string(l + 1));
        }
      }
    }
  }

  std::vector<Eigen::VectorXd> rows;
  for (int i = 0; i < count; ++i) {
    if (!scalar_of[i]) continue;
    const int root = find(i);
    if (root != i) rows.push_back(*scalar_of[i] - *scalar_of[root]);
  }
  Eigen::MatrixXd constraints(static_cast<Eigen::Index>(rows.size()), k);
  for (std::size_t r = 0; r < rows.size(); ++r) constraints.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();

  std::string reason;
  for (std::size_t r = 0; r < reasons.size(); ++r) reason += (r ? "; " : "") + reasons[r];
  MetricFamily out = reduce(family, constraints, "eigen", reason);
  canonical_names(out);
  return out;
}

MetricEndomorphism normal_metric(const HomogeneousSpace& space) {
  return MetricEndomorphism{Eigen::MatrixXd::Identity(space.dim_m(), space.dim_m())};
}

MetricEndomorphism instantiate(const HomogeneousSpace& space, const MetricFamily& family,
                               const std::map<std::string, double>& params, const Tolerances& tol) {
  Eigen::VectorXd theta(family.size());
  for (int k = 0; k < family.size(); ++k) theta(k) = family.kinds[k] == ParamKind::scalar ? 1.0 : 0.0;
  for (const auto& [name, value] : params) {
    const int k = family.index_of(name);
    if (k < 0) throw InvalidArgument("unknown metric parameter '" + name + "'");
    if (family.kinds[k] == ParamKind::scalar && !(value > 0.0)) {
      throw InvalidArgument("metric parameter '" + name + "' must be positive");
    }
    theta(k) = value;
  }
  return make_metric(space, family(theta), tol);
}

}  // namespace gorbit
