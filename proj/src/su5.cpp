#include "gorbit/su5.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gorbit/error.hpp"
#include "gorbit/linalg.hpp"

namespace gorbit {

namespace {

constexpr double kExact = 1e-12;
constexpr double kSpan = 1e-9;

AlgebraVector diag_element(const LieAlgebra& g, std::initializer_list<double> entries, double unit) {
  ComplexMatrix m = ComplexMatrix::Zero(g.matrix_size(), g.matrix_size());
  int k = 0;
  for (double e : entries) m(k, k) = std::complex<double>(0.0, unit * e), ++k;
  return g.from_matrix(m);
}

std::vector<AlgebraVector> labelled(const LieAlgebra& g, std::initializer_list<const char*> labels) {
  std::vector<AlgebraVector> out;
  for (const char* l : labels) out.push_back(g.element(l));
  return out;
}

Eigen::MatrixXd span_frame(const LieAlgebra& g, const std::vector<AlgebraVector>& vectors) {
  Eigen::MatrixXd cols(g.dim(), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = g.to_frame(vectors[k]);
  return linalg::orthonormalize(cols, 1e-9);
}

void require(std::vector<FactCheck>& facts, FactCheck fact) {
  facts.push_back(fact);
  if (!fact.verified) throw PipelineAssertion(fact.name, fact.detail + " (residual " + std::to_string(fact.residual) + ")");
}

}  // namespace

Su5Fixture make_su5_fixture(const Tolerances& tol) {
  Su5Fixture fx;
  fx.space = build_space(SpaceSpec{Family::su, 5, {2, 2}, true}, tol);
  const LieAlgebra& g = *fx.space.g;
  fx.v = diag_element(g, {0, 1, 1, -1, -1}, 1.0);
  fx.w = diag_element(g, {4, -1, -1, -1, -1}, 1.0);
  fx.h_listed = {diag_element(g, {0, 1, -1, 0, 0}, 0.5), g.element("e_23"), g.element("f_23"),
                 diag_element(g, {0, 0, 0, 1, -1}, 0.5), g.element("e_45"), g.element("f_45"), fx.v};
  fx.m01 = labelled(g, {"e_12", "f_12", "e_13", "f_13"});
  fx.m02 = labelled(g, {"e_14", "f_14", "e_15", "f_15"});
  fx.m12 = labelled(g, {"e_24", "f_24", "e_25", "f_25", "e_34", "f_34", "e_35", "f_35"});
  return fx;
}

TerminalFeasibility terminal_system_feasibility(const Su5Fixture& fx, double mu, int samples, std::uint64_t seed,
                                                const GoThresholds& thresholds, double svd_cutoff) {
  const LieAlgebra& g = *fx.space.g;
  const HomogeneousSpace& space = fx.space;
  const Eigen::Index d = g.dim();
  const double c = 5.0 * (1.0 - mu);
  TerminalFeasibility out;
  out.mu = mu;
  out.samples = samples;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    auto random_in = [&](const std::vector<AlgebraVector>& basis) {
      AlgebraVector x = g.zero();
      for (const auto& b : basis) x += (normal(rng) / g.norm(b)) * b;
      return x;
    };
    const AlgebraVector x01 = random_in(fx.m01);
    const AlgebraVector x02 = random_in(fx.m02);
    const AlgebraVector x12 = random_in(fx.m12);
    const Eigen::VectorXd f01 = g.to_frame(x01);
    const Eigen::VectorXd f02 = g.to_frame(x02);
    const Eigen::VectorXd f12 = g.to_frame(x12);

    Eigen::MatrixXd lhs(3 * d, space.dim_h());
    for (int k = 0; k < space.dim_h(); ++k) {
      const Eigen::MatrixXd ad = g.ad_frame(space.h.col(k));
      lhs.col(k) << ad * f01, ad * f02, ad * f12;
    }
    Eigen::VectorXd rhs(3 * d);
    rhs << -c * g.to_frame(bar_map(g, x01)), -c * g.to_frame(bar_map(g, x02)), Eigen::VectorXd::Zero(d);
    const Eigen::VectorXd alpha = linalg::least_squares(lhs, rhs, svd_cutoff);
    const double residual = (lhs * alpha - rhs).norm();

    // Same scale as certify_go: ‖X‖·‖ΛX‖ with X = w + X01 + X02 + X12.
    const AlgebraVector xp = x01 + x02 + x12;
    const double nx = g.norm(fx.w + xp);
    const double nlx = g.norm(mu * fx.w + xp);
    out.max_residual = std::max(out.max_residual, residual / (nx * nlx));
  }
  out.feasible = out.max_residual <= thresholds.accept;
  return out;
}

Su5Report su5_pipeline(const RunConfig& config, int terminal_samples) {
  validate(config);
  Su5Report r;
  r.config = config;
  r.fixture = make_su5_fixture(config.tol);
  const Su5Fixture& fx = r.fixture;
  const HomogeneousSpace& space = fx.space;
  const LieAlgebra& g = *space.g;
  auto& facts = r.facts;

  require(facts, {"dim g = 24", g.dim() == 24, 0.0, "dim su(5) = " + std::to_string(g.dim())});
  require(facts, {"dim h = 7", space.dim_h() == 7, 0.0, "got " + std::to_string(space.dim_h())});
  require(facts, {"dim m = 17", space.dim_m() == 17, 0.0, "got " + std::to_string(space.dim_m())});
  {
    double leak = 0.0;
    for (const auto& x : fx.h_listed) leak = std::max(leak, space.to_m(g.to_frame(x)).norm() / g.norm(x));
    const double dist = linalg::subspace_distance(space.h, span_frame(g, fx.h_listed));
    require(facts, {"h = span{f22-f33, e23, f23, f44-f55, e45, f45} + span{v}", leak <= kExact && dist <= kSpan,
                    std::max(leak, dist), "listed vectors and v must span h"});
  }

  r.normalizer_basis = normalizer(space, config.tol);
  {
    const Eigen::VectorXd wf = g.to_frame(fx.w).normalized();
    const Eigen::MatrixXd& nb = r.normalizer_basis;
    const double outside = (wf - nb * (nb.transpose() * wf)).norm();
    const double in_h = (space.h.transpose() * wf).norm();
    require(facts, {"normalizer = h + span{w}", nb.cols() == 8 && outside <= kSpan && in_h <= kExact,
                    std::max(outside, in_h), "normalizer dimension " + std::to_string(nb.cols())});
  }

  r.split = reductive_split(space, r.normalizer_basis, config.tol);
  {
    Eigen::MatrixXd wcol = g.to_frame(fx.w).normalized();
    const double dist = linalg::subspace_distance(r.split.n, wcol);
    require(facts, {"n = span{w}", r.split.dim_n() == 1 && dist <= kSpan, dist,
                    "dim n = " + std::to_string(r.split.dim_n())});
    require(facts, {"dim p = 16", r.split.dim_p() == 16, 0.0, "got " + std::to_string(r.split.dim_p())});
  }

  Rng rng(config.certify.seed);
  r.decomposition = isotypic_decompose(space, r.split, rng, config.tol);
  r.normalizer_decomposition = normalizer_decompose(space, r.normalizer_basis, r.split, rng, config.tol);
  {
    std::vector<int> dims = r.decomposition.dims();
    require(facts, {"summand dims {1, 4, 4, 8}", dims == std::vector<int>{1, 4, 4, 8}, 0.0, "dims differ"});
    for (std::size_t i = 0; i < r.decomposition.summands.size(); ++i) {
      if (r.decomposition.summands[i].in_n) r.summand_labels["n"] = static_cast<int>(i);
    }
    const std::pair<const char*, const std::vector<AlgebraVector>*> expected[] = {
        {"m_01", &fx.m01}, {"m_02", &fx.m02}, {"m_12", &fx.m12}};
    for (const auto& [label, vectors] : expected) {
      const Eigen::MatrixXd target = span_frame(g, *vectors);
      double best = 1.0;
      int best_index = -1;
      for (std::size_t i = 0; i < r.decomposition.summands.size(); ++i) {
        const Eigen::MatrixXd s = space.m * r.decomposition.summands[i].basis;
        const double dist = linalg::subspace_distance(s, target);
        if (dist < best) best = dist, best_index = static_cast<int>(i);
      }
      require(facts, {std::string(label) + " is a summand with the reference basis", best <= kSpan, best,
                      "no summand spans the reference vectors"});
      r.summand_labels[label] = best_index;
    }
    std::set<int> classes;
    for (const auto& s : r.decomposition.summands) classes.insert(s.class_id);
    require(facts, {"summands pairwise inequivalent", classes.size() == r.decomposition.summands.size(), 0.0,
                    std::to_string(classes.size()) + " classes"});
    require(facts, {"ad(h) and ad(normalizer) decompositions agree",
                    r.normalizer_decomposition.dims() == r.decomposition.dims(), 0.0, "dimension lists differ"});
    const AlgebraVector br = g.bracket(g.element("e_12"), g.element("e_14"));
    const double resid = g.norm(br + g.element("e_24"));
    require(facts, {"[e_12, e_14] = -e_24 (m_01, m_02 bracket meets m_12)", resid <= kExact, resid, ""});
  }

  // The nine bracket identities between v, w, h and the m_ij.
  {
    auto check = [&](const std::string& name, const std::vector<AlgebraVector>& xs, const AlgebraVector& z,
                     double coeff, bool use_bar) {
      double worst = 0.0;
      for (const auto& x : xs) {
        AlgebraVector expected = g.zero();
        if (coeff != 0.0) expected = coeff * (use_bar ? bar_map(g, x) : x);
        worst = std::max(worst, g.norm(g.bracket(z, x) - expected));
      }
      require(r.bracket_identities, {name, worst <= kExact, worst, "checked on " + std::to_string(xs.size()) + " vectors"});
    };
    check("[w,h] = 0", fx.h_listed, fx.w, 0.0, false);
    check("[v,h] = 0", fx.h_listed, fx.v, 0.0, false);
    check("[v,w] = 0", {fx.w}, fx.v, 0.0, false);
    check("[w,X01] = 5 bar(X01)", fx.m01, fx.w, 5.0, true);
    check("[w,X02] = 5 bar(X02)", fx.m02, fx.w, 5.0, true);
    check("[w,X12] = 0", fx.m12, fx.w, 0.0, false);
    check("[v,X01] = -bar(X01)", fx.m01, fx.v, -1.0, true);
    check("[v,X02] = bar(X02)", fx.m02, fx.v, 1.0, true);
    check("[v,X12] = 2 bar(X12)", fx.m12, fx.v, 2.0, true);
  }

  r.family_equivariant = metric_space(space, r.split, r.decomposition, config.tol);
  require(facts, {"metric_space has 4 scalar parameters",
                  r.family_equivariant.size() == 4 &&
                      std::all_of(r.family_equivariant.kinds.begin(), r.family_equivariant.kinds.end(),
                                  [](ParamKind k) { return k == ParamKind::scalar; }),
                  0.0, std::to_string(r.family_equivariant.size()) + " parameters"});
  r.family_normalizer = apply_normalizer_constraint(space, r.split, r.family_equivariant, config.tol);
  require(facts, {"normalizer constraint leaves Lambda|n = mu Id", r.family_normalizer.index_of("mu") >= 0 &&
                                                                      r.family_normalizer.size() == 4,
                  0.0, "expected a single parameter mu on n"});
  r.family_reduced = eigen_constraints(space, r.decomposition, r.family_normalizer, config.tol);
  require(facts, {"eigenvalue constraints reduce to (mu, lambda)",
                  r.family_reduced.size() == 2 && r.family_reduced.index_of("mu") >= 0 &&
                      r.family_reduced.index_of("lambda") >= 0,
                  0.0, std::to_string(r.family_reduced.size()) + " parameters"});
  {
    const double mu = 2.0;
    const auto metric = instantiate(space, r.family_reduced, {{"mu", mu}, {"lambda", 1.0}}, config.tol);
    const Eigen::MatrixXd expected = mu * linalg::projector(r.split.n_m) + linalg::projector(r.split.p_m);
    const double resid = (metric.matrix - expected).norm();
    require(facts, {"Lambda = diag(mu Id|n, Id|p) up to homothety", resid <= kExact * 10.0, resid, "mu = 2"});

    // [a + X, ΛX] with X = w + X01 + X02 + X12 equals the terminal-system expression.
    std::normal_distribution<double> normal(0.0, 1.0);
    Rng local(derive_seed(config.certify.seed, 0xF00D));
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      auto random_in = [&](const std::vector<AlgebraVector>& basis) {
        AlgebraVector x = g.zero();
        for (const auto& b : basis) x += normal(local) * b;
        return x;
      };
      const AlgebraVector x01 = random_in(fx.m01), x02 = random_in(fx.m02), x12 = random_in(fx.m12);
      const AlgebraVector a = random_in(fx.h_listed);
      const AlgebraVector x = fx.w + x01 + x02 + x12;
      const Eigen::VectorXd lx_m = metric(space.to_m(g.to_frame(x)));
      const AlgebraVector lx = g.from_frame(space.lift(lx_m));
      const AlgebraVector lhs = g.bracket(a + x, lx);
      const double c = 5.0 * (1.0 - mu);
      const AlgebraVector rhs = g.bracket(a, x01) + c * bar_map(g, x01) + g.bracket(a, x02) + c * bar_map(g, x02) +
                                g.bracket(a, x12);
      worst = std::max(worst, g.norm(lhs - rhs) / std::max(1.0, g.norm(lhs)));
    }
    require(facts, {"[a+X, Lambda X] reduces to the terminal system", worst <= 1e-11, worst, "mu = 2, 8 random (a, X)"});
  }

  // Remaining question: which mu admit a geodesic graph.
  std::map<std::string, std::vector<double>> overrides;
  const auto it = config.grid.find("mu");
  overrides["mu"] = it != config.grid.end() ? it->second : default_grid_values();
  const ScanGrid grid = default_grid(r.family_reduced, overrides, false);
  r.scan = scan_parameters(space, r.decomposition, r.family_reduced, grid, config.certify);
  for (const auto& p : r.scan.passing_set) r.passing_mu.push_back(p.at("mu"));
  for (double mu : overrides["mu"]) {
    r.terminal.push_back(terminal_system_feasibility(fx, mu, terminal_samples,
                                                     derive_seed(config.certify.seed, 0x7E57), config.certify.thresholds,
                                                     config.certify.svd_cutoff));
    if (r.terminal.back().feasible) r.terminal_feasible_mu.push_back(mu);
  }
  r.consistent = r.passing_mu == r.terminal_feasible_mu;
  return r;
}

}  // namespace gorbit
