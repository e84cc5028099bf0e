#include "gorbit/gocheck.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "gorbit/error.hpp"
#include "gorbit/linalg.hpp"

namespace gorbit {

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::certified_not_go:
      return "CertifiedNotGO";
    case VerdictKind::probably_go:
      return "ProbablyGO";
    case VerdictKind::inconclusive:
      return "Inconclusive";
  }
  return "?";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

GeodesicGraphSolution solve_geodesic_graph(const HomogeneousSpace& space, const MetricEndomorphism& metric,
                                           const Eigen::VectorXd& x_m, double svd_cutoff) {
  if (x_m.size() != space.dim_m()) throw InvalidArgument("x must be given in m coordinates");
  const LieAlgebra& g = *space.g;
  const Eigen::VectorXd x = space.lift(x_m);
  const Eigen::VectorXd y = space.lift(metric(x_m));
  const Eigen::MatrixXd ad_y = g.ad_frame(y);

  // [a + x, y] = -ad(y)(a + x); minimize over a = H·alpha.
  const Eigen::VectorXd ad_y_x = ad_y * x;
  const Eigen::MatrixXd lhs = ad_y * space.h;
  const Eigen::VectorXd alpha = linalg::least_squares(lhs, -ad_y_x, svd_cutoff);
  const Eigen::VectorXd a = space.h * alpha;
  const Eigen::VectorXd r = lhs * alpha + ad_y_x;

  GeodesicGraphSolution out;
  out.x = g.from_frame(x);
  out.a = g.from_frame(a);
  out.residual = r.norm();
  const double scale = x.norm() * y.norm();
  out.relative_residual = scale > 0.0 ? out.residual / scale : 0.0;
  out.h_component = (space.h.transpose() * ad_y_x).norm();
  if (out.h_component > 1e-8 * std::max(scale, 1e-300) && scale > 0.0) {
    throw NumericalFailure("h-component of [x, Λx] does not vanish (" + std::to_string(out.h_component) +
                           "); Λ is not ad(h)-equivariant");
  }
  return out;
}

GeodesicGraphSolution solve_geodesic_graph(const HomogeneousSpace& space, const MetricEndomorphism& metric,
                                           const AlgebraVector& x, double svd_cutoff) {
  const Eigen::VectorXd frame = space.g->to_frame(x);
  const double nrm = frame.norm();
  if ((space.h.transpose() * frame).norm() > 1e-10 * std::max(1.0, nrm)) {
    throw InvalidArgument("x is not in m (non-zero h-component)");
  }
  return solve_geodesic_graph(space, metric, space.to_m(frame), svd_cutoff);
}

namespace {

Eigen::VectorXd gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Eigen::VectorXd unit_gaussian(Eigen::Index n, Rng& rng) {
  Eigen::VectorXd v = gaussian(n, rng);
  while (v.norm() == 0.0) v = gaussian(n, rng);
  return v / v.norm();
}

void subsets(int count, int size, int start, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == size) {
    out.push_back(current);
    return;
  }
  for (int i = start; i < count; ++i) {
    current.push_back(i);
    subsets(count, size, i + 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Eigen::VectorXd> certification_samples(const HomogeneousSpace& space,
                                                   const ModuleDecomposition& decomposition,
                                                   const CertifyConfig& config, int* random_count) {
  std::vector<Eigen::VectorXd> out;
  const Eigen::Index dm = space.dim_m();
  std::uint64_t index = 0;
  for (int i = 0; i < config.samples; ++i) {
    Rng rng(derive_seed(config.seed, index++));
    out.push_back(unit_gaussian(dm, rng));
  }
  if (random_count) *random_count = static_cast<int>(out.size());
  if (!config.structured || decomposition.summands.empty()) return out;

  const auto& summands = decomposition.summands;
  const int count = static_cast<int>(summands.size());
  // One random unit vector per summand, summed, over all summand subsets of
  // size 1..3 and the full set.
  std::vector<std::vector<int>> groups;
  for (int size = 1; size <= std::min(3, count); ++size) {
    std::vector<int> current;
    subsets(count, size, 0, current, groups);
  }
  if (count > 3) {
    std::vector<int> all(count);
    for (int i = 0; i < count; ++i) all[i] = i;
    groups.push_back(all);
  }
  for (const auto& group : groups) {
    Rng rng(derive_seed(config.seed, index++));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dm);
    for (int s : group) x += summands[s].basis * unit_gaussian(summands[s].dim(), rng);
    out.push_back(x);
  }

  // Sums of one canonical basis vector per summand, when there are few enough.
  double combos = 1.0;
  for (const auto& s : summands) combos *= s.dim();
  if (combos <= config.max_basis_combinations) {
    std::vector<int> pick(count, 0);
    while (true) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(dm);
      for (int s = 0; s < count; ++s) x += summands[s].basis.col(pick[s]);
      out.push_back(x);
      int s = 0;
      while (s < count && ++pick[s] == summands[s].dim()) pick[s++] = 0;
      if (s == count) break;
    }
  }
  return out;
}

GoVerdict certify_go(const HomogeneousSpace& space, const ModuleDecomposition& decomposition,
                     const MetricEndomorphism& metric, const CertifyConfig& config) {
  if (config.samples < 1) throw InvalidArgument("samples must be at least 1");
  int random_count = 0;
  const auto samples = certification_samples(space, decomposition, config, &random_count);
  std::vector<GeodesicGraphSolution> solutions(samples.size());
  parallel_for(samples.size(), config.threads,
               [&](std::size_t i) { solutions[i] = solve_geodesic_graph(space, metric, samples[i], config.svd_cutoff); });

  GoVerdict verdict;
  verdict.samples = static_cast<int>(samples.size());
  verdict.random_samples = random_count;
  verdict.structured_samples = verdict.samples - random_count;
  verdict.seed = config.seed;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (solutions[i].relative_residual > solutions[worst].relative_residual) worst = i;
  }
  verdict.max_residual = solutions.empty() ? 0.0 : solutions[worst].relative_residual;
  if (verdict.max_residual > config.thresholds.refute) {
    verdict.kind = VerdictKind::certified_not_go;
    verdict.witness = solutions[worst];
  } else if (verdict.max_residual <= config.thresholds.accept) {
    verdict.kind = VerdictKind::probably_go;
  } else {
    verdict.kind = VerdictKind::inconclusive;
    verdict.witness = solutions[worst];
  }
  return verdict;
}

ScanGrid default_grid(const MetricFamily& family, const std::map<std::string, std::vector<double>>& overrides,
                      bool exclude_normal) {
  for (const auto& [name, values] : overrides) {
    if (family.index_of(name) < 0) throw InvalidArgument("grid names unknown parameter '" + name + "'");
    if (values.empty()) throw InvalidArgument("grid for '" + name + "' is empty");
  }
  ScanGrid grid;
  grid.exclude_normal = exclude_normal;
  for (int k = 0; k < family.size(); ++k) {
    const auto it = overrides.find(family.names[k]);
    if (it != overrides.end()) {
      grid.names.push_back(family.names[k]);
      grid.values.push_back(it->second);
      continue;
    }
    if (family.kinds[k] != ParamKind::scalar || k == family.homothety_index) continue;
    grid.names.push_back(family.names[k]);
    grid.values.push_back(default_grid_values());
  }
  return grid;
}

ScanReport scan_parameters(const HomogeneousSpace& space, const ModuleDecomposition& decomposition,
                           const MetricFamily& family, const ScanGrid& grid, const CertifyConfig& config) {
  if (grid.names.size() != grid.values.size()) throw InvalidArgument("grid names and values differ in length");
  ScanReport report;
  report.space = space.spec.name();
  report.parameter_names = family.names;

  std::map<std::string, double> base;
  for (int k = 0; k < family.size(); ++k) base[family.names[k]] = family.kinds[k] == ParamKind::scalar ? 1.0 : 0.0;

  std::vector<std::size_t> pick(grid.names.size(), 0);
  bool done = std::any_of(grid.values.begin(), grid.values.end(), [](const auto& v) { return v.empty(); });
  while (!done) {
    ScanPoint point;
    point.params = base;
    for (std::size_t d = 0; d < grid.names.size(); ++d) point.params[grid.names[d]] = grid.values[d][pick[d]];
    point.normal = true;
    for (int k = 0; k < family.size(); ++k) {
      const double expected = family.kinds[k] == ParamKind::scalar ? 1.0 : 0.0;
      if (point.params[family.names[k]] != expected) point.normal = false;
    }
    if (!(grid.exclude_normal && point.normal)) {
      try {
        const auto metric = instantiate(space, family, point.params);
        point.verdict = certify_go(space, decomposition, metric, config);
      } catch (const InvalidArgument& e) {
        point.valid = false;
        point.error = e.what();
      } catch (const DomainError& e) {
        point.valid = false;
        point.error = e.what();
      }
      if (point.valid && point.verdict.kind == VerdictKind::probably_go) report.passing_set.push_back(point.params);
      report.points.push_back(std::move(point));
    }
    std::size_t d = 0;
    while (d < pick.size() && ++pick[d] == grid.values[d].size()) pick[d++] = 0;
    if (d == pick.size()) done = true;
  }
  return report;
}

}  // namespace gorbit
