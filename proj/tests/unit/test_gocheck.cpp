#include <gtest/gtest.h>

#include "gorbit/error.hpp"
#include "gorbit/gocheck.hpp"
#include "gorbit/pipeline.hpp"
#include "support/catalog.hpp"
#include "support/oracles.hpp"

using namespace gorbit;

namespace {

Analysis analysis_of(const char* name) {
  for (const auto& e : catalog::spaces()) {
    if (std::string(e.name) == name) return analyze(e.spec);
  }
  throw std::logic_error(name);
}

CertifyConfig quick(int samples = 60) {
  CertifyConfig c;
  c.samples = samples;
  c.seed = 17;
  return c;
}

}  // namespace

TEST(GeodesicGraph, NormalMetricSolvesWithZero) {
  const auto a = analysis_of("SO6_SO2xSO3");
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(a.space.dim_m(), -1.0, 1.0);
  const auto sol = solve_geodesic_graph(a.space, normal_metric(a.space), x);
  EXPECT_LE(sol.residual, 1e-13);
  EXPECT_LE(a.space.g->norm(sol.a), 1e-13);
}

TEST(GeodesicGraph, ZeroVectorHasZeroRelativeResidual) {
  const auto a = analysis_of("U3_U2");
  const auto sol = solve_geodesic_graph(a.space, normal_metric(a.space), Eigen::VectorXd::Zero(a.space.dim_m()));
  EXPECT_EQ(sol.relative_residual, 0.0);
}

TEST(GeodesicGraph, RejectsVectorsWithHComponent) {
  const auto a = analysis_of("U3_U2");
  const auto h = a.space.h_basis();
  EXPECT_THROW(solve_geodesic_graph(a.space, normal_metric(a.space), h.front()), InvalidArgument);
}

TEST(GeodesicGraph, ResidualMatchesDenseMatrixOracle) {
  const auto a = analysis_of("SO5_SO2xSO2");
  const auto metric = instantiate(a.space, a.equivariant, {{"lambda_1", 2.0}, {"lambda_3", 0.5}});
  Rng rng(2);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd x(a.space.dim_m());
    for (auto& c : x) c = normal(rng);
    const auto sol = solve_geodesic_graph(a.space, metric, x);
    EXPECT_NEAR(sol.relative_residual, oracle::relative_residual(a.space, metric, x), 1e-10);
  }
}

TEST(Certify, NormalMetricIsProbablyGo) {
  const auto a = analysis_of("Sp3_Sp1xSp1");
  const auto v = certify_go(a.space, a.decomposition, normal_metric(a.space), quick());
  EXPECT_EQ(v.kind, VerdictKind::probably_go);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_EQ(v.random_samples, 60);
  EXPECT_GT(v.structured_samples, 0);
}

TEST(Certify, WitnessIsIndependentlyRecheckable) {
  const auto a = analysis_of("SO6_SO2xSO3");
  const auto metric = instantiate(a.space, a.equivariant, {{"lambda_2", 1.5}});
  const auto v = certify_go(a.space, a.decomposition, metric, quick());
  ASSERT_EQ(v.kind, VerdictKind::certified_not_go);
  ASSERT_TRUE(v.witness.has_value());
  const Eigen::VectorXd x_m = a.space.to_m(a.space.g->to_frame(v.witness->x));
  EXPECT_GT(oracle::relative_residual(a.space, metric, x_m), quick().thresholds.refute);
}

TEST(Certify, InconclusiveBetweenThresholds) {
  const auto a = analysis_of("SO5_SO2xSO2");
  const auto metric = instantiate(a.space, a.equivariant, {{"lambda_1", 1.0 + 1e-8}});
  auto config = quick();
  const auto v = certify_go(a.space, a.decomposition, metric, config);
  EXPECT_EQ(v.kind, VerdictKind::inconclusive);
  EXPECT_GT(v.max_residual, config.thresholds.accept);
  EXPECT_LE(v.max_residual, config.thresholds.refute);
}

TEST(Certify, SamplesAreReproducible) {
  const auto a = analysis_of("U4_U2xU2");
  const auto c = quick(30);
  const auto s1 = certification_samples(a.space, a.decomposition, c);
  const auto s2 = certification_samples(a.space, a.decomposition, c);
  ASSERT_EQ(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) EXPECT_EQ(s1[i], s2[i]);
}

TEST(Certify, ThreadCountDoesNotChangeVerdict) {
  const auto a = analysis_of("SU5_SUxU2xU2");
  const auto metric = instantiate(a.space, a.reduced, {{"mu", 2.0}});
  auto c1 = quick(40);
  c1.threads = 1;
  auto c4 = c1;
  c4.threads = 4;
  const auto v1 = certify_go(a.space, a.decomposition, metric, c1);
  const auto v4 = certify_go(a.space, a.decomposition, metric, c4);
  EXPECT_EQ(v1.kind, v4.kind);
  EXPECT_EQ(v1.max_residual, v4.max_residual);
}

TEST(Scan, DefaultGridSkipsHomothety) {
  const auto a = analysis_of("SU5_SUxU2xU2");
  const auto grid = default_grid(a.reduced);
  ASSERT_EQ(grid.names, std::vector<std::string>{"mu"});
  EXPECT_EQ(grid.values.front(), default_grid_values());
  EXPECT_THROW(default_grid(a.reduced, {{"nope", {1.0}}}), InvalidArgument);
}

TEST(Scan, U3FullFamilyPassesEverywhere) {
  const auto a = analysis_of("U3_U2");
  const auto report =
      scan_parameters(a.space, a.decomposition, a.reduced, default_grid(a.reduced), quick(40));
  EXPECT_EQ(report.passing_set.size(), report.points.size());
}

TEST(Scan, ExcludeNormalDropsTheNormalPoint) {
  const auto a = analysis_of("SO5_SO2xSO2");
  const auto with = scan_parameters(a.space, a.decomposition, a.constrained, default_grid(a.constrained, {}, false),
                                    quick(20));
  const auto without = scan_parameters(a.space, a.decomposition, a.constrained,
                                       default_grid(a.constrained, {}, true), quick(20));
  EXPECT_EQ(with.points.size(), without.points.size() + 1);
  EXPECT_TRUE(without.passing_set.empty());
}

TEST(Seeds, DeriveSeedSeparatesStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(5, 9), derive_seed(5, 9));
}

TEST(Seeds, ParallelForVisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}
