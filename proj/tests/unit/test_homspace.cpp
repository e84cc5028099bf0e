#include <gtest/gtest.h>

#include "gorbit/error.hpp"
#include "gorbit/homspace.hpp"
#include "gorbit/linalg.hpp"
#include "support/catalog.hpp"
#include "support/oracles.hpp"

using namespace gorbit;

TEST(SpaceSpec, Names) {
  EXPECT_EQ((SpaceSpec{Family::su, 5, {2, 2}, true}.name()), "SU(5)/S(U(2)xU(2))");
  EXPECT_EQ((SpaceSpec{Family::so, 6, {2, 3}, false}.name()), "SO(6)/SO(2)xSO(3)");
  EXPECT_EQ((SpaceSpec{Family::sp, 2, {1}, false}.text()), "family=sp n=2 blocks=1 det_one=false");
}

TEST(SpaceSpec, ValidationRejectsBadSpecs) {
  EXPECT_THROW(validate(SpaceSpec{Family::so, 1, {1}, false}), InvalidSpec);
  EXPECT_THROW(validate(SpaceSpec{Family::so, 5, {}, false}), InvalidSpec);
  EXPECT_THROW(validate(SpaceSpec{Family::so, 5, {0, 2}, false}), InvalidSpec);
  EXPECT_THROW(validate(SpaceSpec{Family::sp, 2, {3}, false}), InvalidSpec);
  EXPECT_NO_THROW(validate(SpaceSpec{Family::u, 4, {2, 2}, false}));
}

struct Dims {
  const char* name;
  int g, h, m, n;
  std::vector<int> summands;
};

class CatalogDims : public ::testing::TestWithParam<Dims> {};

TEST_P(CatalogDims, MatchHandCount) {
  const Dims& d = GetParam();
  const catalog::Entry* entry = nullptr;
  for (const auto& e : catalog::spaces()) {
    if (std::string(e.name) == d.name) entry = &e;
  }
  ASSERT_NE(entry, nullptr);
  const auto space = build_space(entry->spec);
  EXPECT_EQ(space.dim_g(), d.g);
  EXPECT_EQ(space.dim_h(), d.h);
  EXPECT_EQ(space.dim_m(), d.m);
  const auto nb = normalizer(space);
  const auto split = reductive_split(space, nb);
  EXPECT_EQ(split.dim_n(), d.n);
  Rng rng(5);
  const auto dec = isotypic_decompose(space, split, rng);
  EXPECT_EQ(dec.dims(), d.summands);
}

// Hand counts. SO(5)/SO(2)xSO(2): R^2⊗R^2 splits in two under SO(2)xSO(2).
// U(4)/U(2)xU(2): C^2⊗C^2 stays irreducible. Sp(n)/Sp(1)^k: each free
// quaternionic line gives three trivial lines in n and H ⊗ H-blocks in p.
INSTANTIATE_TEST_SUITE_P(Catalog, CatalogDims,
                         ::testing::Values(Dims{"SO5_SO2xSO2", 10, 2, 8, 0, {2, 2, 2, 2}},
                                           Dims{"SO6_SO2xSO3", 15, 4, 11, 0, {2, 3, 6}},
                                           Dims{"U3_U2", 9, 4, 5, 1, {1, 4}},
                                           Dims{"U4_U2xU2", 16, 8, 8, 0, {8}},
                                           Dims{"Sp2_Sp1", 10, 3, 7, 3, {1, 1, 1, 4}},
                                           Dims{"Sp3_Sp1xSp1", 21, 6, 15, 3, {1, 1, 1, 4, 4, 4}},
                                           Dims{"SU5_SUxU2xU2", 24, 7, 17, 1, {1, 4, 4, 8}}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(HomogeneousSpace, ReductiveSplitIsInvariant) {
  for (const auto& entry : catalog::spaces()) {
    const auto space = build_space(entry.spec);
    EXPECT_LE((space.h.transpose() * space.m).norm(), 1e-12) << entry.name;
    for (const auto& a : space.isotropy_action()) EXPECT_LE((a + a.transpose()).norm(), 1e-12) << entry.name;
    // [h, h] ⊆ h and [h, m] ⊆ m
    const auto& g = *space.g;
    for (int i = 0; i < space.dim_h(); ++i) {
      const Eigen::MatrixXd ad = g.ad_frame(space.h.col(i));
      EXPECT_LE((space.m.transpose() * ad * space.h).norm(), 1e-12) << entry.name;
      EXPECT_LE((space.h.transpose() * ad * space.m).norm(), 1e-12) << entry.name;
    }
  }
}

TEST(HomogeneousSpace, SummandsAreIrreducibleAndClassesMatchIntertwiners) {
  for (const auto& entry : catalog::spaces()) {
    const auto space = build_space(entry.spec);
    const auto split = reductive_split(space, normalizer(space));
    Rng rng(9);
    const auto dec = isotypic_decompose(space, split, rng);
    const auto action = space.isotropy_action();
    Eigen::MatrixXd all(space.dim_m(), 0);
    for (std::size_t i = 0; i < dec.summands.size(); ++i) {
      const auto& s = dec.summands[i];
      // Real-type irreducibles have a one-dimensional commutant; complex or
      // quaternionic types have 2 or 4, still with no invariant subspace.
      const int c = oracle::commutant_dimension(action, s.basis);
      EXPECT_TRUE(c == 1 || c == 2 || c == 4) << entry.name << " summand " << i << " commutant " << c;
      for (std::size_t j = 0; j < dec.summands.size(); ++j) {
        const int hom = intertwiner_dimension(action, s.basis, dec.summands[j].basis);
        EXPECT_EQ(hom > 0, s.class_id == dec.summands[j].class_id) << entry.name;
      }
      Eigen::MatrixXd tmp(space.dim_m(), all.cols() + s.dim());
      tmp << all, s.basis;
      all = tmp;
    }
    EXPECT_EQ(oracle::rank(all), space.dim_m()) << entry.name;
  }
}

TEST(HomogeneousSpace, NormalizerContainsH) {
  const auto space = build_space(SpaceSpec{Family::u, 3, {2}, false});
  const auto nb = normalizer(space);
  EXPECT_EQ(nb.cols(), 5);
  EXPECT_LE((nb.leftCols(space.dim_h()) - space.h).norm(), 1e-14);
}

TEST(Linalg, EchelonNullSpaceKeepsRequestedFreeColumns) {
  Eigen::MatrixXd c(1, 3);
  c << 1.0, -1.0, 0.0;
  const auto ns = linalg::echelon_null_space(c);
  EXPECT_EQ(ns.basis.cols(), 2);
  EXPECT_LE((c * ns.basis).norm(), 1e-14);
}
