#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "gorbit/error.hpp"
#include "gorbit/kernels.hpp"
#include "gorbit/liealg.hpp"

namespace k = gorbit::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

class BackendGuard {
 public:
  ~BackendGuard() { k::reset_backend(); }
};

}  // namespace

TEST(Kernels, ScalarBackendIsAlwaysAvailable) {
  EXPECT_TRUE(k::backend_supported(k::Backend::scalar));
  BackendGuard guard;
  k::set_backend(k::Backend::scalar);
  EXPECT_EQ(k::active_backend(), k::Backend::scalar);
}

TEST(Kernels, UnsupportedBackendIsRejected) {
  for (auto b : {k::Backend::avx2, k::Backend::neon}) {
    if (!k::backend_supported(b)) {
      EXPECT_THROW(k::set_backend(b), gorbit::InvalidArgument);
    }
  }
}

TEST(Kernels, VariantsAgreeWithScalarReference) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 33u, 66u, 67u, 4356u}) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const double ref_dot = k::scalar::dot(a.data(), b.data(), n);
    const double ref_sq = k::scalar::squared_norm(a.data(), n);
    std::vector<double> ref_y = b;
    k::scalar::axpy(0.37, a.data(), ref_y.data(), n);
    const double tol = 1e-13 * (1.0 + static_cast<double>(n));
#if defined(GORBIT_HAVE_AVX2) || defined(__x86_64__)
    if (k::backend_supported(k::Backend::avx2)) {
      EXPECT_NEAR(k::avx2::dot(a.data(), b.data(), n), ref_dot, tol) << n;
      EXPECT_NEAR(k::avx2::squared_norm(a.data(), n), ref_sq, tol) << n;
      std::vector<double> y = b;
      k::avx2::axpy(0.37, a.data(), y.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y[i], ref_y[i], 1e-15) << n;
    }
#endif
#if defined(GORBIT_HAVE_NEON) || defined(__aarch64__)
    if (k::backend_supported(k::Backend::neon)) {
      EXPECT_NEAR(k::neon::dot(a.data(), b.data(), n), ref_dot, tol) << n;
      EXPECT_NEAR(k::neon::squared_norm(a.data(), n), ref_sq, tol) << n;
    }
#endif
  }
}

TEST(Kernels, CombineMatchesExplicitSum) {
  std::mt19937_64 rng(3);
  const std::size_t len = 45, blocks = 9;
  const auto data = random_vector(len * blocks, rng);
  auto coeffs = random_vector(blocks, rng);
  coeffs[2] = 0.0;
  std::vector<double> expected(len, 0.0);
  for (std::size_t i = 0; i < blocks; ++i) {
    for (std::size_t j = 0; j < len; ++j) expected[j] += coeffs[i] * data[i * len + j];
  }
  std::vector<double> out(len, 99.0);
  k::combine(coeffs, data, out);
  for (std::size_t j = 0; j < len; ++j) EXPECT_NEAR(out[j], expected[j], 1e-14);
}

TEST(Kernels, BracketIdenticalAcrossBackends) {
  const auto g = gorbit::su_basis(5);
  std::mt19937_64 rng(11);
  const auto x = g.from_coeffs(Eigen::Map<const Eigen::VectorXd>(random_vector(24, rng).data(), 24));
  const auto y = g.from_coeffs(Eigen::Map<const Eigen::VectorXd>(random_vector(24, rng).data(), 24));
  BackendGuard guard;
  k::set_backend(k::Backend::scalar);
  const auto ref = g.bracket(x, y);
  for (auto b : {k::Backend::avx2, k::Backend::neon}) {
    if (!k::backend_supported(b)) continue;
    k::set_backend(b);
    EXPECT_LE((g.bracket(x, y).coeffs - ref.coeffs).norm(), 1e-13) << k::to_string(b);
  }
}
