#pragma once

// Dense double-precision kernels behind the structure-constant contractions.
//
// Every routine has a portable scalar reference implementation and, where the
// target supports it, an AVX2+FMA (x86-64) or NEON (AArch64) variant. The
// variant is chosen once at startup from the CPU's reported features and can
// be overridden with set_backend() (tests use this to compare variants).

#include <cstddef>
#include <span>
#include <string_view>

namespace gorbit::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view to_string(Backend backend);

bool backend_supported(Backend backend);
Backend active_backend();
/// Throws InvalidArgument if the backend is not available on this machine.
void set_backend(Backend backend);
/// Re-runs CPU detection and selects the widest supported backend.
void reset_backend();

double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// out = sum_i coeffs[i] * blocks[i*len .. (i+1)*len), len = out.size().
/// Zero coefficients are skipped.
void combine(std::span<const double> coeffs, std::span<const double> blocks, std::span<double> out);

// Direct access to each variant, bypassing dispatch.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_norm(const double* a, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace scalar

#if defined(GORBIT_HAVE_AVX2) || defined(__x86_64__)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_norm(const double* a, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace avx2
#endif

#if defined(GORBIT_HAVE_NEON) || defined(__aarch64__)
namespace neon {
double dot(const double* a, const double* b, std::size_t n) noexcept;
double squared_norm(const double* a, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
}  // namespace neon
#endif

}  // namespace gorbit::kernels
