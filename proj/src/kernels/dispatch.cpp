#include <algorithm>
#include <atomic>

#include "gorbit/error.hpp"
#include "gorbit/kernels.hpp"

namespace gorbit::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  double (*squared_norm)(const double*, std::size_t) noexcept;
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
};

constexpr Table kScalar{&scalar::dot, &scalar::squared_norm, &scalar::axpy};
#if defined(GORBIT_HAVE_AVX2)
constexpr Table kAvx2{&avx2::dot, &avx2::squared_norm, &avx2::axpy};
#endif
#if defined(GORBIT_HAVE_NEON)
constexpr Table kNeon{&neon::dot, &neon::squared_norm, &neon::axpy};
#endif

const Table* table_for(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return &kScalar;
    case Backend::avx2:
#if defined(GORBIT_HAVE_AVX2)
      return &kAvx2;
#else
      return nullptr;
#endif
    case Backend::neon:
#if defined(GORBIT_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect() {
#if defined(GORBIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
#endif
#if defined(GORBIT_HAVE_NEON)
  return Backend::neon;  // mandatory on AArch64
#endif
  return Backend::scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

const Table& current() { return *table_for(active().load(std::memory_order_relaxed)); }

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidArgument("kernel operand sizes differ");
}

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  if (table_for(backend) == nullptr) return false;
  if (backend == Backend::avx2) return detect() == Backend::avx2;
  return true;
}

Backend active_backend() { return active().load(); }

void set_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw InvalidArgument("kernel backend '" + std::string(to_string(backend)) + "' is not supported here");
  }
  active().store(backend);
}

void reset_backend() { active().store(detect()); }

double dot(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size());
  return current().dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const double> a) { return current().squared_norm(a.data(), a.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  current().axpy(alpha, x.data(), y.data(), x.size());
}

void combine(std::span<const double> coeffs, std::span<const double> blocks, std::span<double> out) {
  const std::size_t len = out.size();
  if (blocks.size() != coeffs.size() * len) throw InvalidArgument("combine: block storage size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  const Table& t = current();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    t.axpy(coeffs[i], blocks.data() + i * len, out.data(), len);
  }
}

}  // namespace gorbit::kernels
