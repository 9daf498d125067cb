#include "sqc/kernels.hpp"

namespace sqc::kernels {

namespace {

Backend detect() {
#if defined(SQC_BUILD_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::Avx2;
#endif
  return Backend::Scalar;
}

Backend g_backend = detect();

}  // namespace

Backend active_backend() { return g_backend; }

Backend force_backend(Backend b) {
#if defined(SQC_BUILD_AVX2)
  if (b == Backend::Avx2 && detect() != Backend::Avx2) b = Backend::Scalar;
#else
  b = Backend::Scalar;
#endif
  g_backend = b;
  return g_backend;
}

void hadamard(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n) {
#if defined(SQC_BUILD_AVX2)
  if (g_backend == Backend::Avx2) return avx2::hadamard(x, y, out, n);
#endif
  scalar::hadamard(x, y, out, n);
}

void abs2(const cdouble* x, double* out, std::size_t n) {
#if defined(SQC_BUILD_AVX2)
  if (g_backend == Backend::Avx2) return avx2::abs2(x, out, n);
#endif
  scalar::abs2(x, out, n);
}

void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
#if defined(SQC_BUILD_AVX2)
  if (g_backend == Backend::Avx2) return avx2::axpy(a, x, y, n);
#endif
  scalar::axpy(a, x, y, n);
}

cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n) {
#if defined(SQC_BUILD_AVX2)
  if (g_backend == Backend::Avx2) return avx2::dotc(x, y, n);
#endif
  return scalar::dotc(x, y, n);
}

void matmul(const cdouble* a, const cdouble* b, cdouble* c,
            std::size_t m, std::size_t k, std::size_t n) {
#if defined(SQC_BUILD_AVX2)
  if (g_backend == Backend::Avx2) return avx2::matmul(a, b, c, m, k, n);
#endif
  scalar::matmul(a, b, c, m, k, n);
}

}  // namespace sqc::kernels
