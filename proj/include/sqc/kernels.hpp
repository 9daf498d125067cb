#pragma once

// Dense complex arithmetic kernels shared by the linear-algebra layer.
// Every kernel exists as a scalar reference implementation and, on x86-64
// hardware with AVX2, a vectorized variant; the dispatcher picks one at
// startup and tests assert entrywise equivalence between the two.

#include <complex>
#include <cstddef>

namespace sqc::kernels {

using cdouble = std::complex<double>;

enum class Backend { Scalar, Avx2 };

Backend active_backend();
// Overrides runtime CPU detection (equivalence tests only). Requesting an
// unavailable backend falls back to Scalar and returns the backend in use.
Backend force_backend(Backend b);

// out[i] = x[i] * y[i]
void hadamard(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n);
// out[i] = |x[i]|^2
void abs2(const cdouble* x, double* out, std::size_t n);
// y[i] += a * x[i]
void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
// sum_i conj(x[i]) * y[i]
cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n);
// c (m x n, row-major) = a (m x k) * b (k x n); c must not alias a or b
void matmul(const cdouble* a, const cdouble* b, cdouble* c,
            std::size_t m, std::size_t k, std::size_t n);

namespace scalar {
void hadamard(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n);
void abs2(const cdouble* x, double* out, std::size_t n);
void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n);
void matmul(const cdouble* a, const cdouble* b, cdouble* c,
            std::size_t m, std::size_t k, std::size_t n);
}  // namespace scalar

#if defined(SQC_BUILD_AVX2)
namespace avx2 {
void hadamard(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n);
void abs2(const cdouble* x, double* out, std::size_t n);
void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n);
cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n);
void matmul(const cdouble* a, const cdouble* b, cdouble* c,
            std::size_t m, std::size_t k, std::size_t n);
}  // namespace avx2
#endif

}  // namespace sqc::kernels
