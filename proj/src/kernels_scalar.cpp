#include "sqc/kernels.hpp"

namespace sqc::kernels::scalar {

void hadamard(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void abs2(const cdouble* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n) {
  cdouble acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void matmul(const cdouble* a, const cdouble* b, cdouble* c,
            std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cdouble{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const cdouble aip = a[i * k + p];
      if (aip == cdouble{0.0, 0.0}) continue;
      const cdouble* brow = b + p * n;
      cdouble* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

}  // namespace sqc::kernels::scalar
