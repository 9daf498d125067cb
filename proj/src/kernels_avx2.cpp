#include "sqc/kernels.hpp"

#include <immintrin.h>

namespace sqc::kernels::avx2 {

namespace {

// Two interleaved complex doubles per __m256d: [re0 im0 re1 im1].
inline __m256d cmul(__m256d x, __m256d y) {
  __m256d yr = _mm256_movedup_pd(y);       // [c0 c0 c1 c1]
  __m256d yi = _mm256_permute_pd(y, 0xF);  // [d0 d0 d1 d1]
  __m256d xs = _mm256_permute_pd(x, 0x5);  // [im0 re0 im1 re1]
  return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

inline __m256d conj_pd(__m256d x) {
  const __m256d mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  return _mm256_xor_pd(x, mask);
}

}  // namespace

void hadamard(const cdouble* x, const cdouble* y, cdouble* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(out + i), cmul(vx, vy));
  }
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void abs2(const cdouble* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d sq = _mm256_mul_pd(vx, vx);
    __m256d s = _mm256_hadd_pd(sq, sq);  // [r0 r0 r1 r1]
    out[i] = _mm_cvtsd_f64(_mm256_castpd256_pd128(s));
    out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(s, 1));
  }
  for (; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

void axpy(cdouble a, const cdouble* x, cdouble* y, std::size_t n) {
  __m256d va = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&a));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i),
                     _mm256_add_pd(vy, cmul(va, vx)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

cdouble dotc(const cdouble* x, const cdouble* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    acc = _mm256_add_pd(acc, cmul(conj_pd(vx), vy));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cdouble result{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  for (; i < n; ++i) result += std::conj(x[i]) * y[i];
  return result;
}

void matmul(const cdouble* a, const cdouble* b, cdouble* c,
            std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cdouble{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    cdouble* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cdouble aip = a[i * k + p];
      if (aip == cdouble{0.0, 0.0}) continue;
      __m256d va = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(&aip));
      const cdouble* brow = b + p * n;
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        __m256d vb = _mm256_loadu_pd(reinterpret_cast<const double*>(brow + j));
        __m256d vc = _mm256_loadu_pd(reinterpret_cast<const double*>(crow + j));
        _mm256_storeu_pd(reinterpret_cast<double*>(crow + j),
                         _mm256_add_pd(vc, cmul(va, vb)));
      }
      for (; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

}  // namespace sqc::kernels::avx2
