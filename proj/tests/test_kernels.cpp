#include <doctest.h>

#include <vector>

#include "sqc/kernels.hpp"
#include "sqc/rng.hpp"

using namespace sqc;
using kernels::Backend;
using kernels::cdouble;

namespace {

std::vector<cdouble> random_cvec(std::size_t n, Rng& rng) {
  std::vector<cdouble> v(n);
  for (auto& z : v) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return v;
}

struct BackendGuard {
  Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::force_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels compute the expected values") {
  BackendGuard guard;
  kernels::force_backend(Backend::Scalar);

  std::vector<cdouble> x{{1, 2}, {3, -1}};
  std::vector<cdouble> y{{0, 1}, {2, 2}};
  std::vector<cdouble> out(2);
  kernels::hadamard(x.data(), y.data(), out.data(), 2);
  CHECK(out[0] == cdouble{-2, 1});   // (1+2i)(i)
  CHECK(out[1] == cdouble{8, 4});    // (3-i)(2+2i)

  std::vector<double> sq(2);
  kernels::abs2(x.data(), sq.data(), 2);
  CHECK(sq[0] == doctest::Approx(5.0));
  CHECK(sq[1] == doctest::Approx(10.0));

  cdouble d = kernels::dotc(x.data(), y.data(), 2);
  // conj(1+2i)*i + conj(3-i)*(2+2i) = (2+i) + (4+8i)
  CHECK(d.real() == doctest::Approx(6.0));
  CHECK(d.imag() == doctest::Approx(9.0));
}

TEST_CASE("scalar matmul matches a hand-computed 2x2 product") {
  BackendGuard guard;
  kernels::force_backend(Backend::Scalar);
  std::vector<cdouble> a{{1, 0}, {0, 1}, {2, 0}, {0, 0}};  // [[1,i],[2,0]]
  std::vector<cdouble> b{{0, 0}, {1, 0}, {1, 0}, {0, 0}};  // [[0,1],[1,0]]
  std::vector<cdouble> c(4);
  kernels::matmul(a.data(), b.data(), c.data(), 2, 2, 2);
  CHECK(c[0] == cdouble{0, 1});
  CHECK(c[1] == cdouble{1, 0});
  CHECK(c[2] == cdouble{0, 0});
  CHECK(c[3] == cdouble{2, 0});
}

TEST_CASE("vector backends agree with the scalar reference") {
  if (kernels::force_backend(Backend::Avx2) != Backend::Avx2) {
    kernels::force_backend(Backend::Scalar);
    return;  // host lacks the extension; dispatch already fell back
  }
  BackendGuard guard;
  Rng rng(20240817);

  // Odd and even lengths to exercise the scalar tails.
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u}) {
    auto x = random_cvec(n, rng);
    auto y = random_cvec(n, rng);
    const cdouble alpha{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

    std::vector<cdouble> had_s(n), had_v(n);
    std::vector<double> sq_s(n), sq_v(n);
    std::vector<cdouble> axpy_s = y, axpy_v = y;

    kernels::force_backend(Backend::Scalar);
    kernels::hadamard(x.data(), y.data(), had_s.data(), n);
    kernels::abs2(x.data(), sq_s.data(), n);
    kernels::axpy(alpha, x.data(), axpy_s.data(), n);
    const cdouble dot_s = kernels::dotc(x.data(), y.data(), n);

    kernels::force_backend(Backend::Avx2);
    kernels::hadamard(x.data(), y.data(), had_v.data(), n);
    kernels::abs2(x.data(), sq_v.data(), n);
    kernels::axpy(alpha, x.data(), axpy_v.data(), n);
    const cdouble dot_v = kernels::dotc(x.data(), y.data(), n);

    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(had_s[i] - had_v[i]) < 1e-14);
      CHECK(std::abs(sq_s[i] - sq_v[i]) < 1e-14);
      CHECK(std::abs(axpy_s[i] - axpy_v[i]) < 1e-14);
    }
    CHECK(std::abs(dot_s - dot_v) < 1e-13 * static_cast<double>(n));
  }

  for (std::size_t m : {1u, 3u, 5u}) {
    const std::size_t k = m + 1, n = 2 * m + 1;
    auto a = random_cvec(m * k, rng);
    auto b = random_cvec(k * n, rng);
    std::vector<cdouble> c_s(m * n), c_v(m * n);
    kernels::force_backend(Backend::Scalar);
    kernels::matmul(a.data(), b.data(), c_s.data(), m, k, n);
    kernels::force_backend(Backend::Avx2);
    kernels::matmul(a.data(), b.data(), c_v.data(), m, k, n);
    for (std::size_t i = 0; i < m * n; ++i)
      CHECK(std::abs(c_s[i] - c_v[i]) < 1e-13);
  }
}
