#include "sqc/sampling.hpp"

#include <cmath>
#include <numbers>

namespace sqc {

double gaussian(Rng& rng) {
  // Box-Muller; the pair's second member is discarded for simplicity.
  double u1 = rng.next_double();
  while (u1 <= 0.0) u1 = rng.next_double();
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

ComplexMatrix gaussian_matrix(std::size_t n, Rng& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = cdouble{gaussian(rng), gaussian(rng)};
  return m;
}

}  // namespace

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix g = gaussian_matrix(n, rng);
  // Modified Gram-Schmidt on the columns.
  std::vector<ComplexVector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexVector c = g.column(j);
    for (const auto& b : cols) {
      const cdouble overlap = b.dot(c);
      for (std::size_t i = 0; i < n; ++i) c[i] -= overlap * b[i];
    }
    const double r = c.norm();
    if (r < 1e-8) return random_unitary(n, rng);  // essentially never
    cols.push_back(c * cdouble{1.0 / r, 0.0});
  }
  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j) u.set_column(j, cols[j]);
  return u;
}

EvolutionOperator random_evolution_operator(std::size_t n, Rng& rng) {
  ComplexMatrix g = gaussian_matrix(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::norm(g(i, j));
    const double inv = 1.0 / std::sqrt(sum);
    for (std::size_t i = 0; i < n; ++i) g(i, j) *= inv;
  }
  return EvolutionOperator(std::move(g));
}

StochasticMatrix random_stochastic(std::size_t n, Rng& rng) {
  std::vector<std::vector<double>> entries(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) {
      double u = rng.next_double();
      while (u <= 0.0) u = rng.next_double();
      col[i] = -std::log(u);
      sum += col[i];
    }
    for (std::size_t i = 0; i < n; ++i) entries[i][j] = col[i] / sum;
  }
  return StochasticMatrix(std::move(entries));
}

ProbabilityVector random_probability(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    p[i] = -std::log(u);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return ProbabilityVector(std::move(p));
}

DensityMatrix random_density(std::size_t n, Rng& rng) {
  ComplexMatrix a = gaussian_matrix(n, rng);
  ComplexMatrix rho = a * a.adjoint();
  rho = rho * (cdouble{1.0, 0.0} / rho.trace());
  rho = (rho + rho.adjoint()) * cdouble{0.5, 0.0};
  return DensityMatrix(std::move(rho), 1e-10);
}

ComplexMatrix random_self_adjoint(std::size_t n, Rng& rng) {
  ComplexMatrix g = gaussian_matrix(n, rng);
  return (g + g.adjoint()) * cdouble{0.5, 0.0};
}

PhaseMatrix random_phases(std::size_t n, Rng& rng) {
  PhaseMatrix p;
  p.thetas.assign(n, std::vector<double>(n, 0.0));
  for (auto& row : p.thetas)
    for (double& v : row) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

}  // namespace sqc
