#include "sqc/composite.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace sqc {

namespace {

using EMatrix =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// U^s for unitary U and s in [0, 1], via the eigendecomposition with
// principal-branch phases. Used to draw a continuous unitary path from the
// identity to U so composite families stay evaluable at every time.
ComplexMatrix unitary_fractional_power(const ComplexMatrix& u, double s) {
  if (!is_unitary(u))
    throw PreconditionError("fractional power: input not unitary");
  const std::size_t n = u.rows();
  EMatrix e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = u(i, j);
  Eigen::ComplexEigenSolver<EMatrix> solver(e);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fractional power: eigensolver failed");
  Eigen::VectorXcd lam = solver.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k)
    lam(k) = std::exp(cdouble(0.0, s * std::arg(lam(k))));
  EMatrix out = solver.eigenvectors() * lam.asDiagonal() *
                solver.eigenvectors().inverse();
  ComplexMatrix res(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) res(i, j) = out(i, j);
  return res;
}

StochasticMatrix moduli(const ComplexMatrix& m) {
  return StochasticMatrix::from_real_parts(
      schur_hadamard(m.conjugate(), m), tol::kProb * m.rows());
}

}  // namespace

CorrelationMap::CorrelationMap(std::size_t subject_dim,
                               std::size_t environment_dim,
                               std::vector<std::size_t> e_of)
    : n_(subject_dim), m_(environment_dim), e_of_(std::move(e_of)) {
  if (m_ < n_)
    throw PreconditionError("CorrelationMap: environment smaller than subject");
  if (e_of_.size() != n_)
    throw DimensionError("CorrelationMap: wrong map length");
  std::vector<bool> seen(m_, false);
  for (std::size_t e : e_of_) {
    if (e >= m_)
      throw PreconditionError("CorrelationMap: target out of range");
    if (seen[e]) throw PreconditionError("CorrelationMap: not injective");
    seen[e] = true;
  }
}

std::size_t CompositeSystem::total_dim() const {
  std::size_t d = 1;
  for (const auto& f : factors) d *= f.dim;
  return d;
}

ComplexMatrix environment_shift(std::size_t m, std::size_t target) {
  ComplexMatrix r(m, m);
  for (std::size_t e = 0; e < m; ++e) r((e + target) % m, e) = 1.0;
  return r;
}

CompositeSystem build_division_scenario(const ComplexMatrix& u_s_pre,
                                        const CorrelationMap& corr,
                                        const UnitaryFamily& u_s_post,
                                        const UnitaryFamily& u_e_post) {
  const std::size_t n = corr.subject_dim();
  const std::size_t m = corr.environment_dim();
  if (u_s_pre.rows() != n || !is_unitary(u_s_pre))
    throw PreconditionError("build_division_scenario: bad subject unitary");
  if (u_s_post.dim() != n || u_e_post.dim() != m)
    throw DimensionError("build_division_scenario: post family dimensions");

  // Conditional environment shift realizing the correlation at t'.
  ComplexMatrix conditional = ComplexMatrix::zero(n * m, n * m);
  const PVM subject_pvm = PVM::configuration(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix term =
        tensor(subject_pvm.projectors[i], environment_shift(m, corr(i)));
    conditional = conditional + term;
  }

  const double t_event = 1.0;
  auto eval = [=](double t) -> ComplexMatrix {
    const ComplexMatrix eye_e = ComplexMatrix::identity(m);
    if (t <= 0.0) return ComplexMatrix::identity(n * m);
    if (t < t_event / 2.0) {
      // Ramp the subject preparation from the identity.
      return tensor(unitary_fractional_power(u_s_pre, 2.0 * t / t_event),
                    eye_e);
    }
    const ComplexMatrix prepared = tensor(u_s_pre, eye_e);
    if (t < t_event) {
      const double s = 2.0 * (t - t_event / 2.0) / t_event;
      return unitary_fractional_power(conditional, s) * prepared;
    }
    const ComplexMatrix at_event = conditional * prepared;
    if (t == t_event) return at_event;
    return tensor(u_s_post.evaluate(t - t_event),
                  u_e_post.evaluate(t - t_event)) *
           at_event;
  };

  CompositeSystem sys{{{"subject", n}, {"environment", m}},
                      UnitaryFamily::custom(n * m, eval), t_event};
  return sys;
}

StochasticMatrix subject_marginal_dynamics(const CompositeSystem& sys,
                                           const ComplexMatrix& u_s_pre,
                                           const UnitaryFamily& u_s_post,
                                           double t) {
  if (sys.factors.size() != 2)
    throw DimensionError("subject_marginal_dynamics: need two factors");
  const double tp = sys.event_time;
  if (t <= tp)
    throw PreconditionError("subject_marginal_dynamics: t must exceed t'");
  const std::size_t n = sys.factors[0].dim;
  const std::size_t m = sys.factors[1].dim;

  StochasticMatrix product =
      moduli(u_s_post.evaluate(t - tp)) * moduli(u_s_pre);

  // Brute force: evolve each subject basis state (with environment at
  // configuration 0) through the full composite and marginalize.
  const ComplexMatrix full = sys.family.evaluate(t);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double p = 0.0;
      for (std::size_t e = 0; e < m; ++e)
        p += std::norm(full(i * m + e, j * m + 0));
      if (std::abs(p - product(i, j)) > 1e-10)
        throw std::logic_error(
            "subject marginal routes disagree at (" + std::to_string(i + 1) +
            "," + std::to_string(j + 1) + ")");
    }
  }
  return product;
}

std::vector<StochasticMatrix> markov_chain_emergence(
    const ComplexMatrix& u_s_step, std::size_t n_steps) {
  if (n_steps == 0) throw PreconditionError("markov_chain_emergence: 0 steps");
  if (!is_unitary(u_s_step))
    throw PreconditionError("markov_chain_emergence: step not unitary");
  const StochasticMatrix one_step = moduli(u_s_step);
  std::vector<StochasticMatrix> out;
  out.reserve(n_steps);
  out.push_back(one_step);
  for (std::size_t k = 1; k < n_steps; ++k)
    out.push_back(out.back() * one_step);
  return out;
}

StochasticMatrix markov_brute_force(const ComplexMatrix& u_s_step,
                                    const CorrelationMap& corr,
                                    std::size_t k) {
  const std::size_t n = corr.subject_dim();
  const std::size_t m = corr.environment_dim();
  if (u_s_step.rows() != n)
    throw DimensionError("markov_brute_force: step size");
  if (k == 0 || k > 4 || m > 3)
    throw PreconditionError("markov_brute_force: oracle capped at k <= 4, M <= 3");

  std::size_t env_total = 1;
  for (std::size_t r = 0; r < k; ++r) env_total *= m;

  std::vector<std::vector<double>> gamma(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    // Amplitudes over (subject, env_1, ..., env_k), subject-major with the
    // step-r environment in digit r (most significant first).
    std::vector<cdouble> amps(n * env_total, 0.0);
    amps[j * env_total + 0] = 1.0;  // all environments start at 0

    for (std::size_t r = 0; r < k; ++r) {
      // Subject unitary step.
      std::vector<cdouble> next(n * env_total, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj) {
          const cdouble w = u_s_step(i, jj);
          if (w == cdouble{0.0, 0.0}) continue;
          for (std::size_t env = 0; env < env_total; ++env)
            next[i * env_total + env] += w * amps[jj * env_total + env];
        }
      // Correlate with the fresh environment r: cyclic shift of digit r by
      // corr(i).
      std::size_t digit_stride = 1;
      for (std::size_t q = r + 1; q < k; ++q) digit_stride *= m;
      std::vector<cdouble> shifted(n * env_total, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t env = 0; env < env_total; ++env) {
          const cdouble a = next[i * env_total + env];
          if (a == cdouble{0.0, 0.0}) continue;
          const std::size_t digit = (env / digit_stride) % m;
          const std::size_t new_digit = (digit + corr(i)) % m;
          const std::size_t new_env =
              env - digit * digit_stride + new_digit * digit_stride;
          shifted[i * env_total + new_env] += a;
        }
      amps.swap(shifted);
    }

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t env = 0; env < env_total; ++env)
        gamma[i][j] += std::norm(amps[i * env_total + env]);
  }
  return StochasticMatrix(std::move(gamma), 1e-10);
}

DecoherenceResult decoherence_compare(const ComplexMatrix& u_s,
                                      const ProbabilityVector& p0,
                                      const CorrelationMap& corr) {
  const std::size_t n = corr.subject_dim();
  const std::size_t m = corr.environment_dim();
  if (u_s.rows() != n || p0.size() != n)
    throw DimensionError("decoherence_compare");
  if (!is_unitary(u_s))
    throw PreconditionError("decoherence_compare: subject not unitary");

  std::vector<cdouble> diag(n);
  for (std::size_t j = 0; j < n; ++j) diag[j] = p0[j];
  ComplexMatrix rho_iso = u_s * ComplexMatrix::diagonal(diag) * u_s.adjoint();

  ComplexMatrix rho_dec = ComplexMatrix::zero(n, n);
  for (std::size_t i = 0; i < n; ++i) rho_dec(i, i) = rho_iso(i, i);

  // Cross-check: the same diagonal matrix must arise as the partial trace of
  // the correlated composite density matrix.
  ComplexMatrix rho_composite = ComplexMatrix::zero(n * m, n * m);
  for (std::size_t j = 0; j < n; ++j) {
    if (p0[j] == 0.0) continue;
    ComplexVector phi(n * m);
    for (std::size_t i = 0; i < n; ++i)
      phi[i * m + corr(i)] = u_s(i, j);
    rho_composite =
        rho_composite + ComplexMatrix::outer(phi, phi) * cdouble{p0[j], 0.0};
  }
  ComplexMatrix traced = partial_trace(rho_composite, {n, m}, Keep::First);
  if ((traced - rho_dec).max_abs() > tol::kProb)
    throw std::logic_error("decoherence routes disagree");

  DecoherenceResult res{DensityMatrix(rho_iso, tol::kProb * n),
                        DensityMatrix(rho_dec, tol::kProb * n), 0.0};
  res.coherence_norm_drop = (rho_iso - rho_dec).frobenius_norm();
  return res;
}

FactorizationResult entanglement_factorization_test(const CompositeSystem& sys,
                                                    double t,
                                                    double tolerance) {
  if (sys.factors.size() != 2)
    throw DimensionError("entanglement_factorization_test: need two factors");
  const std::size_t da = sys.factors[0].dim;
  const std::size_t db = sys.factors[1].dim;
  const ComplexMatrix u = sys.family.evaluate(t);
  StochasticMatrix joint = moduli(u);

  // Canonical marginal candidates: average the joint column over a uniform
  // initial condition on the other factor, then sum the final configurations
  // of that factor.
  std::vector<std::vector<double>> ga(da, std::vector<double>(da, 0.0));
  std::vector<std::vector<double>> gb(db, std::vector<double>(db, 0.0));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t a = 0; a < db; ++a)
        for (std::size_t b = 0; b < db; ++b)
          ga[i][j] += joint(i * db + a, j * db + b) / static_cast<double>(db);
  for (std::size_t a = 0; a < db; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
          gb[a][b] += joint(i * db + a, j * db + b) / static_cast<double>(da);

  StochasticMatrix gamma_a(std::move(ga), 1e-9);
  StochasticMatrix gamma_b(std::move(gb), 1e-9);

  double residual = 0.0;
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t a = 0; a < db; ++a)
        for (std::size_t b = 0; b < db; ++b)
          residual = std::max(
              residual, std::abs(joint(i * db + a, j * db + b) -
                                 gamma_a(i, j) * gamma_b(a, b)));

  FactorizationResult res{residual <= tolerance, residual, std::move(joint),
                          std::move(gamma_a), std::move(gamma_b)};
  return res;
}

}  // namespace sqc
