#include "sqc/correspondence.hpp"

#include <cmath>

namespace sqc {

namespace {

// Γ_ij via the projector trace formula tr(Θ† P_i Θ P_j). With configuration
// projectors this reduces to conj(Θ_ij)Θ_ij, but the expression is evaluated
// literally as a cross-check on the linear algebra.
ComplexMatrix dictionary_trace_form(const ComplexMatrix& theta) {
  const std::size_t n = theta.rows();
  const PVM pvm = PVM::configuration(n);
  const ComplexMatrix theta_dag = theta.adjoint();
  ComplexMatrix gamma(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gamma(i, j) =
          (theta_dag * pvm.projectors[i] * theta * pvm.projectors[j]).trace();
  return gamma;
}

}  // namespace

EvolutionOperator::EvolutionOperator(ComplexMatrix theta, double tolerance)
    : theta_(std::move(theta)) {
  if (!theta_.square()) throw DimensionError("EvolutionOperator: non-square");
  if (!theta_.all_finite())
    throw PreconditionError("EvolutionOperator: non-finite entry");
  for (std::size_t j = 0; j < theta_.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < theta_.rows(); ++i)
      sum += std::norm(theta_(i, j));
    if (std::abs(sum - 1.0) > tolerance)
      throw PreconditionError("EvolutionOperator: column " +
                              std::to_string(j + 1) +
                              " has squared norm " + std::to_string(sum));
  }
}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, double tolerance)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw DimensionError("KrausSet: empty");
  const std::size_t n = operators_.front().rows();
  ComplexMatrix sum = ComplexMatrix::zero(n, n);
  for (const auto& k : operators_) {
    if (k.rows() != n || k.cols() != n)
      throw DimensionError("KrausSet: operator shape mismatch");
    sum = sum + k.adjoint() * k;
  }
  if ((sum - ComplexMatrix::identity(n)).max_abs() > tolerance)
    throw PreconditionError("KrausSet: completeness identity violated");
}

DensityMatrix::DensityMatrix(ComplexMatrix rho, double tolerance)
    : rho_(std::move(rho)) {
  if (!rho_.square()) throw DimensionError("DensityMatrix: non-square");
  if (!rho_.is_self_adjoint(tolerance))
    throw PreconditionError("DensityMatrix: not self-adjoint");
  if (std::abs(rho_.trace() - cdouble{1.0, 0.0}) > tolerance)
    throw PreconditionError("DensityMatrix: trace not 1");
  EigenSystem sys = eigh(rho_);
  for (double v : sys.values)
    if (v < -1e-10)
      throw PreconditionError("DensityMatrix: negative eigenvalue " +
                              std::to_string(v));
}

StateVector::StateVector(ComplexVector psi, double tolerance)
    : psi_(std::move(psi)) {
  if (psi_.dim() == 0) throw DimensionError("StateVector: empty");
  if (!psi_.all_finite())
    throw PreconditionError("StateVector: non-finite entry");
  if (std::abs(psi_.norm() - 1.0) > tolerance)
    throw PreconditionError("StateVector: norm not 1");
}

StateVector StateVector::basis(std::size_t n, std::size_t i) {
  return StateVector(ComplexVector::basis(n, i));
}

EvolutionOperator evolution_from_stochastic(const StochasticMatrix& gamma) {
  const std::size_t n = gamma.size();
  ComplexMatrix theta(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      theta(i, j) = std::sqrt(std::max(0.0, gamma(i, j)));
  return EvolutionOperator(std::move(theta));
}

StochasticMatrix stochastic_from_evolution(const EvolutionOperator& theta) {
  const ComplexMatrix& th = theta.theta();
  const std::size_t n = th.rows();

  // Route one: entrywise squared moduli, conj(Θ)⊙Θ.
  ComplexMatrix gamma_sq = schur_hadamard(th.conjugate(), th);
  // Route two: the projector trace formula.
  ComplexMatrix gamma_tr = dictionary_trace_form(th);

  if ((gamma_sq - gamma_tr).max_abs() > tol::kProb)
    throw std::logic_error(
        "dictionary routes disagree: |Theta_ij|^2 vs trace formula");

  return StochasticMatrix::from_real_parts(gamma_sq, tol::kProb * n);
}

KrausSet kraus_from_evolution(const EvolutionOperator& theta) {
  const ComplexMatrix& th = theta.theta();
  const std::size_t n = th.rows();
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (std::size_t b = 0; b < n; ++b) {
    ComplexMatrix k(n, n);
    for (std::size_t i = 0; i < n; ++i) k(i, b) = th(i, b);
    ops.push_back(std::move(k));
  }
  return KrausSet(std::move(ops));
}

StochasticMatrix stochastic_from_kraus(const KrausSet& kraus) {
  const std::size_t n = kraus.dim();
  const PVM pvm = PVM::configuration(n);
  ComplexMatrix gamma(n, n);
  for (std::size_t b = 0; b < kraus.count(); ++b) {
    const ComplexMatrix& k = kraus[b];
    const ComplexMatrix k_dag = k.adjoint();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        gamma(i, j) +=
            (k_dag * pvm.projectors[i] * k * pvm.projectors[j]).trace();
  }
  return StochasticMatrix::from_real_parts(gamma, tol::kProb * n);
}

DensityMatrix density_matrix(const EvolutionOperator& theta,
                             const ProbabilityVector& p0) {
  if (theta.size() != p0.size()) throw DimensionError("density_matrix");
  std::vector<cdouble> diag(p0.size());
  for (std::size_t j = 0; j < p0.size(); ++j) diag[j] = p0[j];
  ComplexMatrix rho =
      theta.theta() * ComplexMatrix::diagonal(diag) * theta.theta().adjoint();
  return DensityMatrix(std::move(rho), tol::kProb * p0.size());
}

StateVector state_vector(const EvolutionOperator& theta, std::size_t j) {
  return StateVector(theta.theta().column(j));
}

ProbabilityVector born_rule(const StateVector& psi) {
  std::vector<double> p(psi.size());
  kernels::abs2(psi.psi().data(), p.data(), psi.size());
  return ProbabilityVector(std::move(p), tol::kProb * psi.size());
}

double expectation_qm(const ComplexMatrix& a, const DensityMatrix& rho) {
  if (!a.is_self_adjoint())
    throw PreconditionError("expectation_qm: observable not self-adjoint");
  if (a.rows() != rho.size()) throw DimensionError("expectation_qm");
  const cdouble t = (a * rho.rho()).trace();
  if (std::abs(t.imag()) > tol::kStructural)
    throw std::logic_error("expectation_qm: non-real expectation value");
  return t.real();
}

ComplexMatrix to_heisenberg(const ComplexMatrix& a,
                            const EvolutionOperator& theta) {
  if (a.rows() != theta.size() || a.cols() != theta.size())
    throw DimensionError("to_heisenberg");
  return theta.theta().adjoint() * a * theta.theta();
}

EvolutionOperator gauge_schur_hadamard(const EvolutionOperator& theta,
                                       const PhaseMatrix& phases) {
  const std::size_t n = theta.size();
  if (phases.size() != n) throw DimensionError("gauge_schur_hadamard");
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (phases.thetas[i].size() != n)
      throw DimensionError("gauge_schur_hadamard: ragged phase matrix");
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = theta.theta()(i, j) *
                  std::exp(cdouble(0.0, phases.thetas[i][j]));
  }
  return EvolutionOperator(std::move(out));
}

ComplexMatrix dictionary_with_pvms(const ComplexMatrix& theta, const PVM& pvm_t,
                                   const PVM& pvm_0) {
  const std::size_t n = theta.rows();
  if (pvm_t.dim != n || pvm_0.dim != n)
    throw DimensionError("dictionary_with_pvms");
  const ComplexMatrix theta_dag = theta.adjoint();
  ComplexMatrix gamma(pvm_t.projectors.size(), pvm_0.projectors.size());
  for (std::size_t i = 0; i < pvm_t.projectors.size(); ++i)
    for (std::size_t j = 0; j < pvm_0.projectors.size(); ++j)
      gamma(i, j) =
          (theta_dag * pvm_t.projectors[i] * theta * pvm_0.projectors[j])
              .trace();
  return gamma;
}

GaugeBundle GaugeBundle::from(const EvolutionOperator& theta) {
  return GaugeBundle{theta.theta(), PVM::configuration(theta.size()),
                     PVM::configuration(theta.size()), std::nullopt,
                     std::nullopt, {}};
}

GaugeBundle gauge_unitary(const GaugeBundle& objects, const ComplexMatrix& v_t,
                          const ComplexMatrix& v_0) {
  if (!is_unitary(v_t) || !is_unitary(v_0))
    throw PreconditionError("gauge_unitary: V not unitary");

  GaugeBundle out;
  out.theta = v_t * objects.theta * v_0.adjoint();
  out.pvm_t.dim = objects.pvm_t.dim;
  for (const auto& p : objects.pvm_t.projectors)
    out.pvm_t.projectors.push_back(v_t * p * v_t.adjoint());
  out.pvm_0.dim = objects.pvm_0.dim;
  for (const auto& p : objects.pvm_0.projectors)
    out.pvm_0.projectors.push_back(v_0 * p * v_0.adjoint());
  if (objects.rho)
    out.rho = DensityMatrix(v_t * objects.rho->rho() * v_t.adjoint(),
                            tol::kProb * v_t.rows());
  if (objects.psi)
    out.psi = StateVector(v_t * objects.psi->psi(), tol::kProb * v_t.rows());
  out.observables.reserve(objects.observables.size());
  for (const auto& a : objects.observables)
    out.observables.push_back(v_t * a * v_t.adjoint());
  return out;
}

}  // namespace sqc
