#pragma once

// The dictionary between stochastic matrices and Hilbert-space objects:
// evolution operators with unit-norm columns, the canonical Kraus set,
// density matrices, state vectors, the Born rule, the Heisenberg picture,
// and both gauge transformations.

#include <optional>
#include <vector>

#include "sqc/stochastic.hpp"

namespace sqc {

// Complex matrix Θ whose squared entry moduli form a column-stochastic
// matrix; equivalently, every column has unit Euclidean norm.
class EvolutionOperator {
 public:
  explicit EvolutionOperator(ComplexMatrix theta, double tolerance = tol::kProb);

  std::size_t size() const { return theta_.rows(); }
  const ComplexMatrix& theta() const { return theta_; }

 private:
  ComplexMatrix theta_;
};

// Operators K_β with Σ_β K_β†K_β = identity.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators,
                    double tolerance = tol::kProb);

  std::size_t dim() const { return operators_.front().rows(); }
  std::size_t count() const { return operators_.size(); }
  const ComplexMatrix& operator[](std::size_t b) const {
    return operators_[b];
  }

 private:
  std::vector<ComplexMatrix> operators_;
};

// Self-adjoint, unit-trace, positive-semidefinite matrix. Positivity is
// enforced as an eigenvalue floor of -1e-10 to tolerate eigensolver noise.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho, double tolerance = tol::kProb);

  std::size_t size() const { return rho_.rows(); }
  const ComplexMatrix& rho() const { return rho_; }

 private:
  ComplexMatrix rho_;
};

class StateVector {
 public:
  explicit StateVector(ComplexVector psi, double tolerance = tol::kProb);

  static StateVector basis(std::size_t n, std::size_t i);

  std::size_t size() const { return psi_.dim(); }
  const ComplexVector& psi() const { return psi_; }

 private:
  ComplexVector psi_;
};

// Entrywise phases θ_ij in radians for the Schur-Hadamard gauge.
struct PhaseMatrix {
  std::vector<std::vector<double>> thetas;

  std::size_t size() const { return thetas.size(); }
};

// Canonical gauge: Θ_ij = +sqrt(Γ_ij), the entrywise non-negative real root.
EvolutionOperator evolution_from_stochastic(const StochasticMatrix& gamma);

// Evaluates Γ both as |Θ_ij|² and via the projector trace formula
// tr(Θ† P_i Θ P_j); the two routes must agree within 1e-12 (a disagreement
// indicates a linear-algebra bug and throws std::logic_error).
StochasticMatrix stochastic_from_evolution(const EvolutionOperator& theta);

// K_β shares Θ's β-th column and is zero elsewhere: K_{β,ij} = δ_{βj} Θ_ij.
KrausSet kraus_from_evolution(const EvolutionOperator& theta);

// Γ_ij = Σ_β tr(K_β† P_i K_β P_j).
StochasticMatrix stochastic_from_kraus(const KrausSet& kraus);

// ρ(t) = Θ diag(p_j(0)) Θ†.
DensityMatrix density_matrix(const EvolutionOperator& theta,
                             const ProbabilityVector& p0);

// Ψ(t) = Θ e_j for a system starting in configuration j.
StateVector state_vector(const EvolutionOperator& theta, std::size_t j);

// p_i = |Ψ_i|².
ProbabilityVector born_rule(const StateVector& psi);

// Real part of tr(Aρ) for self-adjoint A; asserts the imaginary part is tiny.
double expectation_qm(const ComplexMatrix& a, const DensityMatrix& rho);

// A^H = Θ† A Θ.
ComplexMatrix to_heisenberg(const ComplexMatrix& a,
                            const EvolutionOperator& theta);

// Θ_ij ↦ Θ_ij e^{iθ_ij}. Leaves |Θ_ij|², hence Γ, invariant.
EvolutionOperator gauge_schur_hadamard(const EvolutionOperator& theta,
                                       const PhaseMatrix& phases);

// Γ_ij = tr(Θ† P_i Θ Q_j) for arbitrary PVMs at the two times. With the
// configuration PVMs this is the plain dictionary; after a unitary gauge
// transformation the PVMs rotate along with Θ and the value is unchanged.
ComplexMatrix dictionary_with_pvms(const ComplexMatrix& theta, const PVM& pvm_t,
                                   const PVM& pvm_0);

// Objects transformed together by a time-dependent unitary gauge:
// ρ ↦ V_t ρ V_t†, Ψ ↦ V_t Ψ, A ↦ V_t A V_t†, Θ ↦ V_t Θ V_0†,
// P_i(t) ↦ V_t P_i V_t†, P_j(0) ↦ V_0 P_j V_0†. Θ is stored as a raw matrix
// because its unit-column-norm property only holds relative to the rotated
// projectors, not entrywise.
struct GaugeBundle {
  ComplexMatrix theta;
  PVM pvm_t;
  PVM pvm_0;
  std::optional<DensityMatrix> rho;
  std::optional<StateVector> psi;
  std::vector<ComplexMatrix> observables;

  static GaugeBundle from(const EvolutionOperator& theta);
};

GaugeBundle gauge_unitary(const GaugeBundle& objects, const ComplexMatrix& v_t,
                          const ComplexMatrix& v_0);

}  // namespace sqc
