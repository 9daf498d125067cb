#pragma once

// Observables with clustered spectra, emergeables, the subject-device-
// environment measurement process, conditional (collapsed) states, and the
// Heisenberg-Robertson uncertainty relation.

#include "sqc/composite.hpp"

namespace sqc {

// Self-adjoint matrix with its spectral decomposition. Eigenvalues within
// the clustering tolerance are merged into a single eigenprojector and the
// retained values are strictly increasing.
class Observable {
 public:
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t outcome_count() const { return eigenvalues_.size(); }
  double eigenvalue(std::size_t a) const { return eigenvalues_[a]; }
  const ComplexMatrix& projector(std::size_t a) const {
    return projectors_[a];
  }
  std::size_t rank(std::size_t a) const { return ranks_[a]; }
  // Unit eigenvector for a rank-1 outcome.
  ComplexVector eigenvector(std::size_t a) const;

  const PVM& pvm() const { return pvm_; }

  friend Observable spectral_decompose(const ComplexMatrix& m,
                                       double degeneracy_tol);

 private:
  Observable() = default;
  ComplexMatrix matrix_;
  std::vector<double> eigenvalues_;
  std::vector<ComplexMatrix> projectors_;
  std::vector<std::size_t> ranks_;
  PVM pvm_;
};

// Clustering tolerance is relative to the spectral range (default 1e-8).
Observable spectral_decompose(const ComplexMatrix& m,
                              double degeneracy_tol = 1e-8);

// Velocity emergeable: central difference of A^H(t) at t = 0, symmetrized.
// Equals (i/hbar)[H, A] at t = 0 up to O(dt^2).
ComplexMatrix emergeable_velocity(const RandomVariable& a,
                                  const UnitaryFamily& u, double dt = 1e-5);

struct MeasurementScenario {
  std::size_t subject_dim = 0;
  std::size_t device_dim = 0;       // >= number of outcomes
  std::size_t environment_dim = 0;  // >= number of outcomes
  Observable observable;
  ComplexMatrix pre_unitary;        // subject preparation U^S(t')
  std::vector<std::size_t> d_of;    // outcome -> device configuration
  std::vector<std::size_t> e_of;    // outcome -> environment configuration
  // Post-measurement relative evolution, factorized between the subsystems.
  UnitaryFamily subject_post;
  UnitaryFamily device_post;
  UnitaryFamily environment_post;
  std::size_t initial_configuration = 0;  // subject starts in e_j

  void validate() const;
};

MeasurementScenario make_scenario(Observable observable,
                                  ComplexMatrix pre_unitary,
                                  std::size_t device_dim,
                                  std::size_t environment_dim,
                                  std::size_t initial_configuration = 0);

struct MeasurementResult {
  // Probability of device configuration d(a), indexed by outcome a.
  std::vector<double> device_probs;
  // Subject configuration probabilities at the query time t.
  ProbabilityVector subject_probs;
  // Hybrid matrix: rows are subject configurations at t, columns outcomes;
  // entry (i, a) = p(subject i at t | device read outcome a at t').
  ComplexMatrix hybrid_matrix;
  std::vector<DensityMatrix> conditional_densities;
  DensityMatrix mixed_density;
};

// Runs the full measurement chain at query time t > t' (t' = 1 internally)
// and cross-checks the hybrid route against brute-force marginalization of
// the composite joint probabilities.
MeasurementResult run_measurement(const MeasurementScenario& s, double t);

struct CollapseResult {
  std::optional<StateVector> state;  // rank-1 outcomes only
  DensityMatrix density;
};

// Conditional state after reading outcome a at t', evolved to t.
CollapseResult collapse(const MeasurementScenario& s, std::size_t outcome,
                        double t);

struct UncertaintyResult {
  double lhs = 0.0;  // dA * dB
  double rhs = 0.0;  // (1/2)|tr(i[A,B] rho)|
  bool satisfied = false;
};

UncertaintyResult uncertainty_check(const Observable& a, const Observable& b,
                                    const DensityMatrix& rho);

}  // namespace sqc
