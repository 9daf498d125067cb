#pragma once

// Composite subject-environment systems: the division-event construction,
// emergent Markov chains with fresh environment factors, decoherence of the
// subject density matrix, and entanglement factorization tests.

#include "sqc/interference.hpp"

namespace sqc {

// Injective assignment of an environment configuration e(i) to each subject
// configuration i; all indices zero-based.
class CorrelationMap {
 public:
  CorrelationMap(std::size_t subject_dim, std::size_t environment_dim,
                 std::vector<std::size_t> e_of);

  std::size_t subject_dim() const { return n_; }
  std::size_t environment_dim() const { return m_; }
  std::size_t operator()(std::size_t i) const { return e_of_[i]; }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> e_of_;
};

struct CompositeFactor {
  std::string name;
  std::size_t dim = 0;
};

// Ordered factors with the global pair convention (i, e) -> i * dimE + e,
// plus a unitary family on the product dimension.
struct CompositeSystem {
  std::vector<CompositeFactor> factors;
  UnitaryFamily family;
  double event_time = 0.0;  // t' of the division event, 0 if none

  std::size_t total_dim() const;
};

// Permutation unitary on the environment sending configuration 0 to target
// (a cyclic shift by target).
ComplexMatrix environment_shift(std::size_t m, std::size_t target);

// Builds the composite family realizing a division event at t' = 1:
// before t', U_S_pre acts on the subject alone and then the conditional
// environment shift Sum_i P_i (x) R_e(i) correlates the factors; after t',
// the evolution factorizes as U_S_post(t - t') (x) U_E_post(t - t').
CompositeSystem build_division_scenario(const ComplexMatrix& u_s_pre,
                                        const CorrelationMap& corr,
                                        const UnitaryFamily& u_s_post,
                                        const UnitaryFamily& u_e_post);

// Effective subject transition matrix at t > t', computed as the product
// Gamma_S(t<-t') Gamma_S(t') and cross-checked against brute-force
// marginalization of the composite joint probabilities.
StochasticMatrix subject_marginal_dynamics(const CompositeSystem& sys,
                                           const ComplexMatrix& u_s_pre,
                                           const UnitaryFamily& u_s_post,
                                           double t);

// Emergent Markov chain: entry k-1 is Gamma^k for the one-step unistochastic
// matrix Gamma_ij = |U_S_step_ij|^2.
std::vector<StochasticMatrix> markov_chain_emergence(
    const ComplexMatrix& u_s_step, std::size_t n_steps);

// Brute-force oracle for the k-step marginal: composes k division events
// with a fresh environment factor per step (dimension M^k, so keep k <= 4,
// M <= 3) and marginalizes the final joint distribution over environments.
StochasticMatrix markov_brute_force(const ComplexMatrix& u_s_step,
                                    const CorrelationMap& corr,
                                    std::size_t k);

struct DecoherenceResult {
  DensityMatrix rho_isolated;
  DensityMatrix rho_decohered;
  double coherence_norm_drop = 0.0;  // Frobenius norm of the off-diagonal part
};

// Subject density matrix with and without the environment interaction at t'.
// rho_decohered is the diagonal truncation of rho_isolated and is also
// cross-checked against the partial trace of the full correlated composite.
DecoherenceResult decoherence_compare(const ComplexMatrix& u_s,
                                      const ProbabilityVector& p0,
                                      const CorrelationMap& corr);

struct FactorizationResult {
  bool factorizable = false;
  double residual = 0.0;
  StochasticMatrix gamma_joint;
  StochasticMatrix gamma_a;
  StochasticMatrix gamma_b;
};

// Tests whether the joint transition matrix of a two-factor system at time t
// is the tensor product of its canonical marginals (columns marginalized
// over the other factor).
FactorizationResult entanglement_factorization_test(const CompositeSystem& sys,
                                                    double t, double tolerance);

}  // namespace sqc
