#pragma once

// Generalized stochastic systems on a finite configuration space: transition
// matrices, probability vectors, random variables, divisibility tests, and
// Monte Carlo sampling of marginals.

#include <cstdint>
#include <vector>

#include "sqc/linalg.hpp"

namespace sqc {

// Column-stochastic real matrix: entry (i,j) is the conditional probability
// of configuration i given that the system started in configuration j.
class StochasticMatrix {
 public:
  // Validates non-negativity and unit column sums within `tolerance`.
  // Out-of-tolerance input is rejected, never renormalized.
  explicit StochasticMatrix(std::vector<std::vector<double>> entries,
                            double tolerance = tol::kProb);

  static StochasticMatrix identity(std::size_t n);
  static StochasticMatrix from_real_parts(const ComplexMatrix& m,
                                          double tolerance = tol::kProb);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }

  StochasticMatrix operator*(const StochasticMatrix& other) const;

  ComplexMatrix as_complex() const;
  bool is_permutation(double tolerance = tol::kProb) const;
  bool is_doubly_stochastic(double tolerance = tol::kProb) const;

 private:
  StochasticMatrix() = default;
  std::size_t n_ = 0;
  std::vector<double> entries_;  // row-major
};

class ProbabilityVector {
 public:
  // Validates the simplex constraints within `tolerance`; rejects otherwise.
  explicit ProbabilityVector(std::vector<double> entries,
                             double tolerance = tol::kProb);

  static ProbabilityVector point_mass(std::size_t n, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::vector<double> entries_;
};

// Diagonal random variable: magnitude a_i attached to configuration i.
class RandomVariable {
 public:
  explicit RandomVariable(std::vector<double> magnitudes);

  std::size_t size() const { return magnitudes_.size(); }
  double operator[](std::size_t i) const { return magnitudes_[i]; }
  ComplexMatrix as_matrix() const;

 private:
  std::vector<double> magnitudes_;
};

ProbabilityVector propagate(const StochasticMatrix& gamma,
                            const ProbabilityVector& p0);

double expectation(const RandomVariable& a, const ProbabilityVector& p);

struct DivisibilityResult {
  bool divisible = false;
  ComplexMatrix candidate;  // Γ(t) Γ(t′)⁻¹, possibly outside the simplex
  double condition = 0.0;   // condition number of Γ(t′)
};

// Tests whether Γ_t factors through Γ_tp, i.e. whether Γ_t Γ_tp⁻¹ is itself
// column-stochastic within tol. Throws SingularMatrixError when Γ_tp is not
// invertible (divisibility is then undecidable by this route).
DivisibilityResult check_divisible_at(const StochasticMatrix& gamma_t,
                                      const StochasticMatrix& gamma_tp,
                                      double tolerance);

// True iff Γ⁻¹ is column-stochastic. A stochastic matrix with a stochastic
// inverse must be a permutation; the function asserts that implication and
// throws std::logic_error on a counterexample (which would indicate a bug in
// the linear algebra, not a property of the input).
bool stochastic_inverse_is_permutation(const StochasticMatrix& gamma,
                                       double tolerance);

// Draws i.i.d. samples from column j0 of Γ. Deterministic in (seed).
std::vector<std::uint64_t> sample_marginal(const StochasticMatrix& gamma,
                                           std::size_t j0, std::uint64_t draws,
                                           std::uint64_t seed);

// CSV with header "index,value"; indices are 1-based, values at 17
// significant digits with '.' decimal separator and LF line endings.
std::string probabilities_to_csv(const ProbabilityVector& p);
std::string histogram_to_csv(const std::vector<std::uint64_t>& counts);

}  // namespace sqc
