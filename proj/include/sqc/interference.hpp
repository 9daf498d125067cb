#pragma once

// Quantifies indivisibility of unistochastic dynamics: relative evolution
// operators, the interference discrepancy between the actual transition
// matrix and its divided candidate, and sweeps over intermediate times.

#include "sqc/dynamics.hpp"

namespace sqc {

struct InterferenceReport {
  double t = 0.0;
  double t_prime = 0.0;
  StochasticMatrix gamma_actual;
  // Candidate Γ(t←t′)Γ(t′); column-stochastic but generally wrong.
  StochasticMatrix gamma_divided;
  // gamma_actual − gamma_divided, entrywise.
  ComplexMatrix discrepancy;
  double max_abs_discrepancy = 0.0;
};

// U(t←t′) = U(t) U†(t′); satisfies U(t) = U(t←t′) U(t′).
ComplexMatrix relative_evolution(const UnitaryFamily& u, double t,
                                 double t_prime);

// Discrepancy for the system started in configuration j0 (zero-based).
// Column j0 of the discrepancy is evaluated twice: as a matrix subtraction
// and as the cross-term double sum over k ≠ l with Ψ(t′) = U(t′) e_{j0};
// disagreement beyond 1e-12 throws std::logic_error.
InterferenceReport interference_report(const UnitaryFamily& u, std::size_t j0,
                                       double t, double t_prime);

struct ProfilePoint {
  double t_prime;
  double max_abs_discrepancy;
};

std::vector<ProfilePoint> divisibility_profile(
    const UnitaryFamily& u, std::size_t j0, double t,
    const std::vector<double>& t_prime_grid);

// CSV with header "t_prime,max_abs_discrepancy".
std::string profile_to_csv(const std::vector<ProfilePoint>& profile);

}  // namespace sqc
