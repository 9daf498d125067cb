#pragma once

// Seeded random generators for the objects exercised by property tests and
// the verification suite. All draws go through the counter-based Rng, so a
// fixed seed reproduces the same objects bit for bit.

#include "sqc/correspondence.hpp"
#include "sqc/rng.hpp"

namespace sqc {

double gaussian(Rng& rng);

// Haar-like unitary: modified Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

// Unit-column-norm complex matrix (generally not unitary).
EvolutionOperator random_evolution_operator(std::size_t n, Rng& rng);

// Columns drawn from a flat Dirichlet distribution.
StochasticMatrix random_stochastic(std::size_t n, Rng& rng);

ProbabilityVector random_probability(std::size_t n, Rng& rng);

// Random mixed state: normalized A A† for Gaussian A.
DensityMatrix random_density(std::size_t n, Rng& rng);

ComplexMatrix random_self_adjoint(std::size_t n, Rng& rng);

PhaseMatrix random_phases(std::size_t n, Rng& rng);

}  // namespace sqc
