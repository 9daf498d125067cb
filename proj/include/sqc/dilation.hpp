#pragma once

// Hilbert-space dilations: the dilated dictionary on an enlarged space with
// an internal factor, block-wise gauge transformations, the real two-
// dimensional-internal representation of complex evolution operators, and
// the Stinespring lift of a Kraus set to a unitary on N^3 dimensions.

#include "sqc/correspondence.hpp"

namespace sqc {

struct DilatedSystem {
  std::size_t base_dim = 0;
  std::size_t internal_dim = 0;
  std::size_t gamma_label = 0;  // internal index in 0..internal_dim-1
  PVM internal_pvm;
  ComplexMatrix evolution;  // side base_dim * internal_dim
};

struct StinespringResult {
  std::size_t base_dim = 0;
  std::size_t ancilla_label = 0;
  ComplexMatrix unitary;  // N^3 x N^3
};

// Gamma_ij = tr(Theta~† (P_i (x) 1) Theta~ (P_j (x) P_gamma)) with the pair
// convention (base, internal) -> base * D + internal. Throws if the result
// fails column-stochasticity, which signals that the input violates the
// generalized column-norm condition.
StochasticMatrix dilated_dictionary(const ComplexMatrix& theta_dilated,
                                    const PVM& internal_pvm,
                                    std::size_t gamma);

// Views a dilated evolution matrix as an N x N array of D x D blocks and
// back; block (i,j) couples base configurations j -> i.
std::vector<std::vector<ComplexMatrix>> to_blocks(const ComplexMatrix& m,
                                                  std::size_t base_dim);
ComplexMatrix from_blocks(const std::vector<std::vector<ComplexMatrix>>& blocks);

// Left-multiplies block (i,j) by the unitary v_blocks[i][j]. Leaves the
// dilated dictionary output unchanged.
ComplexMatrix block_gauge(
    const std::vector<std::vector<ComplexMatrix>>& theta_blocks,
    const std::vector<std::vector<ComplexMatrix>>& v_blocks);

// Replaces each complex entry a + bi by the real 2x2 block a*1 + b*J with
// J = [[0,-1],[1,0]], giving a real dilated evolution with D = 2 that
// reproduces the original dictionary output.
DilatedSystem realify(const EvolutionOperator& theta);

// Lifts an N-operator Kraus set on N dimensions to an N^3 x N^3 unitary
// whose dilated dictionary (internal dimension N^2, configuration internal
// PVM, ancilla label < N) reproduces Sum_b |K_b,ij|^2. The identity Kraus
// set {P_b} lifts to the exact identity matrix.
StinespringResult stinespring_dilate(const KrausSet& kraus,
                                     std::size_t ancilla_label = 0);

}  // namespace sqc
