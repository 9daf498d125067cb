#include "sqc/dilation.hpp"

#include <cmath>

namespace sqc {

StochasticMatrix dilated_dictionary(const ComplexMatrix& theta_dilated,
                                    const PVM& internal_pvm,
                                    std::size_t gamma) {
  const std::size_t d = internal_pvm.dim;
  if (!theta_dilated.square() || d == 0 || theta_dilated.rows() % d != 0)
    throw DimensionError("dilated_dictionary: side not a multiple of D");
  const std::size_t n = theta_dilated.rows() / d;
  if (gamma >= internal_pvm.projectors.size())
    throw PreconditionError("dilated_dictionary: gamma out of range");

  const ComplexMatrix eye_d = ComplexMatrix::identity(d);
  const ComplexMatrix& p_gamma = internal_pvm.projectors[gamma];
  const PVM base = PVM::configuration(n);
  const ComplexMatrix theta_dag = theta_dilated.adjoint();

  std::vector<std::vector<double>> gamma_out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix row_proj = tensor(base.projectors[i], eye_d);
    const ComplexMatrix middle = theta_dag * row_proj * theta_dilated;
    for (std::size_t j = 0; j < n; ++j) {
      const cdouble v =
          (middle * tensor(base.projectors[j], p_gamma)).trace();
      if (std::abs(v.imag()) > tol::kProb)
        throw PreconditionError(
            "dilated_dictionary: non-real probability entry");
      gamma_out[i][j] = v.real();
    }
  }
  try {
    return StochasticMatrix(std::move(gamma_out), tol::kProb * n * d);
  } catch (const PreconditionError&) {
    throw PreconditionError(
        "dilated_dictionary: output not stochastic; input violates the "
        "generalized column-norm condition");
  }
}

std::vector<std::vector<ComplexMatrix>> to_blocks(const ComplexMatrix& m,
                                                  std::size_t base_dim) {
  if (!m.square() || base_dim == 0 || m.rows() % base_dim != 0)
    throw DimensionError("to_blocks: incompatible dimensions");
  const std::size_t d = m.rows() / base_dim;
  std::vector<std::vector<ComplexMatrix>> blocks(
      base_dim, std::vector<ComplexMatrix>(base_dim, ComplexMatrix(d, d)));
  for (std::size_t i = 0; i < base_dim; ++i)
    for (std::size_t j = 0; j < base_dim; ++j)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          blocks[i][j](a, b) = m(i * d + a, j * d + b);
  return blocks;
}

ComplexMatrix from_blocks(
    const std::vector<std::vector<ComplexMatrix>>& blocks) {
  const std::size_t n = blocks.size();
  if (n == 0) throw DimensionError("from_blocks: empty");
  const std::size_t d = blocks.front().front().rows();
  ComplexMatrix m(n * d, n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (blocks[i].size() != n) throw DimensionError("from_blocks: ragged");
    for (std::size_t j = 0; j < n; ++j) {
      const ComplexMatrix& b = blocks[i][j];
      if (b.rows() != d || b.cols() != d)
        throw DimensionError("from_blocks: block size");
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) m(i * d + a, j * d + c) = b(a, c);
    }
  }
  return m;
}

ComplexMatrix block_gauge(
    const std::vector<std::vector<ComplexMatrix>>& theta_blocks,
    const std::vector<std::vector<ComplexMatrix>>& v_blocks) {
  const std::size_t n = theta_blocks.size();
  if (v_blocks.size() != n) throw DimensionError("block_gauge: sizes");
  std::vector<std::vector<ComplexMatrix>> out = theta_blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (theta_blocks[i].size() != n || v_blocks[i].size() != n)
      throw DimensionError("block_gauge: ragged");
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_unitary(v_blocks[i][j]))
        throw PreconditionError("block_gauge: non-unitary block");
      out[i][j] = v_blocks[i][j] * theta_blocks[i][j];
    }
  }
  return from_blocks(out);
}

DilatedSystem realify(const EvolutionOperator& theta) {
  const std::size_t n = theta.size();
  DilatedSystem sys;
  sys.base_dim = n;
  sys.internal_dim = 2;
  sys.gamma_label = 0;
  sys.internal_pvm = PVM::configuration(2);
  sys.evolution = ComplexMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = theta.theta()(i, j).real();
      const double b = theta.theta()(i, j).imag();
      // a*1 + b*J with J = [[0,-1],[1,0]].
      sys.evolution(2 * i, 2 * j) = a;
      sys.evolution(2 * i, 2 * j + 1) = -b;
      sys.evolution(2 * i + 1, 2 * j) = b;
      sys.evolution(2 * i + 1, 2 * j + 1) = a;
    }
  return sys;
}

StinespringResult stinespring_dilate(const KrausSet& kraus,
                                     std::size_t ancilla_label) {
  const std::size_t n = kraus.dim();
  if (kraus.count() != n)
    throw PreconditionError(
        "stinespring_dilate: need exactly N operators of size N x N");
  if (ancilla_label >= n)
    throw PreconditionError("stinespring_dilate: ancilla label out of range");
  const std::size_t n2 = n * n;
  const std::size_t n3 = n2 * n;

  // Partial isometry: column (j,l) holds K_{b,ij} at row (i,b,m=l). Rows are
  // laid out as i*N^2 + ((b - i) mod N)*N + m; the cyclic shift of b aligns
  // the identity Kraus set with the diagonal so its completion is the exact
  // identity matrix.
  ComplexMatrix isometry(n3, n2);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t col = j * n + l;
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < n; ++i) {
          const cdouble v = kraus[b](i, j);
          if (v == cdouble{0.0, 0.0}) continue;
          const std::size_t row = i * n2 + ((b + n - i) % n) * n + l;
          isometry(row, col) = v;
        }
    }

  const ComplexMatrix completed = complete_isometry(isometry);

  // Scatter: source column (j,l) belongs at position j*N^2 + l; completion
  // columns fill the remaining positions in ascending order.
  ComplexMatrix unitary(n3, n3);
  std::vector<bool> taken(n3, false);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      const std::size_t pos = j * n2 + l;
      unitary.set_column(pos, completed.column(j * n + l));
      taken[pos] = true;
    }
  std::size_t src = n2;
  for (std::size_t pos = 0; pos < n3; ++pos) {
    if (taken[pos]) continue;
    unitary.set_column(pos, completed.column(src++));
  }

  if (!is_unitary(unitary))
    throw std::logic_error("stinespring_dilate: completion not unitary");

  return StinespringResult{n, ancilla_label, std::move(unitary)};
}

}  // namespace sqc
