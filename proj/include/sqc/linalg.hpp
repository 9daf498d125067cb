#pragma once

// Dense complex matrices, vectors, and projection-valued measures, plus the
// handful of structural operations (Schur-Hadamard product, tensor product,
// partial trace, isometry completion) everything else is built on.
//
// All values are immutable in spirit: operations return new objects and never
// mutate their arguments, so instances are safe to share across threads.

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqc/kernels.hpp"

namespace sqc {

using cdouble = std::complex<double>;

namespace tol {
// Default tolerance for structural checks (unitarity, PVM axioms).
inline constexpr double kStructural = 1e-10;
// Probability validation (simplex membership, column sums).
inline constexpr double kProb = 1e-12;
// Residual-norm threshold for accepting a Gram-Schmidt completion candidate.
inline constexpr double kGramSchmidt = 1e-8;
}  // namespace tol

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ComplexVector;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<cdouble>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(const std::vector<cdouble>& d);
  // Outer product v w^dagger.
  static ComplexMatrix outer(const ComplexVector& v, const ComplexVector& w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  cdouble operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const cdouble* data() const { return data_.data(); }
  cdouble* data() { return data_.data(); }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexMatrix operator*(cdouble scalar) const;
  ComplexVector operator*(const ComplexVector& v) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cdouble trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexVector column(std::size_t j) const;
  void set_column(std::size_t j, const ComplexVector& v);

  bool is_self_adjoint(double tolerance = tol::kStructural) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : data_(dim) {}
  ComplexVector(std::initializer_list<cdouble> entries) : data_(entries) {}

  static ComplexVector basis(std::size_t dim, std::size_t i);

  std::size_t dim() const { return data_.size(); }
  cdouble& operator[](std::size_t i) { return data_[i]; }
  cdouble operator[](std::size_t i) const { return data_[i]; }
  const cdouble* data() const { return data_.data(); }
  cdouble* data() { return data_.data(); }

  ComplexVector operator+(const ComplexVector& other) const;
  ComplexVector operator-(const ComplexVector& other) const;
  ComplexVector operator*(cdouble scalar) const;

  // conj(this) . other
  cdouble dot(const ComplexVector& other) const;
  double norm() const;
  bool all_finite() const;

 private:
  std::vector<cdouble> data_;
};

// Complete, mutually exclusive family of orthogonal projectors.
struct PVM {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> projectors;

  // The configuration PVM: P_i = e_i e_i^dagger.
  static PVM configuration(std::size_t n);
  // Throws PreconditionError if any axiom fails beyond `tolerance`.
  void validate(double tolerance = tol::kStructural) const;
};

ComplexMatrix schur_hadamard(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix tensor(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexVector tensor(const ComplexVector& x, const ComplexVector& y);

enum class Keep { First, Second };
// Trace out one factor of a (dims.first * dims.second)-dimensional square
// matrix. Pair index convention: (i, e) -> i * dims.second + e.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::pair<std::size_t, std::size_t> dims,
                            Keep keep);

bool is_unitary(const ComplexMatrix& m, double tolerance = tol::kStructural);

// Extends an m x n matrix with orthonormal columns (m >= n) to an m x m
// unitary. The first n columns are kept; the rest come from scanning the
// canonical basis in index order with modified Gram-Schmidt, keeping any
// candidate whose residual norm exceeds tol::kGramSchmidt.
ComplexMatrix complete_isometry(const ComplexMatrix& v);

// Self-adjoint eigensystem (ascending eigenvalues, orthonormal columns).
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;  // column k is the eigenvector of values[k]
};
EigenSystem eigh(const ComplexMatrix& m);

// General inverse via LU; throws SingularMatrixError when rank-deficient.
// An estimate of the condition number is written to *condition if non-null.
ComplexMatrix inverse(const ComplexMatrix& m, double* condition = nullptr);

// Matrix exponential of -i * H * s for self-adjoint H (spectral form).
ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double s);

// Fixture text format: first line "rows cols", then row-major entries as
// "re+imj" tokens at 17 significant digits.
std::string format_complex(cdouble z);
cdouble parse_complex(const std::string& token);
std::string matrix_to_text(const ComplexMatrix& m);
ComplexMatrix matrix_from_text(const std::string& text);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace sqc
