#include "sqc/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace sqc {

namespace {

using EMatrix =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMatrix> as_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EMatrix>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                   static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EMatrix& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()),
                    static_cast<std::size_t>(e.cols()));
  Eigen::Map<EMatrix>(out.data(), e.rows(), e.cols()) = e;
  return out;
}

void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y,
                        const char* op) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError(std::string(op) + ": shape mismatch");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0)
    throw DimensionError("ComplexMatrix: zero dimension");
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<cdouble>> rows) {
  rows_ = rows.size();
  if (rows_ == 0) throw DimensionError("ComplexMatrix: empty initializer");
  cols_ = rows.begin()->size();
  if (cols_ == 0) throw DimensionError("ComplexMatrix: empty row");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw DimensionError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cdouble>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector& v,
                                   const ComplexVector& w) {
  ComplexMatrix m(v.dim(), w.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j)
      m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  require_same_shape(*this, other, "operator+");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = data_[i] + other.data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  require_same_shape(*this, other, "operator-");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = data_[i] - other.data_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("operator*: inner dimension");
  ComplexMatrix out(rows_, other.cols_);
  kernels::matmul(data(), other.data(), out.data(), rows_, cols_, other.cols_);
  return out;
}

ComplexMatrix ComplexMatrix::operator*(cdouble scalar) const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = data_[i] * scalar;
  return out;
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& v) const {
  if (cols_ != v.dim()) throw DimensionError("matrix-vector: dimension");
  ComplexVector out(rows_);
  kernels::matmul(data(), v.data(), out.data(), rows_, cols_, 1);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = std::conj(data_[i]);
  return out;
}

cdouble ComplexMatrix::trace() const {
  if (!square()) throw DimensionError("trace: non-square matrix");
  cdouble t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  if (j >= cols_) throw DimensionError("column: index out of range");
  ComplexVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_column(std::size_t j, const ComplexVector& v) {
  if (j >= cols_ || v.dim() != rows_)
    throw DimensionError("set_column: dimension");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool ComplexMatrix::is_self_adjoint(double tolerance) const {
  if (!square()) return false;
  return ((*this) - adjoint()).max_abs() <= tolerance;
}

ComplexVector ComplexVector::basis(std::size_t dim, std::size_t i) {
  if (i >= dim) throw DimensionError("basis: index out of range");
  ComplexVector v(dim);
  v[i] = 1.0;
  return v;
}

ComplexVector ComplexVector::operator+(const ComplexVector& other) const {
  if (dim() != other.dim()) throw DimensionError("vector+: dimension");
  ComplexVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = data_[i] + other.data_[i];
  return out;
}

ComplexVector ComplexVector::operator-(const ComplexVector& other) const {
  if (dim() != other.dim()) throw DimensionError("vector-: dimension");
  ComplexVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = data_[i] - other.data_[i];
  return out;
}

ComplexVector ComplexVector::operator*(cdouble scalar) const {
  ComplexVector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = data_[i] * scalar;
  return out;
}

cdouble ComplexVector::dot(const ComplexVector& other) const {
  if (dim() != other.dim()) throw DimensionError("dot: dimension");
  return kernels::dotc(data(), other.data(), dim());
}

double ComplexVector::norm() const {
  return std::sqrt(std::abs(dot(*this)));
}

bool ComplexVector::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

PVM PVM::configuration(std::size_t n) {
  PVM pvm;
  pvm.dim = n;
  pvm.projectors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix p(n, n);
    p(i, i) = 1.0;
    pvm.projectors.push_back(std::move(p));
  }
  return pvm;
}

void PVM::validate(double tolerance) const {
  ComplexMatrix sum = ComplexMatrix::zero(dim, dim);
  for (std::size_t a = 0; a < projectors.size(); ++a) {
    const ComplexMatrix& p = projectors[a];
    if (p.rows() != dim || p.cols() != dim)
      throw PreconditionError("PVM: projector dimension mismatch");
    if (!p.is_self_adjoint(tolerance))
      throw PreconditionError("PVM: projector not self-adjoint");
    for (std::size_t b = 0; b < projectors.size(); ++b) {
      ComplexMatrix prod = p * projectors[b];
      ComplexMatrix expected =
          (a == b) ? p : ComplexMatrix::zero(dim, dim);
      if ((prod - expected).max_abs() > tolerance)
        throw PreconditionError("PVM: mutual exclusivity violated");
    }
    sum = sum + p;
  }
  if ((sum - ComplexMatrix::identity(dim)).max_abs() > tolerance)
    throw PreconditionError("PVM: completeness violated");
}

ComplexMatrix schur_hadamard(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_shape(x, y, "schur_hadamard");
  ComplexMatrix out(x.rows(), x.cols());
  kernels::hadamard(x.data(), y.data(), out.data(), x.rows() * x.cols());
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const cdouble xij = x(i, j);
      for (std::size_t k = 0; k < y.rows(); ++k)
        for (std::size_t l = 0; l < y.cols(); ++l)
          out(i * y.rows() + k, j * y.cols() + l) = xij * y(k, l);
    }
  return out;
}

ComplexVector tensor(const ComplexVector& x, const ComplexVector& y) {
  ComplexVector out(x.dim() * y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t k = 0; k < y.dim(); ++k)
      out[i * y.dim() + k] = x[i] * y[k];
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m,
                            std::pair<std::size_t, std::size_t> dims,
                            Keep keep) {
  const std::size_t d1 = dims.first, d2 = dims.second;
  if (!m.square() || m.rows() != d1 * d2)
    throw DimensionError("partial_trace: side mismatch");
  if (keep == Keep::First) {
    ComplexMatrix out(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j) {
        cdouble s{0.0, 0.0};
        for (std::size_t e = 0; e < d2; ++e)
          s += m(i * d2 + e, j * d2 + e);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(d2, d2);
  for (std::size_t e = 0; e < d2; ++e)
    for (std::size_t f = 0; f < d2; ++f) {
      cdouble s{0.0, 0.0};
      for (std::size_t i = 0; i < d1; ++i)
        s += m(i * d2 + e, i * d2 + f);
      out(e, f) = s;
    }
  return out;
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
  if (!m.square()) return false;
  ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::identity(m.rows())).max_abs() <= tolerance;
}

ComplexMatrix complete_isometry(const ComplexMatrix& v) {
  const std::size_t m = v.rows(), n = v.cols();
  if (n > m) throw PreconditionError("complete_isometry: more columns than rows");
  ComplexMatrix gram = v.adjoint() * v;
  if ((gram - ComplexMatrix::identity(n)).max_abs() > tol::kStructural)
    throw PreconditionError("complete_isometry: columns not orthonormal");

  std::vector<ComplexVector> basis;
  basis.reserve(m);
  for (std::size_t j = 0; j < n; ++j) basis.push_back(v.column(j));

  for (std::size_t c = 0; c < m && basis.size() < m; ++c) {
    ComplexVector cand = ComplexVector::basis(m, c);
    for (const auto& b : basis) {
      const cdouble overlap = b.dot(cand);
      for (std::size_t i = 0; i < m; ++i) cand[i] -= overlap * b[i];
    }
    const double r = cand.norm();
    if (r > tol::kGramSchmidt) {
      basis.push_back(cand * (1.0 / r));
    }
  }
  if (basis.size() != m)
    throw PreconditionError("complete_isometry: completion failed");

  ComplexMatrix out(m, m);
  for (std::size_t j = 0; j < m; ++j) out.set_column(j, basis[j]);
  return out;
}

EigenSystem eigh(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionError("eigh: non-square matrix");
  Eigen::SelfAdjointEigenSolver<EMatrix> solver(as_eigen(m));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed");
  EigenSystem sys;
  sys.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + m.rows());
  sys.vectors = from_eigen(solver.eigenvectors());
  return sys;
}

ComplexMatrix inverse(const ComplexMatrix& m, double* condition) {
  if (!m.square()) throw DimensionError("inverse: non-square matrix");
  EMatrix e = as_eigen(m);
  Eigen::JacobiSVD<EMatrix> svd(e);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double cond = (smin > 0.0) ? smax / smin
                                   : std::numeric_limits<double>::infinity();
  if (condition) *condition = cond;
  if (smin <= 1e-12 * std::max(1.0, smax))
    throw SingularMatrixError("inverse: matrix is singular (condition " +
                              std::to_string(cond) + ")");
  return from_eigen(e.inverse());
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& h, double s) {
  EigenSystem sys = eigh(h);
  const std::size_t n = h.rows();
  ComplexMatrix phases(n, n);
  for (std::size_t k = 0; k < n; ++k)
    phases(k, k) = std::exp(cdouble(0.0, -sys.values[k] * s));
  return sys.vectors * phases * sys.vectors.adjoint();
}

}  // namespace sqc
