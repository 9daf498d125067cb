#include "sqc/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sqc/rng.hpp"

namespace sqc {

namespace {

void check_column_stochastic(const std::vector<double>& entries, std::size_t n,
                             double tolerance) {
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = entries[i * n + j];
      if (!std::isfinite(v))
        throw PreconditionError("StochasticMatrix: non-finite entry");
      if (v < -tolerance)
        throw PreconditionError("StochasticMatrix: negative entry in column " +
                                std::to_string(j + 1));
      sum += v;
    }
    if (std::abs(sum - 1.0) > tolerance)
      throw PreconditionError("StochasticMatrix: column " +
                              std::to_string(j + 1) + " sums to " +
                              std::to_string(sum));
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

StochasticMatrix::StochasticMatrix(std::vector<std::vector<double>> entries,
                                   double tolerance) {
  n_ = entries.size();
  if (n_ == 0) throw DimensionError("StochasticMatrix: empty");
  entries_.reserve(n_ * n_);
  for (const auto& row : entries) {
    if (row.size() != n_)
      throw DimensionError("StochasticMatrix: non-square input");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_column_stochastic(entries_, n_, tolerance);
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  StochasticMatrix m;
  m.n_ = n;
  m.entries_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1.0;
  return m;
}

StochasticMatrix StochasticMatrix::from_real_parts(const ComplexMatrix& m,
                                                   double tolerance) {
  if (!m.square()) throw DimensionError("from_real_parts: non-square");
  StochasticMatrix out;
  out.n_ = m.rows();
  out.entries_.resize(out.n_ * out.n_);
  for (std::size_t i = 0; i < out.n_; ++i)
    for (std::size_t j = 0; j < out.n_; ++j) {
      const cdouble z = m(i, j);
      if (std::abs(z.imag()) > tolerance)
        throw PreconditionError("from_real_parts: non-real entry");
      out.entries_[i * out.n_ + j] = z.real();
    }
  check_column_stochastic(out.entries_, out.n_, tolerance);
  return out;
}

StochasticMatrix StochasticMatrix::operator*(
    const StochasticMatrix& other) const {
  if (n_ != other.n_) throw DimensionError("StochasticMatrix product");
  StochasticMatrix out;
  out.n_ = n_;
  out.entries_.assign(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const double a = entries_[i * n_ + k];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        out.entries_[i * n_ + j] += a * other.entries_[k * n_ + j];
    }
  // Closure: the product of column-stochastic matrices is column-stochastic,
  // so this only guards against accumulated rounding.
  check_column_stochastic(out.entries_, n_, tol::kProb * n_);
  return out;
}

ComplexMatrix StochasticMatrix::as_complex() const {
  ComplexMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) m.data()[i] = entries_[i];
  return m;
}

bool StochasticMatrix::is_permutation(double tolerance) const {
  for (std::size_t i = 0; i < n_ * n_; ++i) {
    const double v = entries_[i];
    if (std::abs(v) > tolerance && std::abs(v - 1.0) > tolerance) return false;
  }
  // Columns already sum to 1; require rows to as well.
  return is_doubly_stochastic(tolerance);
}

bool StochasticMatrix::is_doubly_stochastic(double tolerance) const {
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_; ++j) sum += entries_[i * n_ + j];
    if (std::abs(sum - 1.0) > tolerance) return false;
  }
  return true;
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries,
                                     double tolerance)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("ProbabilityVector: empty");
  double sum = 0.0;
  for (double v : entries_) {
    if (!std::isfinite(v))
      throw PreconditionError("ProbabilityVector: non-finite entry");
    if (v < -tolerance)
      throw PreconditionError("ProbabilityVector: negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance)
    throw PreconditionError("ProbabilityVector: sums to " +
                            std::to_string(sum));
}

ProbabilityVector ProbabilityVector::point_mass(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("point_mass: index out of range");
  std::vector<double> v(n, 0.0);
  v[i] = 1.0;
  return ProbabilityVector(std::move(v));
}

RandomVariable::RandomVariable(std::vector<double> magnitudes)
    : magnitudes_(std::move(magnitudes)) {
  if (magnitudes_.empty()) throw DimensionError("RandomVariable: empty");
  for (double v : magnitudes_)
    if (!std::isfinite(v))
      throw PreconditionError("RandomVariable: non-finite magnitude");
}

ComplexMatrix RandomVariable::as_matrix() const {
  ComplexMatrix m(size(), size());
  for (std::size_t i = 0; i < size(); ++i) m(i, i) = magnitudes_[i];
  return m;
}

ProbabilityVector propagate(const StochasticMatrix& gamma,
                            const ProbabilityVector& p0) {
  if (gamma.size() != p0.size()) throw DimensionError("propagate: dimension");
  const std::size_t n = gamma.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += gamma(i, j) * p0[j];
  return ProbabilityVector(std::move(out), tol::kProb * n);
}

double expectation(const RandomVariable& a, const ProbabilityVector& p) {
  if (a.size() != p.size()) throw DimensionError("expectation: dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * p[i];
  return s;
}

DivisibilityResult check_divisible_at(const StochasticMatrix& gamma_t,
                                      const StochasticMatrix& gamma_tp,
                                      double tolerance) {
  if (gamma_t.size() != gamma_tp.size())
    throw DimensionError("check_divisible_at: dimension");
  DivisibilityResult res;
  ComplexMatrix inv = inverse(gamma_tp.as_complex(), &res.condition);
  res.candidate = gamma_t.as_complex() * inv;

  const std::size_t n = gamma_t.size();
  res.divisible = true;
  for (std::size_t j = 0; j < n && res.divisible; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble z = res.candidate(i, j);
      if (std::abs(z.imag()) > tolerance || z.real() < -tolerance)
        res.divisible = false;
      sum += z.real();
    }
    if (std::abs(sum - 1.0) > tolerance) res.divisible = false;
  }
  return res;
}

bool stochastic_inverse_is_permutation(const StochasticMatrix& gamma,
                                       double tolerance) {
  DivisibilityResult res = check_divisible_at(
      StochasticMatrix::identity(gamma.size()), gamma, tolerance);
  // res.divisible is exactly the statement that Γ⁻¹ is column-stochastic.
  if (res.divisible && !gamma.is_permutation(std::sqrt(tolerance)))
    throw std::logic_error(
        "stochastic matrix with stochastic inverse is not a permutation; "
        "this contradicts a theorem and indicates a numerical bug");
  return res.divisible;
}

std::vector<std::uint64_t> sample_marginal(const StochasticMatrix& gamma,
                                           std::size_t j0, std::uint64_t draws,
                                           std::uint64_t seed) {
  const std::size_t n = gamma.size();
  if (j0 >= n) throw DimensionError("sample_marginal: index out of range");
  if (draws == 0) throw PreconditionError("sample_marginal: zero draws");

  // Cumulative distribution of column j0.
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += gamma(i, j0);
    cdf[i] = acc;
  }
  cdf[n - 1] = 1.0;  // absorb rounding so every u lands somewhere

  Rng rng(seed);
  std::vector<std::uint64_t> counts(n, 0);
  for (std::uint64_t d = 0; d < draws; ++d) {
    const double u = rng.next_double();
    const std::size_t i =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    ++counts[std::min(i, n - 1)];
  }
  return counts;
}

std::string probabilities_to_csv(const ProbabilityVector& p) {
  std::ostringstream out;
  out << "index,value\n";
  for (std::size_t i = 0; i < p.size(); ++i)
    out << (i + 1) << ',' << format_double(p[i]) << '\n';
  return out.str();
}

std::string histogram_to_csv(const std::vector<std::uint64_t>& counts) {
  std::ostringstream out;
  out << "index,value\n";
  for (std::size_t i = 0; i < counts.size(); ++i)
    out << (i + 1) << ',' << counts[i] << '\n';
  return out.str();
}

}  // namespace sqc
