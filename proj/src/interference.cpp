#include "sqc/interference.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sqc {

ComplexMatrix relative_evolution(const UnitaryFamily& u, double t,
                                 double t_prime) {
  ComplexMatrix rel = u.evaluate(t) * u.evaluate(t_prime).adjoint();
  if (!is_unitary(rel))
    throw std::logic_error("relative evolution not unitary");
  return rel;
}

InterferenceReport interference_report(const UnitaryFamily& u, std::size_t j0,
                                       double t, double t_prime) {
  const std::size_t n = u.dim();
  if (j0 >= n)
    throw DimensionError("interference_report: configuration out of range");

  const ComplexMatrix ut = u.evaluate(t);
  const ComplexMatrix utp = u.evaluate(t_prime);
  const ComplexMatrix rel = relative_evolution(u, t, t_prime);

  auto moduli = [n](const ComplexMatrix& m) {
    return StochasticMatrix::from_real_parts(
        schur_hadamard(m.conjugate(), m), tol::kProb * n);
  };
  StochasticMatrix gamma_actual = moduli(ut);
  StochasticMatrix gamma_divided = moduli(rel) * moduli(utp);

  ComplexMatrix discrepancy(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      discrepancy(i, j) = gamma_actual(i, j) - gamma_divided(i, j);

  // Independent route for column j0: the cross-term sum over k != l with
  // Psi(t') = U(t') e_{j0}.
  const ComplexVector psi_tp = utp.column(j0);
  for (std::size_t i = 0; i < n; ++i) {
    cdouble cross{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        if (k == l) continue;
        cross += std::conj(rel(i, k) * psi_tp[k]) * rel(i, l) * psi_tp[l];
      }
    if (std::abs(cross - discrepancy(i, j0)) > tol::kProb)
      throw std::logic_error(
          "interference discrepancy routes disagree at row " +
          std::to_string(i + 1));
  }

  InterferenceReport rep{t,
                         t_prime,
                         std::move(gamma_actual),
                         std::move(gamma_divided),
                         std::move(discrepancy),
                         0.0};
  rep.max_abs_discrepancy = rep.discrepancy.max_abs();
  return rep;
}

std::vector<ProfilePoint> divisibility_profile(
    const UnitaryFamily& u, std::size_t j0, double t,
    const std::vector<double>& t_prime_grid) {
  std::vector<ProfilePoint> out;
  out.reserve(t_prime_grid.size());
  for (double tp : t_prime_grid)
    out.push_back({tp, interference_report(u, j0, t, tp).max_abs_discrepancy});
  return out;
}

std::string profile_to_csv(const std::vector<ProfilePoint>& profile) {
  std::ostringstream out;
  out << "t_prime,max_abs_discrepancy\n";
  char buf[96];
  for (const auto& p : profile) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.t_prime,
                  p.max_abs_discrepancy);
    out << buf;
  }
  return out.str();
}

}  // namespace sqc
