#include "sqc/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace sqc {

namespace {

void require_self_adjoint(const ComplexMatrix& h, const char* what) {
  if (!h.is_self_adjoint())
    throw PreconditionError(std::string(what) + ": not self-adjoint");
}

ComplexMatrix checked_unitary(ComplexMatrix u, double t) {
  if (!is_unitary(u))
    throw std::logic_error("family evaluation not unitary at t=" +
                           std::to_string(t));
  return u;
}

}  // namespace

UnitaryFamily UnitaryFamily::constant_hamiltonian(ComplexMatrix h,
                                                  double hbar) {
  require_self_adjoint(h, "constant_hamiltonian");
  if (hbar <= 0.0) throw PreconditionError("hbar must be positive");
  UnitaryFamily f;
  f.dim_ = h.rows();
  f.hbar_ = hbar;
  auto hh = std::make_shared<ComplexMatrix>(std::move(h));
  f.eval_ = [hh, hbar](double t) {
    return expm_i_hermitian(*hh, t / hbar);
  };
  return f;
}

UnitaryFamily UnitaryFamily::piecewise_constant(
    std::vector<ComplexMatrix> blocks, std::vector<double> breakpoints,
    double hbar) {
  if (blocks.empty()) throw PreconditionError("piecewise_constant: no blocks");
  if (breakpoints.size() != blocks.size() - 1)
    throw PreconditionError(
        "piecewise_constant: need one breakpoint between consecutive blocks");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw PreconditionError("piecewise_constant: breakpoints not sorted");
  for (double b : breakpoints)
    if (b <= 0.0)
      throw PreconditionError("piecewise_constant: breakpoints must be > 0");
  const std::size_t n = blocks.front().rows();
  for (const auto& h : blocks) {
    require_self_adjoint(h, "piecewise_constant");
    if (h.rows() != n) throw DimensionError("piecewise_constant: block size");
  }
  if (hbar <= 0.0) throw PreconditionError("hbar must be positive");

  UnitaryFamily f;
  f.dim_ = n;
  f.hbar_ = hbar;
  auto bl = std::make_shared<std::vector<ComplexMatrix>>(std::move(blocks));
  auto bp = std::make_shared<std::vector<double>>(std::move(breakpoints));
  f.eval_ = [bl, bp, n, hbar](double t) {
    // Ordered product of exponentials over the segments from 0 to t.
    ComplexMatrix u = ComplexMatrix::identity(n);
    if (t <= 0.0) return expm_i_hermitian((*bl)[0], t / hbar);
    double start = 0.0;
    for (std::size_t k = 0; k < bl->size(); ++k) {
      const double end = (k < bp->size()) ? (*bp)[k] : t;
      const double seg_end = std::min(t, end);
      if (seg_end > start)
        u = expm_i_hermitian((*bl)[k], (seg_end - start) / hbar) * u;
      if (end >= t) break;
      start = end;
    }
    return u;
  };
  return f;
}

UnitaryFamily UnitaryFamily::rotation_2d(double omega, double hbar) {
  if (hbar <= 0.0) throw PreconditionError("hbar must be positive");
  UnitaryFamily f;
  f.dim_ = 2;
  f.hbar_ = hbar;
  f.eval_ = [omega](double t) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    return ComplexMatrix{{c, -s}, {s, c}};
  };
  return f;
}

UnitaryFamily UnitaryFamily::sampled_grid(
    std::vector<std::pair<double, ComplexMatrix>> grid, double hbar) {
  if (grid.empty()) throw PreconditionError("sampled_grid: empty grid");
  if (hbar <= 0.0) throw PreconditionError("hbar must be positive");
  const std::size_t n = grid.front().second.rows();
  bool has_zero = false;
  for (const auto& [t, u] : grid) {
    if (u.rows() != n || u.cols() != n)
      throw DimensionError("sampled_grid: matrix size");
    if (!is_unitary(u))
      throw PreconditionError("sampled_grid: non-unitary entry");
    if (std::abs(t) < 1e-15) {
      has_zero = true;
      if ((u - ComplexMatrix::identity(n)).max_abs() > tol::kProb)
        throw PreconditionError("sampled_grid: U(0) must be the identity");
    }
  }
  if (!has_zero)
    throw PreconditionError("sampled_grid: grid must contain t = 0");

  UnitaryFamily f;
  f.dim_ = n;
  f.hbar_ = hbar;
  auto g = std::make_shared<std::vector<std::pair<double, ComplexMatrix>>>(
      std::move(grid));
  f.eval_ = [g](double t) -> ComplexMatrix {
    for (const auto& [tk, u] : *g)
      if (std::abs(tk - t) < 1e-12) return u;
    throw PreconditionError("sampled_grid: t=" + std::to_string(t) +
                            " not on the grid");
  };
  return f;
}

UnitaryFamily UnitaryFamily::custom(std::size_t dim,
                                    std::function<ComplexMatrix(double)> eval,
                                    double hbar) {
  if (hbar <= 0.0) throw PreconditionError("hbar must be positive");
  UnitaryFamily f;
  f.dim_ = dim;
  f.hbar_ = hbar;
  f.eval_ = std::move(eval);
  if ((f.eval_(0.0) - ComplexMatrix::identity(dim)).max_abs() > tol::kProb)
    throw PreconditionError("custom family: U(0) must be the identity");
  return f;
}

ComplexMatrix UnitaryFamily::evaluate(double t) const {
  return checked_unitary(eval_(t), t);
}

Hamiltonian hamiltonian_from_family(const UnitaryFamily& u, double t,
                                    double dt) {
  if (dt <= 0.0) throw PreconditionError("hamiltonian_from_family: dt <= 0");
  const ComplexMatrix up = u.evaluate(t + dt);
  const ComplexMatrix um = u.evaluate(t - dt);
  const ComplexMatrix dudt = (up - um) * cdouble{1.0 / (2.0 * dt), 0.0};
  ComplexMatrix h = dudt * u.evaluate(t).adjoint() * cdouble{0.0, u.hbar()};
  Hamiltonian out;
  out.hbar = u.hbar();
  out.symmetrization_residual = (h - h.adjoint()).max_abs();
  out.h = (h + h.adjoint()) * cdouble{0.5, 0.0};
  return out;
}

HamiltonianProvider provider_from_family(const UnitaryFamily& u, double dt) {
  return [&u, dt](double t) { return hamiltonian_from_family(u, t, dt); };
}

namespace {

// One RK4 step for y' = f(t, y) on vectors of complex numbers, with the
// state flattened into a ComplexMatrix for uniform handling.
template <typename State, typename Deriv>
State rk4_step(const Deriv& f, double t, double h, const State& y) {
  State k1 = f(t, y);
  State k2 = f(t + h / 2, y + k1 * cdouble{h / 2, 0.0});
  State k3 = f(t + h / 2, y + k2 * cdouble{h / 2, 0.0});
  State k4 = f(t + h, y + k3 * cdouble{h, 0.0});
  return y + (k1 + k2 * cdouble{2, 0} + k3 * cdouble{2, 0} + k4) *
                 cdouble{h / 6.0, 0.0};
}

}  // namespace

StateVector integrate_schrodinger(const HamiltonianProvider& h_of_t,
                                  const StateVector& psi0, double t_final,
                                  std::size_t steps, IntegrationStats* stats) {
  if (steps == 0) throw PreconditionError("integrate_schrodinger: steps = 0");
  const std::size_t n = psi0.size();
  ComplexMatrix y(n, 1);
  for (std::size_t i = 0; i < n; ++i) y(i, 0) = psi0.psi()[i];

  const double h = t_final / static_cast<double>(steps);
  auto f = [&](double t, const ComplexMatrix& psi) {
    const Hamiltonian ham = h_of_t(t);
    return ham.h * psi * cdouble{0.0, -1.0 / ham.hbar};
  };
  double t = 0.0;
  for (std::size_t k = 0; k < steps; ++k, t += h) y = rk4_step(f, t, h, y);

  ComplexVector psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = y(i, 0);
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::logic_error("integrate_schrodinger: norm drifted to " +
                           std::to_string(norm));
  if (stats) stats->norm_drift = std::abs(norm - 1.0);
  return StateVector(psi * cdouble{1.0 / norm, 0.0});
}

DensityMatrix integrate_von_neumann(const HamiltonianProvider& h_of_t,
                                    const DensityMatrix& rho0, double t_final,
                                    std::size_t steps, IntegrationStats* stats) {
  if (steps == 0) throw PreconditionError("integrate_von_neumann: steps = 0");
  ComplexMatrix y = rho0.rho();
  const double h = t_final / static_cast<double>(steps);
  auto f = [&](double t, const ComplexMatrix& rho) {
    const Hamiltonian ham = h_of_t(t);
    return (ham.h * rho - rho * ham.h) * cdouble{0.0, -1.0 / ham.hbar};
  };
  double t = 0.0;
  for (std::size_t k = 0; k < steps; ++k, t += h) y = rk4_step(f, t, h, y);

  const double drift = std::abs(y.trace() - cdouble{1.0, 0.0});
  if (drift > 1e-8)
    throw std::logic_error("integrate_von_neumann: trace drifted by " +
                           std::to_string(drift));
  if (stats) stats->norm_drift = drift;
  y = (y + y.adjoint()) * cdouble{0.5, 0.0};
  y = y * (cdouble{1.0, 0.0} / y.trace());
  return DensityMatrix(std::move(y), 1e-10);
}

double ehrenfest_check(const ComplexMatrix& a, const UnitaryFamily& u,
                       const ProbabilityVector& p0, double t, double dt) {
  require_self_adjoint(a, "ehrenfest_check");
  auto expectation_at = [&](double s) {
    EvolutionOperator theta(u.evaluate(s), tol::kProb * u.dim());
    return expectation_qm(a, density_matrix(theta, p0));
  };
  const double deriv =
      (expectation_at(t + dt) - expectation_at(t - dt)) / (2.0 * dt);

  const Hamiltonian ham = hamiltonian_from_family(u, t);
  EvolutionOperator theta(u.evaluate(t), tol::kProb * u.dim());
  const ComplexMatrix rho = density_matrix(theta, p0).rho();
  const cdouble comm_term =
      ((ham.h * a - a * ham.h) * rho).trace() * cdouble{0.0, 1.0 / ham.hbar};
  return std::abs(deriv - comm_term.real()) + std::abs(comm_term.imag());
}

double heisenberg_eom_check(const ComplexMatrix& a, const UnitaryFamily& u,
                            double t, double dt) {
  require_self_adjoint(a, "heisenberg_eom_check");
  auto heis_at = [&](double s) {
    EvolutionOperator theta(u.evaluate(s), tol::kProb * u.dim());
    return to_heisenberg(a, theta);
  };
  const ComplexMatrix deriv =
      (heis_at(t + dt) - heis_at(t - dt)) * cdouble{1.0 / (2.0 * dt), 0.0};

  const Hamiltonian ham = hamiltonian_from_family(u, t);
  EvolutionOperator theta(u.evaluate(t), tol::kProb * u.dim());
  const ComplexMatrix h_heis = to_heisenberg(ham.h, theta);
  const ComplexMatrix a_heis = heis_at(t);
  const ComplexMatrix comm = (h_heis * a_heis - a_heis * h_heis) *
                             cdouble{0.0, 1.0 / ham.hbar};
  return (deriv - comm).max_abs();
}

ComplexMatrix gauge_transform_hamiltonian(
    const Hamiltonian& h, const std::function<ComplexMatrix(double)>& v_of_t,
    double t, double dt) {
  const ComplexMatrix v = v_of_t(t);
  const ComplexMatrix dvdag =
      (v_of_t(t + dt).adjoint() - v_of_t(t - dt).adjoint()) *
      cdouble{1.0 / (2.0 * dt), 0.0};
  return v * h.h * v.adjoint() + v * dvdag * cdouble{0.0, -h.hbar};
}

SymmetryKind classify_symmetry(const ComplexMatrix& v, const UnitaryFamily& u,
                               const std::vector<double>& times,
                               double tolerance) {
  if (!is_unitary(v))
    throw PreconditionError("classify_symmetry: V not unitary");
  bool all_equal = true, all_conj = true, all_moduli = true;
  for (double t : times) {
    const ComplexMatrix ut = u.evaluate(t);
    const ComplexMatrix conj_ut = v * ut * v.adjoint();
    if ((conj_ut - ut).max_abs() > tolerance) all_equal = false;
    if ((conj_ut - ut.conjugate()).max_abs() > tolerance) all_conj = false;
    for (std::size_t i = 0; i < ut.rows() && all_moduli; ++i)
      for (std::size_t j = 0; j < ut.cols(); ++j)
        if (std::abs(std::norm(conj_ut(i, j)) - std::norm(ut(i, j))) >
            tolerance) {
          all_moduli = false;
          break;
        }
    if (!all_moduli) break;
  }
  if (all_equal) return SymmetryKind::Unitary;
  if (all_conj) return SymmetryKind::AntiUnitary;
  if (all_moduli) return SymmetryKind::Phase;
  return SymmetryKind::None;
}

double noether_check(const ComplexMatrix& g, const UnitaryFamily& u,
                     const DensityMatrix& rho0,
                     const std::vector<double>& times) {
  require_self_adjoint(g, "noether_check");
  const double base = (g * rho0.rho()).trace().real();
  double max_dev = 0.0;
  for (double t : times) {
    const ComplexMatrix ut = u.evaluate(t);
    const double val = (g * ut * rho0.rho() * ut.adjoint()).trace().real();
    max_dev = std::max(max_dev, std::abs(val - base));
  }
  return max_dev;
}

}  // namespace sqc
