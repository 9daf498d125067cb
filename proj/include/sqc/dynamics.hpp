#pragma once

// Unitary time-evolution families U(t) with U(0) = identity, their
// self-adjoint generators, the standard dynamical equations (Schrödinger,
// von Neumann, Heisenberg, Ehrenfest) as numerical checks, symmetry
// classification, and conservation-law probes.

#include <functional>
#include <memory>
#include <vector>

#include "sqc/correspondence.hpp"

namespace sqc {

struct Hamiltonian {
  ComplexMatrix h;
  double hbar = 1.0;
  double symmetrization_residual = 0.0;  // ‖H − H†‖_max before symmetrizing
};

class UnitaryFamily {
 public:
  // U(t) = exp(-i H t / hbar).
  static UnitaryFamily constant_hamiltonian(ComplexMatrix h, double hbar = 1.0);

  // Piecewise-constant generator: block k applies on [breakpoints[k-1],
  // breakpoints[k]) with breakpoints[-1] = 0; the last block extends to
  // infinity. Negative times use the first block.
  static UnitaryFamily piecewise_constant(std::vector<ComplexMatrix> blocks,
                                          std::vector<double> breakpoints,
                                          double hbar = 1.0);

  // Planar rotation [[cos wt, -sin wt], [sin wt, cos wt]].
  static UnitaryFamily rotation_2d(double omega, double hbar = 1.0);

  // Interpolation-free grid: evaluation only at the listed times, which must
  // include t = 0 with U = identity.
  static UnitaryFamily sampled_grid(std::vector<std::pair<double, ComplexMatrix>> grid,
                                    double hbar = 1.0);

  // Arbitrary evaluator; used by composite constructions that splice
  // interactions into a product-space family. U(0) = identity is checked at
  // construction, unitarity at every evaluation.
  static UnitaryFamily custom(std::size_t dim,
                              std::function<ComplexMatrix(double)> eval,
                              double hbar = 1.0);

  std::size_t dim() const { return dim_; }
  double hbar() const { return hbar_; }

  // Unitary within 1e-10 at every evaluable t; throws for t outside a
  // sampled grid's support.
  ComplexMatrix evaluate(double t) const;

 private:
  UnitaryFamily() = default;
  std::size_t dim_ = 0;
  double hbar_ = 1.0;
  std::function<ComplexMatrix(double)> eval_;
};

// H(t) = i hbar (dU/dt) U†(t) by central differences, then symmetrized.
Hamiltonian hamiltonian_from_family(const UnitaryFamily& u, double t,
                                    double dt = 1e-5);

using HamiltonianProvider = std::function<Hamiltonian(double)>;

HamiltonianProvider provider_from_family(const UnitaryFamily& u,
                                         double dt = 1e-5);

struct IntegrationStats {
  double norm_drift = 0.0;  // |norm - 1| (or |trace - 1|) before repair
};

// Fixed-step 4th-order Runge-Kutta for i hbar dPsi/dt = H(t) Psi.
StateVector integrate_schrodinger(const HamiltonianProvider& h_of_t,
                                  const StateVector& psi0, double t_final,
                                  std::size_t steps,
                                  IntegrationStats* stats = nullptr);

// RK4 for i hbar drho/dt = [H(t), rho]; re-symmetrized at the end.
DensityMatrix integrate_von_neumann(const HamiltonianProvider& h_of_t,
                                    const DensityMatrix& rho0, double t_final,
                                    std::size_t steps,
                                    IntegrationStats* stats = nullptr);

// |finite-difference d<A>/dt - (i/hbar) tr([H,A] rho(t))| for a
// time-independent observable A.
double ehrenfest_check(const ComplexMatrix& a, const UnitaryFamily& u,
                       const ProbabilityVector& p0, double t, double dt);

// Matrix-norm residual of d(A^H)/dt against (i/hbar)[H^H, A^H].
double heisenberg_eom_check(const ComplexMatrix& a, const UnitaryFamily& u,
                            double t, double dt);

// H ↦ V H V† - i hbar V (dV†/dt), evaluated with central differences on the
// provided V family. With V(t) = U†(t) the result vanishes.
ComplexMatrix gauge_transform_hamiltonian(
    const Hamiltonian& h, const std::function<ComplexMatrix(double)>& v_of_t,
    double t, double dt);

enum class SymmetryKind { Unitary, AntiUnitary, Phase, None };

// Checks VU(t)V† against U(t) at each sampled time: equal entries give a
// unitary symmetry, conjugated entries an anti-unitary one, equal moduli
// only a phase symmetry.
SymmetryKind classify_symmetry(const ComplexMatrix& v, const UnitaryFamily& u,
                               const std::vector<double>& times,
                               double tolerance = tol::kStructural);

// max over times of |<G(t)> - <G(0)>| with <G(t)> = tr(G U rho0 U†).
double noether_check(const ComplexMatrix& g, const UnitaryFamily& u,
                     const DensityMatrix& rho0,
                     const std::vector<double>& times);

}  // namespace sqc
