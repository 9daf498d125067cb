#include <doctest.h>

#include <cmath>

#include "sqc/dynamics.hpp"
#include "sqc/sampling.hpp"

using namespace sqc;

namespace {
const double kPi = std::acos(-1.0);

ComplexMatrix rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return ComplexMatrix{{c, -s}, {s, c}};
}

ComplexMatrix rotation_generator(double omega, double hbar) {
  // i hbar (dU/dt) U† for the planar rotation.
  return ComplexMatrix{{0.0, cdouble{0, -hbar * omega}},
                       {cdouble{0, hbar * omega}, 0.0}};
}
}  // namespace

TEST_CASE("families evaluate to the expected unitaries") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  CHECK((rot.evaluate(0.0) - ComplexMatrix::identity(2)).max_abs() == 0.0);
  CHECK((rot.evaluate(kPi / 2) - rotation(kPi / 2)).max_abs() < 1e-15);

  UnitaryFamily diag =
      UnitaryFamily::constant_hamiltonian(ComplexMatrix::diagonal({1.0, -1.0}));
  CHECK((diag.evaluate(kPi) + ComplexMatrix::identity(2)).max_abs() < 1e-14);

  // Piecewise-constant generators compose as ordered exponentials.
  ComplexMatrix h1 = rotation_generator(1.0, 1.0);
  ComplexMatrix h2 = ComplexMatrix::diagonal({1.0, -1.0});
  UnitaryFamily pw = UnitaryFamily::piecewise_constant({h1, h2}, {1.0});
  ComplexMatrix expect = expm_i_hermitian(h2, 0.5) * expm_i_hermitian(h1, 1.0);
  CHECK((pw.evaluate(1.5) - expect).max_abs() < 1e-13);
  CHECK((pw.evaluate(0.5) - rotation(0.5)).max_abs() < 1e-13);
}

TEST_CASE("sampled grids only answer at their own times") {
  std::vector<std::pair<double, ComplexMatrix>> grid{
      {0.0, ComplexMatrix::identity(2)},
      {0.5, rotation(0.5)},
      {1.0, rotation(1.0)}};
  UnitaryFamily g = UnitaryFamily::sampled_grid(grid);
  CHECK((g.evaluate(0.5) - rotation(0.5)).max_abs() == 0.0);
  CHECK_THROWS_AS(g.evaluate(0.25), PreconditionError);

  // A grid without t = 0 is rejected.
  CHECK_THROWS_AS(
      UnitaryFamily::sampled_grid({{0.5, rotation(0.5)}}), PreconditionError);
  // Non-unitary samples are rejected outright.
  CHECK_THROWS_AS(
      UnitaryFamily::sampled_grid({{0.0, ComplexMatrix::identity(2)},
                                   {1.0, ComplexMatrix::diagonal({2.0, 1.0})}}),
      PreconditionError);
}

TEST_CASE("generator extraction matches closed forms") {
  const double omega = 0.7, hbar = 2.0;
  UnitaryFamily rot = UnitaryFamily::rotation_2d(omega, hbar);
  Hamiltonian h = hamiltonian_from_family(rot, 0.3);
  CHECK((h.h - rotation_generator(omega, hbar)).max_abs() < 1e-8);
  CHECK(h.h.is_self_adjoint());
  CHECK(h.symmetrization_residual < 1e-8);

  // A constant generator is recovered at any time.
  Rng rng(101);
  ComplexMatrix h0 = random_self_adjoint(3, rng);
  UnitaryFamily fam = UnitaryFamily::constant_hamiltonian(h0);
  for (double t : {0.0, 0.4, 1.7})
    CHECK((hamiltonian_from_family(fam, t).h - h0).max_abs() < 1e-7);
}

TEST_CASE("state integration follows the closed-form rotation") {
  const double omega = 1.0, t_final = kPi / 3;
  UnitaryFamily rot = UnitaryFamily::rotation_2d(omega);
  HamiltonianProvider h = provider_from_family(rot);

  IntegrationStats stats;
  StateVector psi = integrate_schrodinger(
      h, StateVector::basis(2, 0), t_final, 2000, &stats);
  ComplexVector expect = rot.evaluate(t_final).column(0);
  CHECK((psi.psi() - expect).norm() < 1e-8);
  CHECK(stats.norm_drift < 1e-10);
}

TEST_CASE("density integration follows the closed-form rotation") {
  const double t_final = 0.9;
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  HamiltonianProvider h = provider_from_family(rot);

  DensityMatrix rho0{ComplexMatrix::diagonal({0.75, 0.25})};
  DensityMatrix rho = integrate_von_neumann(h, rho0, t_final, 2000);
  ComplexMatrix u = rot.evaluate(t_final);
  CHECK((rho.rho() - u * rho0.rho() * u.adjoint()).max_abs() < 1e-8);
}

TEST_CASE("Ehrenfest and Heisenberg residuals are numerically small") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  ComplexMatrix a = ComplexMatrix::diagonal({1.0, -1.0});
  CHECK(ehrenfest_check(a, rot, ProbabilityVector({0.8, 0.2}), 0.5, 1e-4) <
        1e-6);
  CHECK(heisenberg_eom_check(a, rot, 0.5, 1e-4) < 1e-6);
}

TEST_CASE("the co-moving gauge removes the generator") {
  const double omega = 0.8, t = 0.6;
  UnitaryFamily rot = UnitaryFamily::rotation_2d(omega);
  Hamiltonian h = hamiltonian_from_family(rot, t);
  auto v_of_t = [&](double s) { return rot.evaluate(s).adjoint(); };
  ComplexMatrix transformed = gauge_transform_hamiltonian(h, v_of_t, t, 1e-5);
  CHECK(transformed.max_abs() < 1e-7);
}

TEST_CASE("symmetry classification distinguishes the four kinds") {
  const std::vector<double> times{0.3, 0.7, 1.1, 2.4};

  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  CHECK(classify_symmetry(ComplexMatrix::identity(2), rot, times) ==
        SymmetryKind::Unitary);
  // Real rotations: the swap and the parity flip conjugate U to its
  // transpose, which matches entry moduli only.
  CHECK(classify_symmetry(ComplexMatrix{{0, 1}, {1, 0}}, rot, times) ==
        SymmetryKind::Phase);
  CHECK(classify_symmetry(ComplexMatrix::diagonal({1.0, -1.0}), rot, times) ==
        SymmetryKind::Phase);

  // Complex-diagonal family: the swap sends U to its entrywise conjugate.
  UnitaryFamily phase =
      UnitaryFamily::constant_hamiltonian(ComplexMatrix::diagonal({1.0, -1.0}));
  CHECK(classify_symmetry(ComplexMatrix{{0, 1}, {1, 0}}, phase, times) ==
        SymmetryKind::AntiUnitary);
  CHECK(classify_symmetry(ComplexMatrix::diagonal({1.0, -1.0}), phase, times) ==
        SymmetryKind::Unitary);

  Rng rng(12);
  CHECK(classify_symmetry(random_unitary(2, rng), rot, times) ==
        SymmetryKind::None);
}

TEST_CASE("conserved and non-conserved generators under rotation") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  DensityMatrix rho0{ComplexMatrix::diagonal({1.0, 0.0})};
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.1 * k);

  // The generator of the rotation commutes with itself: conserved.
  CHECK(noether_check(rotation_generator(1.0, 1.0), rot, rho0, times) < 1e-12);

  // diag(1,-1) is not conserved; <G(t)> = cos(2t) from the pure state e_0.
  double expect_dev = 0.0;
  for (double t : times)
    expect_dev = std::max(expect_dev, std::abs(std::cos(2 * t) - 1.0));
  const double dev =
      noether_check(ComplexMatrix::diagonal({1.0, -1.0}), rot, rho0, times);
  CHECK(dev == doctest::Approx(expect_dev).epsilon(1e-12));
}
