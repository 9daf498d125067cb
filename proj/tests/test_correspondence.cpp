#include <doctest.h>

#include <cmath>

#include "sqc/correspondence.hpp"
#include "sqc/sampling.hpp"

using namespace sqc;

namespace {
const double kPi = std::acos(-1.0);
const double kRoot2Inv = 1.0 / std::sqrt(2.0);

ComplexMatrix rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return ComplexMatrix{{c, -s}, {s, c}};
}
}  // namespace

TEST_CASE("evolution operator demands unit column norms") {
  CHECK_NOTHROW(EvolutionOperator(rotation(0.4)));
  // Unit-norm columns that are not orthogonal are still admissible.
  ComplexMatrix slanted{{1.0, kRoot2Inv}, {0.0, kRoot2Inv}};
  CHECK_NOTHROW(EvolutionOperator{slanted});
  CHECK_THROWS_AS(EvolutionOperator(ComplexMatrix{{1, 1}, {1, 0}}),
                  PreconditionError);
}

TEST_CASE("canonical gauge takes entrywise square roots") {
  StochasticMatrix gamma({{0.25, 0.75}, {0.75, 0.25}});
  EvolutionOperator theta = evolution_from_stochastic(gamma);
  CHECK(theta.theta()(0, 0) == cdouble{0.5, 0});
  CHECK(theta.theta()(1, 0).real() == doctest::Approx(std::sqrt(0.75)));
  CHECK(theta.theta()(1, 0).imag() == 0.0);

  // Round trip back to the stochastic side.
  StochasticMatrix back = stochastic_from_evolution(theta);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(back(i, j) == doctest::Approx(gamma(i, j)).epsilon(1e-14));
}

TEST_CASE("dictionary round trip on random inputs") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    StochasticMatrix gamma = random_stochastic(n, rng);
    StochasticMatrix back =
        stochastic_from_evolution(evolution_from_stochastic(gamma));
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        resid = std::max(resid, std::abs(back(i, j) - gamma(i, j)));
    CHECK(resid < 1e-14);
  }
}

TEST_CASE("canonical Kraus set of the quarter rotation") {
  EvolutionOperator theta{rotation(kPi / 4)};
  KrausSet kraus = kraus_from_evolution(theta);
  REQUIRE(kraus.count() == 2);
  // K_b carries column b of the rotation and is zero elsewhere.
  CHECK(kraus[0](0, 0).real() == doctest::Approx(kRoot2Inv));
  CHECK(kraus[0](1, 0).real() == doctest::Approx(kRoot2Inv));
  CHECK(kraus[0](0, 1) == cdouble{0, 0});
  CHECK(kraus[1](0, 1).real() == doctest::Approx(-kRoot2Inv));
  CHECK(kraus[1](1, 1).real() == doctest::Approx(kRoot2Inv));
  CHECK(kraus[1](1, 0) == cdouble{0, 0});

  // The Kraus route reproduces the dictionary output.
  StochasticMatrix via_kraus = stochastic_from_kraus(kraus);
  StochasticMatrix direct = stochastic_from_evolution(theta);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(via_kraus(i, j) == doctest::Approx(direct(i, j)).epsilon(1e-14));
}

TEST_CASE("kraus completeness is validated") {
  std::vector<ComplexMatrix> bad{ComplexMatrix::identity(2),
                                 ComplexMatrix::identity(2)};
  CHECK_THROWS_AS(KrausSet{bad}, PreconditionError);
}

TEST_CASE("density matrix, state vector, and the Born rule") {
  EvolutionOperator theta{rotation(kPi / 4)};

  StateVector psi = state_vector(theta, 0);
  CHECK(psi.psi()[0].real() == doctest::Approx(kRoot2Inv));
  CHECK(psi.psi()[1].real() == doctest::Approx(kRoot2Inv));
  ProbabilityVector born = born_rule(psi);
  CHECK(born[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(born[1] == doctest::Approx(0.5).epsilon(1e-14));

  // Point-mass input gives the pure state |psi><psi|.
  DensityMatrix rho = density_matrix(theta, ProbabilityVector::point_mass(2, 0));
  CHECK((rho.rho() - ComplexMatrix::outer(psi.psi(), psi.psi())).max_abs() <
        1e-14);
  CHECK(std::abs(rho.rho().trace() - cdouble{1, 0}) < 1e-14);

  // Uniform input at the quarter rotation gives the maximally mixed state.
  DensityMatrix mixed = density_matrix(theta, ProbabilityVector({0.5, 0.5}));
  CHECK((mixed.rho() - ComplexMatrix::identity(2) * cdouble{0.5, 0}).max_abs() <
        1e-14);

  // Diagonal of rho agrees with the propagated distribution.
  Rng rng(9);
  EvolutionOperator random_theta = random_evolution_operator(4, rng);
  ProbabilityVector p0 = random_probability(4, rng);
  DensityMatrix rho4 = density_matrix(random_theta, p0);
  ProbabilityVector p_t = propagate(stochastic_from_evolution(random_theta), p0);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(rho4.rho()(i, i).real() == doctest::Approx(p_t[i]).epsilon(1e-12));
}

TEST_CASE("Born probabilities ignore entrywise phases") {
  Rng rng(31);
  EvolutionOperator theta = random_evolution_operator(3, rng);
  EvolutionOperator rotated = gauge_schur_hadamard(theta, random_phases(3, rng));
  ProbabilityVector a = born_rule(state_vector(theta, 1));
  ProbabilityVector b = born_rule(state_vector(rotated, 1));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
}

TEST_CASE("expectation values agree between the two descriptions") {
  Rng rng(17);
  EvolutionOperator theta = random_evolution_operator(4, rng);
  ProbabilityVector p0 = random_probability(4, rng);
  RandomVariable a({0.5, -1.0, 2.0, 0.0});

  const double classical =
      expectation(a, propagate(stochastic_from_evolution(theta), p0));
  const double quantum = expectation_qm(a.as_matrix(), density_matrix(theta, p0));
  CHECK(classical == doctest::Approx(quantum).epsilon(1e-12));
}

TEST_CASE("Heisenberg picture of a diagonal observable") {
  // Theta = [[c, s], [-s, c]] turns diag(1,-1) into the off-diagonal swap at
  // the eighth turn.
  const double c = std::cos(kPi / 4), s = std::sin(kPi / 4);
  EvolutionOperator theta{ComplexMatrix{{c, s}, {-s, c}}};
  ComplexMatrix heis = to_heisenberg(ComplexMatrix::diagonal({1.0, -1.0}), theta);
  ComplexMatrix swap{{0, 1}, {1, 0}};
  CHECK((heis - swap).max_abs() < 1e-14);

  // Heisenberg expectation against the initial state matches the
  // Schroedinger expectation against the evolved state.
  Rng rng(23);
  EvolutionOperator random_theta = random_evolution_operator(3, rng);
  ProbabilityVector p0 = random_probability(3, rng);
  ComplexMatrix obs = random_self_adjoint(3, rng);
  DensityMatrix rho0 =
      density_matrix(EvolutionOperator(ComplexMatrix::identity(3)), p0);
  const double heis_side =
      expectation_qm(to_heisenberg(obs, random_theta), rho0);
  const double schr_side =
      expectation_qm(obs, density_matrix(random_theta, p0));
  CHECK(heis_side == doctest::Approx(schr_side).epsilon(1e-12));
}

TEST_CASE("entrywise phase gauge preserves the dictionary") {
  Rng rng(55);
  EvolutionOperator theta = random_evolution_operator(4, rng);
  StochasticMatrix gamma = stochastic_from_evolution(theta);
  EvolutionOperator rotated = gauge_schur_hadamard(theta, random_phases(4, rng));
  StochasticMatrix gamma2 = stochastic_from_evolution(rotated);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(gamma2(i, j) == doctest::Approx(gamma(i, j)).epsilon(1e-14));

  // Generic phases break unitarity even when the input was unitary.
  EvolutionOperator rot{rotation(0.7)};
  EvolutionOperator dephased =
      gauge_schur_hadamard(rot, PhaseMatrix{{{0.0, 1.1}, {2.3, 0.4}}});
  CHECK(is_unitary(rot.theta()));
  CHECK_FALSE(is_unitary(dephased.theta()));
}

TEST_CASE("unitary gauge transports every object consistently") {
  Rng rng(71);
  EvolutionOperator theta = random_evolution_operator(3, rng);
  GaugeBundle bundle = GaugeBundle::from(theta);
  bundle.rho = density_matrix(theta, random_probability(3, rng));
  bundle.psi = state_vector(theta, 2);
  bundle.observables.push_back(random_self_adjoint(3, rng));

  ComplexMatrix v_t = random_unitary(3, rng);
  ComplexMatrix v_0 = random_unitary(3, rng);
  GaugeBundle moved = gauge_unitary(bundle, v_t, v_0);

  // The dictionary value is unchanged when the projectors move along.
  ComplexMatrix before =
      dictionary_with_pvms(bundle.theta, bundle.pvm_t, bundle.pvm_0);
  ComplexMatrix after =
      dictionary_with_pvms(moved.theta, moved.pvm_t, moved.pvm_0);
  CHECK((before - after).max_abs() < 1e-12);

  // Expectation values are invariant.
  const double before_ev =
      expectation_qm(bundle.observables[0], *bundle.rho);
  const double after_ev = expectation_qm(moved.observables[0], *moved.rho);
  CHECK(before_ev == doctest::Approx(after_ev).epsilon(1e-12));

  // Projector Born probabilities of the state are invariant.
  for (std::size_t i = 0; i < 3; ++i) {
    const ComplexVector& a = bundle.psi->psi();
    const ComplexVector& b = moved.psi->psi();
    const cdouble pa = (bundle.pvm_t.projectors[i] * a).dot(a);
    const cdouble pb = (moved.pvm_t.projectors[i] * b).dot(b);
    CHECK(std::abs(pa - pb) < 1e-12);
  }
}

TEST_CASE("Heisenberg gauge freezes the evolution operator") {
  // Choosing V_t = Theta† for unitary Theta and V_0 = identity turns the
  // transported evolution matrix into the identity.
  EvolutionOperator theta{rotation(0.9)};
  GaugeBundle bundle = GaugeBundle::from(theta);
  GaugeBundle moved = gauge_unitary(bundle, theta.theta().adjoint(),
                                    ComplexMatrix::identity(2));
  CHECK((moved.theta - ComplexMatrix::identity(2)).max_abs() < 1e-14);
}
