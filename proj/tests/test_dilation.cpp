#include <doctest.h>

#include <cmath>

#include "sqc/dilation.hpp"
#include "sqc/sampling.hpp"

using namespace sqc;

namespace {
const double kPi = std::acos(-1.0);

ComplexMatrix rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return ComplexMatrix{{c, -s}, {s, c}};
}

double max_gamma_diff(const StochasticMatrix& a, const StochasticMatrix& b) {
  double resid = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      resid = std::max(resid, std::abs(a(i, j) - b(i, j)));
  return resid;
}
}  // namespace

TEST_CASE("a trivial internal factor reproduces the plain dictionary") {
  EvolutionOperator theta{rotation(0.6)};
  StochasticMatrix gamma = stochastic_from_evolution(theta);
  ComplexMatrix lifted = tensor(theta.theta(), ComplexMatrix::identity(2));
  // Any internal label works because the factor does not mix.
  for (std::size_t g : {0u, 1u}) {
    StochasticMatrix out = dilated_dictionary(lifted, PVM::configuration(2), g);
    CHECK(max_gamma_diff(out, gamma) < 1e-14);
  }
}

TEST_CASE("any product-space unitary induces a stochastic matrix") {
  Rng rng(4);
  ComplexMatrix u = random_unitary(6, rng);
  for (std::size_t g : {0u, 1u})
    CHECK_NOTHROW(dilated_dictionary(u, PVM::configuration(2), g));
}

TEST_CASE("dilated dictionary rejects bad inputs") {
  // Scaled columns violate the generalized column-norm condition.
  CHECK_THROWS_AS(dilated_dictionary(ComplexMatrix::diagonal(
                                         {2.0, 1.0, 1.0, 1.0}),
                                     PVM::configuration(2), 0),
                  PreconditionError);
  CHECK_THROWS_AS(
      dilated_dictionary(ComplexMatrix::identity(4), PVM::configuration(2), 5),
      PreconditionError);
  CHECK_THROWS_AS(
      dilated_dictionary(ComplexMatrix::identity(5), PVM::configuration(2), 0),
      DimensionError);
}

TEST_CASE("block round trip") {
  Rng rng(8);
  ComplexMatrix m = random_unitary(6, rng);
  auto blocks = to_blocks(m, 3);
  REQUIRE(blocks.size() == 3);
  REQUIRE(blocks[0].size() == 3);
  CHECK(blocks[1][2](0, 1) == m(2, 5));
  CHECK((from_blocks(blocks) - m).max_abs() == 0.0);
}

TEST_CASE("block-wise gauge leaves the dilated dictionary unchanged") {
  Rng rng(15);
  EvolutionOperator theta = random_evolution_operator(3, rng);
  ComplexMatrix lifted = tensor(theta.theta(), ComplexMatrix::identity(2));
  StochasticMatrix before = dilated_dictionary(lifted, PVM::configuration(2), 0);

  std::vector<std::vector<ComplexMatrix>> v(3);
  for (auto& row : v)
    for (int j = 0; j < 3; ++j) row.push_back(random_unitary(2, rng));
  ComplexMatrix gauged = block_gauge(to_blocks(lifted, 3), v);
  StochasticMatrix after = dilated_dictionary(gauged, PVM::configuration(2), 0);
  CHECK(max_gamma_diff(before, after) < 1e-12);

  // Non-unitary gauge blocks are rejected.
  v[0][0] = ComplexMatrix::diagonal({2.0, 1.0});
  CHECK_THROWS_AS(block_gauge(to_blocks(lifted, 3), v), PreconditionError);
}

TEST_CASE("real two-dimensional internal representation") {
  // diag(i, 1) has unit entry moduli; its real form is made of 2x2 rotation
  // blocks and reproduces the identity dictionary.
  ComplexMatrix m{{cdouble{0, 1}, 0.0}, {0.0, 1.0}};
  EvolutionOperator theta{m};
  DilatedSystem sys = realify(theta);
  CHECK(sys.internal_dim == 2);
  CHECK(sys.evolution.rows() == 4);
  // a + bi -> aI + bJ: the i entry becomes [[0,-1],[1,0]].
  CHECK(sys.evolution(0, 0) == cdouble{0, 0});
  CHECK(sys.evolution(0, 1) == cdouble{-1, 0});
  CHECK(sys.evolution(1, 0) == cdouble{1, 0});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(sys.evolution(i, j).imag() == 0.0);

  StochasticMatrix out =
      dilated_dictionary(sys.evolution, sys.internal_pvm, sys.gamma_label);
  CHECK(max_gamma_diff(out, StochasticMatrix::identity(2)) < 1e-14);

  // A unitary input realifies to a real orthogonal matrix and still gives
  // the original dictionary output.
  Rng rng(21);
  ComplexMatrix u = random_unitary(3, rng);
  EvolutionOperator tu{u};
  DilatedSystem real_u = realify(tu);
  CHECK(is_unitary(real_u.evolution));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(real_u.evolution(i, j).imag() == 0.0);
  StochasticMatrix gamma_real = dilated_dictionary(
      real_u.evolution, real_u.internal_pvm, real_u.gamma_label);
  CHECK(max_gamma_diff(gamma_real, stochastic_from_evolution(tu)) < 1e-12);
}

TEST_CASE("lifting the identity Kraus set gives the exact identity") {
  for (std::size_t n : {2u, 3u}) {
    KrausSet id_kraus = kraus_from_evolution(
        EvolutionOperator{ComplexMatrix::identity(n)});
    StinespringResult res = stinespring_dilate(id_kraus);
    CHECK((res.unitary - ComplexMatrix::identity(n * n * n)).max_abs() == 0.0);
  }
}

TEST_CASE("the lifted unitary reproduces the dictionary") {
  EvolutionOperator theta{rotation(kPi / 4)};
  StinespringResult res =
      stinespring_dilate(kraus_from_evolution(theta));
  CHECK(is_unitary(res.unitary, 1e-10));
  StochasticMatrix out = dilated_dictionary(
      res.unitary, PVM::configuration(4), res.ancilla_label);
  CHECK(max_gamma_diff(out, stochastic_from_evolution(theta)) < 1e-12);

  // Generic non-unitary evolution operators lift too, for every ancilla
  // label on the three-dimensional base.
  Rng rng(33);
  EvolutionOperator generic = random_evolution_operator(3, rng);
  StochasticMatrix gamma = stochastic_from_evolution(generic);
  for (std::size_t label = 0; label < 3; ++label) {
    StinespringResult lifted =
        stinespring_dilate(kraus_from_evolution(generic), label);
    CHECK(is_unitary(lifted.unitary, 1e-9));
    StochasticMatrix out3 = dilated_dictionary(
        lifted.unitary, PVM::configuration(9), lifted.ancilla_label);
    CHECK(max_gamma_diff(out3, gamma) < 1e-10);
  }
}
