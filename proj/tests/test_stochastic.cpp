#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sqc/sampling.hpp"
#include "sqc/stochastic.hpp"

using namespace sqc;

namespace {
const double kPi = std::acos(-1.0);

StochasticMatrix rotation_gamma(double angle) {
  const double c2 = std::cos(angle) * std::cos(angle);
  return StochasticMatrix({{c2, 1 - c2}, {1 - c2, c2}});
}
}  // namespace

TEST_CASE("stochastic matrix validation rejects rather than repairs") {
  CHECK_NOTHROW(StochasticMatrix({{0.3, 0.6}, {0.7, 0.4}}));
  // Column sums off by more than the tolerance.
  CHECK_THROWS_AS(StochasticMatrix({{0.3, 0.6}, {0.6, 0.4}}), PreconditionError);
  // Negative entry.
  CHECK_THROWS_AS(StochasticMatrix({{1.2, 0.5}, {-0.2, 0.5}}), PreconditionError);
  // Ragged rows.
  CHECK_THROWS_AS(StochasticMatrix({{1.0}, {0.0, 1.0}}), DimensionError);
}

TEST_CASE("probability vector validation") {
  CHECK_NOTHROW(ProbabilityVector({0.25, 0.75}));
  CHECK_THROWS_AS(ProbabilityVector({0.5, 0.4}), PreconditionError);
  CHECK_THROWS_AS(ProbabilityVector({1.5, -0.5}), PreconditionError);
  ProbabilityVector pm = ProbabilityVector::point_mass(3, 2);
  CHECK(pm[2] == 1.0);
  CHECK(pm[0] == 0.0);
}

TEST_CASE("propagate applies the column convention") {
  // Column j is the distribution conditioned on starting in j.
  StochasticMatrix gamma({{0.1, 0.8}, {0.9, 0.2}});
  ProbabilityVector from0 = propagate(gamma, ProbabilityVector::point_mass(2, 0));
  CHECK(from0[0] == doctest::Approx(0.1));
  CHECK(from0[1] == doctest::Approx(0.9));

  ProbabilityVector mixed = propagate(gamma, ProbabilityVector({0.5, 0.5}));
  CHECK(mixed[0] == doctest::Approx(0.45));
  CHECK(mixed[1] == doctest::Approx(0.55));

  // Planar rotation at angle pi/3 sends a point mass to (1/4, 3/4).
  ProbabilityVector rot =
      propagate(rotation_gamma(kPi / 3), ProbabilityVector::point_mass(2, 0));
  CHECK(rot[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rot[1] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("expectation of a diagonal random variable") {
  RandomVariable a({1.0, -1.0});
  CHECK(expectation(a, ProbabilityVector({0.25, 0.75})) ==
        doctest::Approx(-0.5));
  CHECK(expectation(a, ProbabilityVector::point_mass(2, 0)) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(expectation(RandomVariable({1.0, 2.0, 3.0}),
                              ProbabilityVector({0.5, 0.5})),
                  DimensionError);
}

TEST_CASE("permutation and double stochasticity predicates") {
  StochasticMatrix swap({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(swap.is_permutation());
  CHECK(swap.is_doubly_stochastic());

  StochasticMatrix uniform({{0.5, 0.5}, {0.5, 0.5}});
  CHECK_FALSE(uniform.is_permutation());
  CHECK(uniform.is_doubly_stochastic());

  StochasticMatrix biased({{0.1, 0.8}, {0.9, 0.2}});
  CHECK_FALSE(biased.is_permutation());
  CHECK_FALSE(biased.is_doubly_stochastic());
}

TEST_CASE("divisibility through an intermediate time") {
  // Permutation chains always divide: the candidate is exactly stochastic.
  StochasticMatrix swap({{0.0, 1.0}, {1.0, 0.0}});
  DivisibilityResult via_swap =
      check_divisible_at(StochasticMatrix::identity(2), swap, 1e-10);
  CHECK(via_swap.divisible);
  CHECK(std::abs(via_swap.candidate(0, 1) - 1.0) < 1e-14);

  // Anything divides through the identity, trivially.
  StochasticMatrix biased({{0.1, 0.8}, {0.9, 0.2}});
  DivisibilityResult via_id =
      check_divisible_at(biased, StochasticMatrix::identity(2), 1e-10);
  CHECK(via_id.divisible);

  // Rotation dynamics to angle pi/2 through angle pi/3: the candidate has
  // negative entries, so the path is not divisible there.
  DivisibilityResult rot = check_divisible_at(rotation_gamma(kPi / 2),
                                              rotation_gamma(kPi / 3), 1e-10);
  CHECK_FALSE(rot.divisible);
  CHECK(rot.candidate(0, 0).real() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(rot.candidate(1, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));

  // The uniform matrix is singular; the test is undecidable by this route.
  StochasticMatrix uniform({{0.5, 0.5}, {0.5, 0.5}});
  CHECK_THROWS_AS(check_divisible_at(biased, uniform, 1e-10),
                  SingularMatrixError);
}

TEST_CASE("stochastic inverse forces a permutation") {
  StochasticMatrix perm({{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  CHECK(stochastic_inverse_is_permutation(perm, 1e-10));

  // Invertible but with a non-stochastic inverse.
  StochasticMatrix biased({{0.1, 0.8}, {0.9, 0.2}});
  CHECK_FALSE(stochastic_inverse_is_permutation(biased, 1e-10));
}

TEST_CASE("marginal sampling is seeded and unbiased") {
  StochasticMatrix gamma = rotation_gamma(kPi / 3);  // column 0 = (1/4, 3/4)
  const std::uint64_t draws = 40000;
  auto counts = sample_marginal(gamma, 0, draws, 123);
  auto counts_again = sample_marginal(gamma, 0, draws, 123);
  CHECK(counts == counts_again);
  CHECK(counts != sample_marginal(gamma, 0, draws, 124));

  CHECK(counts[0] + counts[1] == draws);
  // Three-sigma band around the binomial mean.
  const double mean = 0.25 * draws;
  const double sigma = std::sqrt(draws * 0.25 * 0.75);
  CHECK(std::abs(static_cast<double>(counts[0]) - mean) < 3.0 * sigma);
}

TEST_CASE("csv emission format") {
  std::string p_csv = probabilities_to_csv(ProbabilityVector({0.25, 0.75}));
  CHECK(p_csv == "index,value\n1,0.25\n2,0.75\n");
  std::string h_csv = histogram_to_csv({10, 0, 32});
  CHECK(h_csv == "index,value\n1,10\n2,0\n3,32\n");
}
