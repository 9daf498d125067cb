#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sqc/interference.hpp"

using namespace sqc;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("relative evolution composes back to the endpoint") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.3);
  const double t = 1.9, tp = 0.6;
  ComplexMatrix rel = relative_evolution(rot, t, tp);
  CHECK(is_unitary(rel));
  CHECK((rel * rot.evaluate(tp) - rot.evaluate(t)).max_abs() < 1e-14);
  CHECK((relative_evolution(rot, t, t) - ComplexMatrix::identity(2)).max_abs() <
        1e-14);
}

TEST_CASE("half turn through the eighth turn misses by one half") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  InterferenceReport rep = interference_report(rot, 0, kPi / 2, kPi / 4);

  // Gamma(pi/2) is the swap; the divided candidate is uniform.
  CHECK(rep.gamma_actual(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rep.gamma_actual(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.gamma_divided(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.max_abs_discrepancy == doctest::Approx(0.5).epsilon(1e-12));

  // Both matrices are column-stochastic, so the discrepancy columns sum to 0.
  for (std::size_t j = 0; j < 2; ++j) {
    cdouble col_sum = 0.0;
    for (std::size_t i = 0; i < 2; ++i) col_sum += rep.discrepancy(i, j);
    CHECK(std::abs(col_sum) < 1e-14);
  }
}

TEST_CASE("division through the start or the endpoint is exact") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(0.7);
  CHECK(interference_report(rot, 1, 1.4, 0.0).max_abs_discrepancy < 1e-14);
  CHECK(interference_report(rot, 1, 1.4, 1.4).max_abs_discrepancy < 1e-14);
}

TEST_CASE("a permutation-valued family never interferes") {
  // A grid of permutation unitaries: the moduli compose exactly.
  ComplexMatrix swap{{0, 1}, {1, 0}};
  UnitaryFamily perms = UnitaryFamily::sampled_grid(
      {{0.0, ComplexMatrix::identity(2)}, {1.0, swap},
       {2.0, ComplexMatrix::identity(2)}});
  CHECK(interference_report(perms, 0, 2.0, 1.0).max_abs_discrepancy < 1e-14);
}

TEST_CASE("discrepancy profile and its CSV form") {
  UnitaryFamily rot = UnitaryFamily::rotation_2d(1.0);
  std::vector<double> grid{0.0, kPi / 4, kPi / 2};
  auto profile = divisibility_profile(rot, 0, kPi / 2, grid);
  REQUIRE(profile.size() == 3);
  CHECK(profile[0].max_abs_discrepancy < 1e-14);
  CHECK(profile[1].max_abs_discrepancy == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(profile[2].max_abs_discrepancy < 1e-14);

  std::string csv = profile_to_csv(profile);
  CHECK(csv.rfind("t_prime,max_abs_discrepancy\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
