#pragma once

// Declarative scenario files (JSON) driving the CLI: a system family, an
// initial condition, optional events, and a list of queries. Unknown fields
// are rejected so that fixture drift fails fast.

#include <optional>
#include <string>

#include "sqc/measurement.hpp"

namespace sqc {

struct InterferenceSpec {
  std::size_t j0 = 0;  // zero-based internally, 1-based in the file
  double t = 0.0;
  std::vector<double> t_prime_grid;
};

struct MeasurementEvent {
  double time = 0.0;
  ComplexMatrix observable;
  std::size_t device_dim = 0;
  std::size_t environment_dim = 0;
};

struct DivisionEvent {
  double time = 0.0;
  std::size_t environment_dim = 0;
  std::vector<std::size_t> e_of;  // zero-based
};

struct Query {
  double time = 0.0;
  std::string quantity;  // probabilities | density | expectation | histogram |
                         // device_probs | interference
  std::vector<double> magnitudes;  // for expectation
  std::uint64_t draws = 0;         // for histogram
};

class Scenario {
 public:
  static Scenario from_json_text(const std::string& text);
  static Scenario from_file(const std::string& path);
  // Built-in presets: "rotation2d", "exponential2x2".
  static Scenario preset(const std::string& name);

  std::size_t dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  bool has_unitary_family() const { return unitary_.has_value(); }
  const UnitaryFamily& unitary() const { return *unitary_; }

  // Transition matrix at time t; from the unitary family when present,
  // otherwise from the explicit stochastic description.
  StochasticMatrix gamma_at(double t) const;

  const ProbabilityVector& initial() const { return *initial_; }
  const std::vector<Query>& queries() const { return queries_; }
  const std::optional<InterferenceSpec>& interference() const {
    return interference_;
  }
  const std::vector<MeasurementEvent>& measurement_events() const {
    return measurement_events_;
  }
  const std::vector<DivisionEvent>& division_events() const {
    return division_events_;
  }

 private:
  Scenario() = default;
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  std::optional<UnitaryFamily> unitary_;
  // Explicit stochastic systems: fixed matrix (time-independent) or the
  // symmetric 2x2 exponential family with scale tau.
  std::optional<std::vector<std::vector<double>>> explicit_gamma_;
  std::optional<double> exponential_tau_;
  std::optional<ProbabilityVector> initial_;
  std::vector<Query> queries_;
  std::optional<InterferenceSpec> interference_;
  std::vector<MeasurementEvent> measurement_events_;
  std::vector<DivisionEvent> division_events_;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

// The verification suite behind `sq verify`: dictionary consistency, column
// (and, for unitary families, row) stochasticity, Kraus identity, and gauge
// invariance under seeded random phases and unitaries.
std::vector<CheckResult> verify_scenario(const Scenario& sc, double tolerance,
                                         std::uint64_t seed);

}  // namespace sqc
