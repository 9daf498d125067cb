#include "sqc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sqc/sampling.hpp"

namespace sqc {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& msg) {
  throw PreconditionError("scenario: " + msg);
}

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      parse_error("unknown field '" + key + "' in " + where);
}

ComplexMatrix matrix_from_json(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty())
    parse_error(where + " must be a non-empty array of rows");
  const std::size_t n = rows.size();
  ComplexMatrix m(n, rows[0].size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m.cols())
      parse_error(where + " is ragged");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const json& cell = rows[i][j];
      if (cell.is_number())
        m(i, j) = cell.get<double>();
      else if (cell.is_string())
        m(i, j) = parse_complex(cell.get<std::string>());
      else
        parse_error(where + " entries must be numbers or 're+imj' strings");
    }
  }
  return m;
}

std::vector<std::vector<double>> real_matrix_from_json(
    const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty())
    parse_error(where + " must be a non-empty array of rows");
  std::vector<std::vector<double>> m;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != rows[0].size())
      parse_error(where + " is ragged");
    std::vector<double> r;
    for (const auto& cell : row) {
      if (!cell.is_number()) parse_error(where + " entries must be numbers");
      r.push_back(cell.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) parse_error("top level must be an object");
  require_keys(root,
               {"schema_version", "seed", "system", "initial", "events",
                "queries", "interference"},
               "scenario");
  if (!root.contains("schema_version") ||
      root["schema_version"].get<int>() != 1)
    parse_error("schema_version must be 1");

  Scenario sc;
  sc.seed_ = root.value("seed", std::uint64_t{0});

  if (!root.contains("system")) parse_error("missing system");
  const json& sys = root["system"];
  const std::string kind = sys.value("kind", "");
  if (kind == "rotation-2d") {
    require_keys(sys, {"kind", "omega", "hbar"}, "system");
    sc.unitary_ = UnitaryFamily::rotation_2d(sys.value("omega", 1.0),
                                             sys.value("hbar", 1.0));
    sc.dim_ = 2;
  } else if (kind == "constant-hamiltonian") {
    require_keys(sys, {"kind", "hamiltonian", "hbar"}, "system");
    if (!sys.contains("hamiltonian")) parse_error("missing hamiltonian");
    ComplexMatrix h = matrix_from_json(sys["hamiltonian"], "hamiltonian");
    sc.dim_ = h.rows();
    sc.unitary_ = UnitaryFamily::constant_hamiltonian(std::move(h),
                                                      sys.value("hbar", 1.0));
  } else if (kind == "explicit-stochastic") {
    require_keys(sys, {"kind", "gamma"}, "system");
    if (!sys.contains("gamma")) parse_error("missing gamma");
    auto g = real_matrix_from_json(sys["gamma"], "gamma");
    sc.dim_ = g.size();
    sc.explicit_gamma_ = std::move(g);
  } else if (kind == "exponential-2x2") {
    require_keys(sys, {"kind", "tau"}, "system");
    const double tau = sys.value("tau", 1.0);
    if (tau <= 0.0) parse_error("tau must be positive");
    sc.exponential_tau_ = tau;
    sc.dim_ = 2;
  } else {
    parse_error("unknown system kind '" + kind + "'");
  }

  if (root.contains("initial")) {
    const json& init = root["initial"];
    require_keys(init, {"configuration", "probabilities"}, "initial");
    if (init.contains("configuration")) {
      const std::size_t c = init["configuration"].get<std::size_t>();
      if (c < 1 || c > sc.dim_)
        parse_error("initial configuration out of range (1-based)");
      sc.initial_ = ProbabilityVector::point_mass(sc.dim_, c - 1);
    } else if (init.contains("probabilities")) {
      sc.initial_ =
          ProbabilityVector(init["probabilities"].get<std::vector<double>>());
      if (sc.initial_->size() != sc.dim_)
        parse_error("initial probabilities have the wrong length");
    } else {
      parse_error("initial needs configuration or probabilities");
    }
  } else {
    sc.initial_ = ProbabilityVector::point_mass(sc.dim_, 0);
  }

  for (const json& ev : root.value("events", json::array())) {
    require_keys(ev,
                 {"time", "kind", "observable", "device_dim",
                  "environment_dim", "e_of"},
                 "event");
    const std::string ekind = ev.value("kind", "");
    const double time = ev.value("time", 0.0);
    if (!sc.measurement_events_.empty() || !sc.division_events_.empty()) {
      const double last = sc.measurement_events_.empty()
                              ? sc.division_events_.back().time
                              : sc.measurement_events_.back().time;
      if (time < last) parse_error("event times must be non-decreasing");
    }
    if (ekind == "measurement") {
      MeasurementEvent me;
      me.time = time;
      if (!ev.contains("observable")) parse_error("measurement needs observable");
      me.observable = matrix_from_json(ev["observable"], "observable");
      me.device_dim = ev.value("device_dim", sc.dim_);
      me.environment_dim = ev.value("environment_dim", sc.dim_);
      sc.measurement_events_.push_back(std::move(me));
    } else if (ekind == "division") {
      DivisionEvent de;
      de.time = time;
      de.environment_dim = ev.value("environment_dim", sc.dim_);
      if (ev.contains("e_of")) {
        for (std::size_t v : ev["e_of"].get<std::vector<std::size_t>>()) {
          if (v < 1) parse_error("e_of entries are 1-based");
          de.e_of.push_back(v - 1);
        }
      } else {
        for (std::size_t i = 0; i < sc.dim_; ++i) de.e_of.push_back(i);
      }
      sc.division_events_.push_back(std::move(de));
    } else {
      parse_error("unknown event kind '" + ekind + "'");
    }
  }

  for (const json& q : root.value("queries", json::array())) {
    require_keys(q, {"time", "quantity", "magnitudes", "draws"}, "query");
    Query query;
    query.time = q.value("time", 0.0);
    query.quantity = q.value("quantity", "");
    const std::set<std::string> known{"probabilities", "density",
                                      "expectation", "histogram",
                                      "device_probs"};
    if (!known.count(query.quantity))
      parse_error("unknown query quantity '" + query.quantity + "'");
    if (q.contains("magnitudes"))
      query.magnitudes = q["magnitudes"].get<std::vector<double>>();
    query.draws = q.value("draws", std::uint64_t{0});
    if (query.quantity == "expectation" &&
        query.magnitudes.size() != sc.dim_)
      parse_error("expectation query needs one magnitude per configuration");
    if (query.quantity == "histogram" && query.draws == 0)
      parse_error("histogram query needs draws >= 1");
    sc.queries_.push_back(std::move(query));
  }

  if (root.contains("interference")) {
    const json& itf = root["interference"];
    require_keys(itf, {"j0", "t", "t_prime_grid"}, "interference");
    InterferenceSpec spec;
    const std::size_t j0 = itf.value("j0", std::size_t{1});
    if (j0 < 1 || j0 > sc.dim_) parse_error("interference j0 out of range");
    spec.j0 = j0 - 1;
    spec.t = itf.value("t", 0.0);
    if (itf.contains("t_prime_grid"))
      spec.t_prime_grid = itf["t_prime_grid"].get<std::vector<double>>();
    sc.interference_ = std::move(spec);
  }

  return sc;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

Scenario Scenario::preset(const std::string& name) {
  if (name == "rotation2d")
    return from_json_text(R"({
      "schema_version": 1,
      "system": {"kind": "rotation-2d", "omega": 1.0},
      "initial": {"configuration": 1}
    })");
  if (name == "exponential2x2")
    return from_json_text(R"({
      "schema_version": 1,
      "system": {"kind": "exponential-2x2", "tau": 1.0},
      "initial": {"configuration": 1}
    })");
  throw PreconditionError("unknown preset '" + name + "'");
}

StochasticMatrix Scenario::gamma_at(double t) const {
  if (unitary_) {
    return stochastic_from_evolution(
        EvolutionOperator(unitary_->evaluate(t), tol::kProb * dim_));
  }
  if (explicit_gamma_) return StochasticMatrix(*explicit_gamma_);
  const double tau = *exponential_tau_;
  const double e = std::exp(-t * t / (tau * tau));
  return StochasticMatrix{{{e, 1.0 - e}, {1.0 - e, e}}};
}

std::vector<CheckResult> verify_scenario(const Scenario& sc, double tolerance,
                                         std::uint64_t seed) {
  std::vector<CheckResult> results;
  auto add = [&](const std::string& name, double residual, double tol_used) {
    results.push_back({name, residual, residual <= tol_used});
  };
  const std::size_t n = sc.dim();
  const std::vector<double> sample_times{0.3, 0.7, 1.1};
  Rng rng(seed);

  for (double t : sample_times) {
    StochasticMatrix gamma = sc.gamma_at(t);  // throws if invalid
    EvolutionOperator theta = evolution_from_stochastic(gamma);

    // Dictionary consistency: |Theta|^2 vs trace formula, via the two-route
    // evaluation inside stochastic_from_evolution plus an explicit diff.
    StochasticMatrix back = stochastic_from_evolution(theta);
    double resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        resid = std::max(resid, std::abs(back(i, j) - gamma(i, j)));
    add("dictionary round-trip at t=" + std::to_string(t), resid, 1e-12);

    // Kraus identity and decomposition.
    KrausSet kraus = kraus_from_evolution(theta);
    StochasticMatrix via_kraus = stochastic_from_kraus(kraus);
    double kraus_resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        kraus_resid =
            std::max(kraus_resid, std::abs(via_kraus(i, j) - gamma(i, j)));
    add("kraus decomposition at t=" + std::to_string(t), kraus_resid, 1e-12);

    // Schur-Hadamard gauge invariance with random phases.
    EvolutionOperator gauged =
        gauge_schur_hadamard(theta, random_phases(n, rng));
    StochasticMatrix gauged_gamma = stochastic_from_evolution(gauged);
    double gauge_resid = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        gauge_resid = std::max(gauge_resid,
                               std::abs(gauged_gamma(i, j) - gamma(i, j)));
    add("phase gauge invariance at t=" + std::to_string(t), gauge_resid,
        1e-12);

    if (sc.has_unitary_family()) {
      double row_resid = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += gamma(i, j);
        row_resid = std::max(row_resid, std::abs(sum - 1.0));
      }
      add("double stochasticity at t=" + std::to_string(t), row_resid,
          tolerance);

      // Unitary gauge invariance of the dictionary.
      GaugeBundle bundle = GaugeBundle::from(theta);
      GaugeBundle moved =
          gauge_unitary(bundle, random_unitary(n, rng), random_unitary(n, rng));
      ComplexMatrix invariant_gamma =
          dictionary_with_pvms(moved.theta, moved.pvm_t, moved.pvm_0);
      double ugauge_resid = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          ugauge_resid = std::max(
              ugauge_resid, std::abs(invariant_gamma(i, j) - gamma(i, j)));
      add("unitary gauge invariance at t=" + std::to_string(t), ugauge_resid,
          1e-12);
    }
  }
  return results;
}

}  // namespace sqc
