// Scenario-driven command line front end. Subcommands:
//   verify    run the consistency checks on a scenario or preset
//   simulate  execute scenario queries and emit CSV
//   interfere sweep the interference discrepancy over intermediate times
//   dilate    lift an evolution-operator fixture to its N^3 unitary
//   measure   run a scenario's measurement event
// Exit codes: 0 all checks pass, 1 check failure, 2 usage or parse error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqc/dilation.hpp"
#include "sqc/interference.hpp"
#include "sqc/scenario.hpp"

namespace {

using namespace sqc;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = 1e-10;
  std::string out_dir;
  std::string format = "csv";
};

Scenario load_scenario(const std::string& ref) {
  if (std::filesystem::exists(ref)) return Scenario::from_file(ref);
  return Scenario::preset(ref);
}

void emit(const GlobalOptions& opts, const std::string& name,
          const std::string& content) {
  if (opts.out_dir.empty()) {
    std::cout << "# " << name << "\n" << content;
    return;
  }
  std::filesystem::create_directories(opts.out_dir);
  const std::string path = opts.out_dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::size_t point_mass_index(const ProbabilityVector& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.999999) return i;
  throw PreconditionError(
      "sampling requires a point-mass initial condition");
}

int cmd_verify(const GlobalOptions& opts, const std::string& ref) {
  // Parse problems are usage errors (exit 2, handled in main); anything that
  // goes wrong while checking a well-formed scenario is a check failure.
  const Scenario sc = load_scenario(ref);
  const std::uint64_t seed = opts.seed_set ? opts.seed : sc.seed();
  bool all_passed = true;
  try {
    for (const CheckResult& r : verify_scenario(sc, opts.tol, seed)) {
      std::cout << (r.passed ? "pass" : "FAIL") << "  " << r.name
                << "  residual=" << r.residual << "\n";
      all_passed = all_passed && r.passed;
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL  " << e.what() << "\n";
    return 1;
  }
  return all_passed ? 0 : 1;
}

int cmd_simulate(const GlobalOptions& opts, const std::string& ref) {
  const Scenario sc = load_scenario(ref);
  const std::uint64_t seed = opts.seed_set ? opts.seed : sc.seed();
  std::size_t k = 0;
  for (const Query& q : sc.queries()) {
    ++k;
    const std::string stem = "query_" + std::to_string(k) + "_" + q.quantity;
    if (q.quantity == "probabilities") {
      ProbabilityVector p = propagate(sc.gamma_at(q.time), sc.initial());
      emit(opts, stem + ".csv", probabilities_to_csv(p));
    } else if (q.quantity == "expectation") {
      ProbabilityVector p = propagate(sc.gamma_at(q.time), sc.initial());
      const double value = expectation(RandomVariable(q.magnitudes), p);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "value\n%.17g\n", value);
      emit(opts, stem + ".csv", buf);
    } else if (q.quantity == "histogram") {
      const std::size_t j0 = point_mass_index(sc.initial());
      auto counts = sample_marginal(sc.gamma_at(q.time), j0, q.draws, seed);
      emit(opts, stem + ".csv", histogram_to_csv(counts));
    } else if (q.quantity == "density") {
      if (!sc.has_unitary_family())
        throw PreconditionError("density query needs a unitary family");
      EvolutionOperator theta(sc.unitary().evaluate(q.time),
                              tol::kProb * sc.dim());
      emit(opts, stem + ".txt",
           matrix_to_text(density_matrix(theta, sc.initial()).rho()));
    } else if (q.quantity == "device_probs") {
      if (sc.measurement_events().empty())
        throw PreconditionError("device_probs query needs a measurement event");
      const MeasurementEvent& ev = sc.measurement_events().front();
      if (!sc.has_unitary_family())
        throw PreconditionError("measurement needs a unitary family");
      MeasurementScenario ms = make_scenario(
          spectral_decompose(ev.observable),
          sc.unitary().evaluate(ev.time), ev.device_dim, ev.environment_dim,
          point_mass_index(sc.initial()));
      MeasurementResult res = run_measurement(ms, 2.0);
      std::ostringstream csv;
      csv << "outcome,probability\n";
      char buf[64];
      for (std::size_t a = 0; a < res.device_probs.size(); ++a) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", a + 1,
                      res.device_probs[a]);
        csv << buf;
      }
      emit(opts, stem + ".csv", csv.str());
    }
  }
  return 0;
}

int cmd_interfere(const GlobalOptions& opts, const std::string& ref) {
  const Scenario sc = load_scenario(ref);
  if (!sc.interference())
    throw PreconditionError("scenario has no interference block");
  if (!sc.has_unitary_family())
    throw PreconditionError("interference needs a unitary family");
  const InterferenceSpec& spec = *sc.interference();
  auto profile = divisibility_profile(sc.unitary(), spec.j0, spec.t,
                                      spec.t_prime_grid);
  emit(opts, "interference_profile.csv", profile_to_csv(profile));
  return 0;
}

int cmd_dilate(const GlobalOptions& opts, const std::string& path) {
  const ComplexMatrix theta_raw = read_matrix_file(path);
  const EvolutionOperator theta(theta_raw, 1e-10 * theta_raw.rows());
  const KrausSet kraus = kraus_from_evolution(theta);
  const StinespringResult result = stinespring_dilate(kraus);

  const std::size_t n = result.base_dim;
  const double unitarity =
      (result.unitary.adjoint() * result.unitary -
       ComplexMatrix::identity(n * n * n))
          .max_abs();
  const StochasticMatrix gamma = stochastic_from_evolution(theta);
  const StochasticMatrix recon = dilated_dictionary(
      result.unitary, PVM::configuration(n * n), result.ancilla_label);
  double recon_resid = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      recon_resid =
          std::max(recon_resid, std::abs(recon(i, j) - gamma(i, j)));

  emit(opts, "dilated_unitary.txt", matrix_to_text(result.unitary));
  std::cout << "unitarity residual: " << unitarity << "\n"
            << "dictionary reconstruction residual: " << recon_resid << "\n";
  return (unitarity <= opts.tol && recon_resid <= opts.tol) ? 0 : 1;
}

int cmd_measure(const GlobalOptions& opts, const std::string& ref) {
  const Scenario sc = load_scenario(ref);
  if (sc.measurement_events().empty())
    throw PreconditionError("scenario has no measurement event");
  if (!sc.has_unitary_family())
    throw PreconditionError("measurement needs a unitary family");
  const MeasurementEvent& ev = sc.measurement_events().front();
  MeasurementScenario ms = make_scenario(
      spectral_decompose(ev.observable), sc.unitary().evaluate(ev.time),
      ev.device_dim, ev.environment_dim, point_mass_index(sc.initial()));
  MeasurementResult res = run_measurement(ms, 2.0);

  std::ostringstream device_csv;
  device_csv << "outcome,probability\n";
  char buf[64];
  for (std::size_t a = 0; a < res.device_probs.size(); ++a) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", a + 1,
                  res.device_probs[a]);
    device_csv << buf;
  }
  emit(opts, "device_probs.csv", device_csv.str());

  std::ostringstream subject_csv;
  subject_csv << "index,value\n";
  for (std::size_t i = 0; i < res.subject_probs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", i + 1,
                  res.subject_probs[i]);
    subject_csv << buf;
  }
  emit(opts, "subject_probs.csv", subject_csv.str());
  emit(opts, "mixed_density.txt", matrix_to_text(res.mixed_density.rho()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic-quantum correspondence toolkit"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "random seed (overrides scenario)")
      ->each([&](const std::string&) { opts.seed_set = true; });
  app.add_option("--tol", opts.tol, "verification tolerance");
  app.add_option("--out", opts.out_dir, "output directory (default: stdout)");
  app.add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv"}));

  std::string scenario_ref, fixture_path;
  CLI::App* verify = app.add_subcommand("verify", "run consistency checks");
  verify->add_option("scenario", scenario_ref, "scenario file or preset name")
      ->required();
  CLI::App* simulate = app.add_subcommand("simulate", "run scenario queries");
  simulate->add_option("scenario", scenario_ref, "scenario file or preset name")
      ->required();
  CLI::App* interfere =
      app.add_subcommand("interfere", "interference discrepancy sweep");
  interfere
      ->add_option("scenario", scenario_ref, "scenario file or preset name")
      ->required();
  CLI::App* dilate =
      app.add_subcommand("dilate", "Stinespring-dilate an evolution fixture");
  dilate->add_option("fixture", fixture_path, "evolution operator fixture")
      ->required();
  CLI::App* measure = app.add_subcommand("measure", "run measurement event");
  measure->add_option("scenario", scenario_ref, "scenario file or preset name")
      ->required();
  for (CLI::App* sub : {verify, simulate, interfere, dilate, measure})
    sub->fallthrough();  // global flags may also appear after the subcommand

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(opts, scenario_ref);
    if (simulate->parsed()) return cmd_simulate(opts, scenario_ref);
    if (interfere->parsed()) return cmd_interfere(opts, scenario_ref);
    if (dilate->parsed()) return cmd_dilate(opts, fixture_path);
    if (measure->parsed()) return cmd_measure(opts, scenario_ref);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
