#include "sqc/measurement.hpp"

#include <algorithm>
#include <cmath>

namespace sqc {

namespace {

constexpr double kEventTime = 1.0;  // t' of the measurement interaction

void require_injective(const std::vector<std::size_t>& map, std::size_t range,
                       const char* what) {
  std::vector<bool> seen(range, false);
  for (std::size_t v : map) {
    if (v >= range)
      throw PreconditionError(std::string(what) + ": target out of range");
    if (seen[v]) throw PreconditionError(std::string(what) + ": not injective");
    seen[v] = true;
  }
}

}  // namespace

ComplexVector Observable::eigenvector(std::size_t a) const {
  if (ranks_[a] != 1)
    throw PreconditionError("eigenvector: outcome is degenerate");
  const ComplexMatrix& p = projectors_[a];
  // A rank-1 projector is vv†; recover v from its largest column.
  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t j = 0; j < p.cols(); ++j) {
    const double nrm = p.column(j).norm();
    if (nrm > best_norm) {
      best_norm = nrm;
      best = j;
    }
  }
  ComplexVector v = p.column(best);
  return v * cdouble{1.0 / v.norm(), 0.0};
}

Observable spectral_decompose(const ComplexMatrix& m, double degeneracy_tol) {
  if (!m.is_self_adjoint())
    throw PreconditionError("spectral_decompose: not self-adjoint");
  EigenSystem sys = eigh(m);
  const std::size_t n = m.rows();
  const double range = sys.values.back() - sys.values.front();
  const double cluster_gap = degeneracy_tol * std::max(range, 1.0);

  Observable obs;
  obs.matrix_ = m;
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && sys.values[end] - sys.values[end - 1] <= cluster_gap)
      ++end;
    ComplexMatrix proj = ComplexMatrix::zero(n, n);
    double value = 0.0;
    for (std::size_t q = k; q < end; ++q) {
      const ComplexVector v = sys.vectors.column(q);
      proj = proj + ComplexMatrix::outer(v, v);
      value += sys.values[q];
    }
    obs.eigenvalues_.push_back(value / static_cast<double>(end - k));
    obs.projectors_.push_back(std::move(proj));
    obs.ranks_.push_back(end - k);
    k = end;
  }

  // Reconstruction check: Sum a P must give back the matrix.
  ComplexMatrix rebuilt = ComplexMatrix::zero(n, n);
  for (std::size_t a = 0; a < obs.eigenvalues_.size(); ++a)
    rebuilt = rebuilt + obs.projectors_[a] * cdouble{obs.eigenvalues_[a], 0.0};
  if ((rebuilt - m).max_abs() > 1e-9)
    throw std::logic_error("spectral_decompose: reconstruction residual");

  obs.pvm_.dim = n;
  obs.pvm_.projectors = obs.projectors_;
  obs.pvm_.validate();
  return obs;
}

ComplexMatrix emergeable_velocity(const RandomVariable& a,
                                  const UnitaryFamily& u, double dt) {
  if (a.size() != u.dim()) throw DimensionError("emergeable_velocity");
  const ComplexMatrix am = a.as_matrix();
  auto heis = [&](double t) {
    const ComplexMatrix ut = u.evaluate(t);
    return ut.adjoint() * am * ut;
  };
  ComplexMatrix v = (heis(dt) - heis(-dt)) * cdouble{1.0 / (2.0 * dt), 0.0};
  v = (v + v.adjoint()) * cdouble{0.5, 0.0};
  return v;
}

void MeasurementScenario::validate() const {
  const std::size_t outcomes = observable.outcome_count();
  if (observable.dim() != subject_dim)
    throw DimensionError("scenario: observable dimension");
  if (device_dim < outcomes || environment_dim < outcomes)
    throw PreconditionError(
        "scenario: device/environment too small for outcome count");
  if (d_of.size() != outcomes || e_of.size() != outcomes)
    throw DimensionError("scenario: outcome map lengths");
  require_injective(d_of, device_dim, "scenario d_of");
  require_injective(e_of, environment_dim, "scenario e_of");
  if (pre_unitary.rows() != subject_dim || !is_unitary(pre_unitary))
    throw PreconditionError("scenario: pre_unitary invalid");
  if (subject_post.dim() != subject_dim ||
      device_post.dim() != device_dim ||
      environment_post.dim() != environment_dim)
    throw DimensionError("scenario: post family dimensions");
  if (initial_configuration >= subject_dim)
    throw PreconditionError("scenario: initial configuration out of range");
}

MeasurementScenario make_scenario(Observable observable,
                                  ComplexMatrix pre_unitary,
                                  std::size_t device_dim,
                                  std::size_t environment_dim,
                                  std::size_t initial_configuration) {
  const std::size_t n = observable.dim();
  const std::size_t outcomes = observable.outcome_count();
  auto trivial = [](std::size_t d) {
    return UnitaryFamily::constant_hamiltonian(ComplexMatrix::zero(d, d));
  };
  MeasurementScenario s{n,
                        device_dim,
                        environment_dim,
                        std::move(observable),
                        std::move(pre_unitary),
                        {},
                        {},
                        trivial(n),
                        trivial(device_dim),
                        trivial(environment_dim),
                        initial_configuration};
  for (std::size_t a = 0; a < outcomes; ++a) {
    s.d_of.push_back(a);
    s.e_of.push_back(a);
  }
  s.validate();
  return s;
}

MeasurementResult run_measurement(const MeasurementScenario& s, double t) {
  s.validate();
  if (t <= kEventTime)
    throw PreconditionError("run_measurement: query time must exceed t'");
  const std::size_t n = s.subject_dim;
  const std::size_t dd = s.device_dim;
  const std::size_t de = s.environment_dim;
  const std::size_t outcomes = s.observable.outcome_count();
  for (std::size_t a = 0; a < outcomes; ++a)
    if (s.observable.rank(a) != 1)
      throw PreconditionError(
          "run_measurement: degenerate outcomes are not supported; the "
          "device Born rule assumes a nondegenerate spectrum");

  const ComplexVector psi_s = (s.pre_unitary *
                               ComplexVector::basis(n, s.initial_configuration));

  // Device Born rule: p_a = |<e~_a, Psi^S(t')>|^2.
  std::vector<double> device_probs(outcomes);
  std::vector<ComplexVector> eigvecs;
  for (std::size_t a = 0; a < outcomes; ++a) {
    eigvecs.push_back(s.observable.eigenvector(a));
    device_probs[a] = std::norm(eigvecs[a].dot(psi_s));
  }

  // Composite wave function at t' and its factorized post-evolution.
  const double rel_t = t - kEventTime;
  const ComplexMatrix us = s.subject_post.evaluate(rel_t);
  const ComplexMatrix ud = s.device_post.evaluate(rel_t);
  const ComplexMatrix ue = s.environment_post.evaluate(rel_t);

  ComplexVector joint(n * dd * de);
  for (std::size_t a = 0; a < outcomes; ++a) {
    const cdouble amp = eigvecs[a].dot(psi_s);
    if (amp == cdouble{0.0, 0.0}) continue;
    for (std::size_t i = 0; i < n; ++i)
      joint[i * dd * de + s.d_of[a] * de + s.e_of[a]] += amp * eigvecs[a][i];
  }
  const ComplexMatrix full_post = tensor(tensor(us, ud), ue);
  const ComplexVector joint_t = full_post * joint;

  // Brute-force subject marginal at t.
  std::vector<double> subject_probs_bf(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < dd * de; ++q)
      subject_probs_bf[i] += std::norm(joint_t[i * dd * de + q]);

  // Hybrid matrix, trace form: (i, a) -> tr(U^S† P_i U^S P~_a).
  ComplexMatrix hybrid(n, outcomes);
  const PVM config = PVM::configuration(n);
  for (std::size_t a = 0; a < outcomes; ++a)
    for (std::size_t i = 0; i < n; ++i)
      hybrid(i, a) = (us.adjoint() * config.projectors[i] * us *
                      s.observable.projector(a))
                         .trace();

  // Second route: conditional probabilities p(subject i at t | device at
  // d(a)) read off the composite joint distribution. Only meaningful when
  // the device and environment configurations stay frozen after t'.
  {
    const bool device_frozen =
        (ud - ComplexMatrix::identity(dd)).max_abs() < tol::kProb &&
        (ue - ComplexMatrix::identity(de)).max_abs() < tol::kProb;
    if (device_frozen) {
      for (std::size_t a = 0; a < outcomes; ++a) {
        if (device_probs[a] < 1e-12) continue;
        for (std::size_t i = 0; i < n; ++i) {
          double p_joint = 0.0;
          for (std::size_t e = 0; e < de; ++e)
            p_joint += std::norm(joint_t[i * dd * de + s.d_of[a] * de + e]);
          const double conditional = p_joint / device_probs[a];
          if (std::abs(conditional - hybrid(i, a).real()) > 1e-10)
            throw std::logic_error("hybrid matrix routes disagree");
        }
      }
    }
  }

  // Linear relationship p^S = Gamma^{SD} p^D, checked against brute force.
  ProbabilityVector subject_probs(
      [&] {
        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t a = 0; a < outcomes; ++a)
            p[i] += hybrid(i, a).real() * device_probs[a];
        return p;
      }(),
      1e-10);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(subject_probs[i] - subject_probs_bf[i]) > 1e-10)
      throw std::logic_error(
          "subject probabilities: hybrid route disagrees with brute force");

  std::vector<DensityMatrix> conditionals;
  for (std::size_t a = 0; a < outcomes; ++a) {
    ComplexMatrix rho = us * s.observable.projector(a) * us.adjoint();
    conditionals.emplace_back(std::move(rho), tol::kProb * n);
  }
  ComplexMatrix mixed = ComplexMatrix::zero(n, n);
  for (std::size_t a = 0; a < outcomes; ++a)
    mixed = mixed + conditionals[a].rho() * cdouble{device_probs[a], 0.0};

  return MeasurementResult{std::move(device_probs), std::move(subject_probs),
                           std::move(hybrid), std::move(conditionals),
                           DensityMatrix(std::move(mixed), tol::kProb * n)};
}

CollapseResult collapse(const MeasurementScenario& s, std::size_t outcome,
                        double t) {
  s.validate();
  if (outcome >= s.observable.outcome_count())
    throw PreconditionError("collapse: invalid outcome label");
  if (t < kEventTime)
    throw PreconditionError("collapse: time before the measurement event");
  const ComplexMatrix us = s.subject_post.evaluate(t - kEventTime);
  const std::size_t rank = s.observable.rank(outcome);

  ComplexMatrix rho =
      us * s.observable.projector(outcome) * us.adjoint() *
      cdouble{1.0 / static_cast<double>(rank), 0.0};
  CollapseResult res{std::nullopt,
                     DensityMatrix(std::move(rho), tol::kProb * s.subject_dim)};
  if (rank == 1)
    res.state = StateVector(us * s.observable.eigenvector(outcome));
  return res;
}

UncertaintyResult uncertainty_check(const Observable& a, const Observable& b,
                                    const DensityMatrix& rho) {
  if (a.dim() != rho.size() || b.dim() != rho.size())
    throw DimensionError("uncertainty_check");
  auto spread = [&](const ComplexMatrix& x) {
    const double mean = (x * rho.rho()).trace().real();
    const double second = (x * x * rho.rho()).trace().real();
    double radicand = second - mean * mean;
    if (radicand < -1e-12)
      throw std::logic_error("uncertainty_check: negative variance");
    return std::sqrt(std::max(0.0, radicand));
  };
  UncertaintyResult res;
  res.lhs = spread(a.matrix()) * spread(b.matrix());
  const ComplexMatrix comm =
      a.matrix() * b.matrix() - b.matrix() * a.matrix();
  res.rhs = 0.5 * std::abs((comm * rho.rho() * cdouble{0.0, 1.0}).trace());
  res.satisfied = res.lhs >= res.rhs - 1e-10;
  return res;
}

}  // namespace sqc
