#include <cmath>

#include "doctest.h"
#include "ringmem/dynamics.hpp"
#include "support.hpp"

using namespace ringmem;

namespace {

const CompositeSpace kPair({{modes::a_ell, 3}, {modes::c, 3}});

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
  return v;
}

// Coupling on over [0, t1], off until t2.
ControlEnvelope swap_then_hold(double g, double t1, double t2) {
  return ControlEnvelope({{0.0, t1, 1.0, 0.0}, {t1, t2, 0.0, 0.0}}, g);
}

double min_eigenvalue(const Matrix& m) { return hermitian_eigenvalues(m)(0); }

}  // namespace

TEST_CASE("envelope segment lookup") {
  const ControlEnvelope e({{0.0, 1.0, 1.0, 0.0}, {1.0, 2.0, 0.0, 0.0}, {2.0, 3.0, 0.5, M_PI}}, 4.0);
  CHECK(e.segment_at(0.5) == 0);
  CHECK(e.segment_at(1.0) == 1);
  CHECK(e.segment_at(3.0) == 2);
  CHECK(std::abs(e.coupling(2.5) - Complex(-2.0, 0.0)) < 1e-12);
  CHECK(e.max_coupling() == 4.0);
  CHECK(e.t_final() == 3.0);
  CHECK_THROWS_AS(ControlEnvelope({{0.0, 1.0, 1.0, 0.0}, {1.5, 2.0, 1.0, 0.0}}, 1.0), Error);
  CHECK_THROWS_AS(ControlEnvelope({{0.0, 1.0, 1.5, 0.0}}, 1.0), Error);
}

TEST_CASE("Lindblad generator is trace-free and Hermiticity-preserving") {
  std::mt19937_64 rng(31);
  const auto env = constant_envelope(1.0, 3.0);
  const auto h = hamiltonian_single(kPair, env, 0.7);
  const std::vector<CollapseChannel> ch{damping(kPair, modes::a_ell, 0.4),
                                        damping(kPair, modes::c, 0.1)};
  for (int k = 0; k < 10; ++k) {
    const Matrix rho = testing::random_density(9, rng);
    const Matrix d = lindblad_rhs(rho, h(0.3), ch);
    CHECK(std::abs(d.trace()) < 1e-13);
    CHECK(testing::max_abs(d - d.adjoint()) < 1e-13);
  }
}

TEST_CASE("generator matches the explicit master equation") {
  std::mt19937_64 rng(8);
  const auto h = hamiltonian_single(kPair, constant_envelope(1.0, 2.0), 1.3);
  const Matrix H = h(0.5).data;
  const Matrix a = testing::kron(testing::lowering(3), Matrix::Identity(3, 3));
  const Matrix c = testing::kron(Matrix::Identity(3, 3), testing::lowering(3));
  const Matrix rho = testing::random_density(9, rng);
  const double ga = 0.6, gc = 0.2;
  Matrix expected = Complex(0, -1) * (H * rho - rho * H);
  for (auto [L, g] : {std::pair<Matrix, double>{a, ga}, {c, gc}})
    expected += g * (L * rho * L.adjoint() - 0.5 * (L.adjoint() * L * rho + rho * L.adjoint() * L));
  const Matrix got =
      lindblad_rhs(rho, h(0.5), {damping(kPair, modes::a_ell, ga), damping(kPair, modes::c, gc)});
  CHECK(testing::max_abs(got - expected) < 1e-13);
}

TEST_CASE("lossless swap follows the Rabi oracle") {
  const double g = 2.0 * M_PI * 4e3;
  const double t_end = 3.0 * M_PI / (2.0 * g);
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, constant_envelope(t_end, g), 0.0), {}};
  const auto samples = linspace(0.0, t_end, 61);
  const auto traj = integrate(sys, fock_ket(kPair, {1, 0}), constant_envelope(t_end, g), samples);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double s = std::sin(g * samples[k]);
    worst = std::max(worst, std::abs(traj.observables.at("n_c")[k] - s * s));
    worst = std::max(worst, std::abs(traj.observables.at("n_a_ell")[k] - (1 - s * s)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("two-photon swap keeps the photon number and reaches |0,2>") {
  const double g = 1.0;
  const double t = M_PI / 2;
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, constant_envelope(t, g), 0.0), {}};
  const auto traj = integrate(sys, fock_ket(kPair, {2, 0}), constant_envelope(t, g), {0.0, t});
  const auto idx = kPair.basis_index({0, 2});
  CHECK(std::abs(traj.final_state.data()(idx, idx).real() - 1.0) < 1e-7);
}

TEST_CASE("detuned swap matches the generalized Rabi formula") {
  const double g = 1.0, delta = 1.5;
  const double t = 2.0;
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, constant_envelope(t, g), delta), {}};
  const auto traj = integrate(sys, fock_ket(kPair, {1, 0}), constant_envelope(t, g), {0.0, t});
  const double omega = std::sqrt(g * g + delta * delta / 4);
  const double expected = g * g / (omega * omega) * std::pow(std::sin(omega * t), 2);
  CHECK(std::abs(traj.observables.at("n_c").back() - expected) < 1e-7);
}

TEST_CASE("analytic storage map agrees with brute-force integration") {
  const double g = 1.0, ga = 0.05, gc = 0.01, delta = 0.8;
  const double t1 = M_PI / 4, t2 = t1 + 40.0;
  const auto env = swap_then_hold(g, t1, t2);
  const CompositeSpace s({{modes::a_ell, 3}, {modes::c, 3}});
  const LindbladSystem sys{s, hamiltonian_single(s, env, delta),
                           {damping(s, modes::a_ell, ga), damping(s, modes::c, gc)}};
  const auto rho0 = superpose(s, {{1.0, {1, 0}}, {0.5, {2, 0}}, {Complex(0, 0.3), {0, 0}}});
  const auto samples = linspace(0.0, t2, 41);

  IntegratorOptions exact;
  IntegratorOptions brute;
  brute.analytic_storage = false;
  const auto a = integrate(sys, rho0, env, samples, exact);
  const auto b = integrate(sys, rho0, env, samples, brute);
  CHECK(a.analytic_intervals > 0);
  CHECK(b.analytic_intervals == 0);
  CHECK(testing::max_abs(a.final_state.data() - b.final_state.data()) < 1e-7);
  for (std::size_t k = 0; k < samples.size(); ++k)
    CHECK(std::abs(a.observables.at("n_c")[k] - b.observables.at("n_c")[k]) < 1e-7);

  // During the hold each occupation decays exponentially.
  std::size_t k = 1;
  while (samples[k] < t1) ++k;
  const double expected = a.observables.at("n_c")[k] * std::exp(-gc * (t2 - samples[k]));
  CHECK(a.observables.at("n_c").back() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("lossy evolution preserves trace and positivity") {
  const double g = 1.0;
  const double t = 6.0;
  const auto env = ControlEnvelope({{0, 2, 1, 0}, {2, 4, 0, 0}, {4, 6, 1, M_PI / 3}}, g);
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, env, 0.3),
                           {damping(kPair, modes::a_ell, 0.5), damping(kPair, modes::c, 0.2)}};
  IntegratorOptions opt;
  opt.checkpoint_times = linspace(0.0, t, 13);
  const auto traj =
      integrate(sys, superpose(kPair, {{1.0, {2, 0}}, {1.0, {1, 1}}}), env, linspace(0, t, 121), opt);
  for (double tr : traj.observables.at("trace")) CHECK(std::abs(tr - 1.0) < 1e-6);
  REQUIRE(traj.checkpoints.size() == 13);
  for (const auto& cp : traj.checkpoints) CHECK(min_eigenvalue(cp.state.data()) >= -1e-6);
  for (double p : traj.observables.at("purity")) CHECK(p <= 1.0 + 1e-9);
}

TEST_CASE("vacuum is a fixed point") {
  const auto env = constant_envelope(5.0, 1.0);
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, env, 0.4),
                           {damping(kPair, modes::a_ell, 0.3), damping(kPair, modes::c, 0.3)}};
  const auto traj = integrate(sys, fock_ket(kPair, {0, 0}), env, {0.0, 2.5, 5.0});
  CHECK(std::abs(traj.final_state.data()(0, 0).real() - 1.0) < 1e-12);
  for (double n : traj.observables.at("n_c")) CHECK(std::abs(n) < 1e-12);
}

TEST_CASE("branches of the superposition Hamiltonian are independent") {
  const CompositeSpace s({{modes::a_ell, 2}, {modes::a_mell, 2}, {modes::c, 2}, {modes::d, 2}});
  const double g = 1.0;
  const auto on = constant_envelope(M_PI / 2, g);
  const auto off = constant_envelope(M_PI / 2, g, 0.0);
  const LindbladSystem sys{s, hamiltonian_superposition(s, on, off, 0.0, 0.0), {}};
  const auto rho0 = superpose(s, {{1.0, {1, 0, 0, 0}}, {1.0, {0, 1, 0, 0}}});
  const auto traj = integrate(sys, rho0, on, linspace(0, M_PI / 2, 11));
  for (double n : traj.observables.at("n_d")) CHECK(std::abs(n) < 1e-12);
  for (double n : traj.observables.at("n_a_mell")) CHECK(std::abs(n - 0.5) < 1e-12);
  CHECK(std::abs(traj.observables.at("n_c").back() - 0.5) < 1e-7);
}

TEST_CASE("integration failures name the segment") {
  const auto env = ControlEnvelope({{0, 1, 0, 0}, {1, 2, 1, 0}}, 1e3);
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, env, 0.0),
                           {damping(kPair, modes::c, 1.0)}};
  IntegratorOptions opt;
  opt.min_step = 1e-3;  // larger than the step the coupling demands
  try {
    integrate(sys, fock_ket(kPair, {1, 0}), env, {0.0, 2.0}, opt);
    FAIL("expected a propagation error");
  } catch (const PropagationError& e) {
    CHECK(e.segment() == 1);
    CHECK(e.kind() == ErrorKind::Propagation);
  }
}

TEST_CASE("sample times outside the schedule are rejected") {
  const auto env = constant_envelope(1.0, 1.0);
  const LindbladSystem sys{kPair, hamiltonian_single(kPair, env, 0.0), {}};
  CHECK_THROWS_AS(integrate(sys, fock_ket(kPair, {1, 0}), env, {0.0, 2.0}), Error);
}
