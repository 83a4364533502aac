#include "doctest.h"
#include "ringmem/metrics.hpp"
#include "ringmem/optics.hpp"
#include "support.hpp"

using namespace ringmem;

namespace {

double hermite_function(int n, double x) {
  // Normalized harmonic-oscillator eigenfunctions by upward recursion.
  double prev = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return prev;
  double cur = std::sqrt(2.0) * x * prev;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// W(x, p) = (1/pi) Int dy <x - y| rho |x + y> exp(2 i p y), by quadrature.
double wigner_quadrature(const Matrix& rho, double x, double p) {
  const int n = static_cast<int>(rho.rows());
  const int steps = 4000;
  const double y0 = -9.0, y1 = 9.0, h = (y1 - y0) / steps;
  Complex sum = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double y = y0 + h * k;
    Complex kernel = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        kernel += rho(a, b) * hermite_function(a, x - y) * hermite_function(b, x + y);
    const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
    sum += w * kernel * std::exp(Complex(0, 2.0 * p * y));
  }
  return (sum * h).real() / M_PI;
}

}  // namespace

TEST_CASE("fidelity agrees with the singular-value oracle on random states") {
  std::mt19937_64 rng(2024);
  const CompositeSpace s({{"a", 2}, {"b", 3}});
  for (int k = 0; k < 50; ++k) {
    const Matrix a = testing::random_density(6, rng);
    const Matrix b = testing::random_density(6, rng);
    const double f = fidelity(StateMatrix(s, a), StateMatrix(s, b));
    CHECK(std::abs(f - testing::fidelity_oracle(a, b)) < 1e-9);
  }
}

TEST_CASE("fidelity properties") {
  std::mt19937_64 rng(99);
  const CompositeSpace s({{"a", 3}});
  const StateMatrix a(s, testing::random_density(3, rng));
  const StateMatrix b(s, testing::random_density(3, rng));
  CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(a, b) == doctest::Approx(fidelity(b, a)).epsilon(1e-10));
  CHECK(fidelity(a, b) <= 1.0 + 1e-12);

  const Matrix u = testing::random_unitary(3, rng);
  const StateMatrix ua(s, u * a.data() * u.adjoint());
  const StateMatrix ub(s, u * b.data() * u.adjoint());
  CHECK(fidelity(ua, ub) == doctest::Approx(fidelity(a, b)).epsilon(1e-10));

  // Pure reference reduces to the overlap.
  const Vector psi = superpose_vector(s, {{1.0, {0}}, {Complex(0.3, 0.4), {2}}});
  const StateMatrix pure = pure_state(s, psi);
  const double overlap = (psi.adjoint() * b.data() * psi)(0, 0).real();
  CHECK(fidelity(pure, b) == doctest::Approx(overlap).epsilon(1e-10));
}

TEST_CASE("hermitian square root clamps round-off and rejects negative input") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 4.0;
  m(1, 1) = -5e-11;
  const Matrix r = hermitian_sqrt(m);
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(std::abs(r(1, 1)) == 0.0);
  m(1, 1) = -1e-6;
  try {
    hermitian_sqrt(m);
    FAIL("negative eigenvalue accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
  }
}

TEST_CASE("log-negativity agrees with the transpose and SVD oracle on random states") {
  std::mt19937_64 rng(77);
  const CompositeSpace s({{"a", 2}, {"b", 3}});
  for (int k = 0; k < 50; ++k) {
    const Matrix rho = testing::random_density(6, rng, 1 + k % 3);
    const double en = log_negativity(StateMatrix(s, rho), {"a"});
    CHECK(std::abs(en - testing::log_negativity_oracle(rho, 2, 3)) < 1e-9);
  }
}

TEST_CASE("log-negativity of reference states") {
  const CompositeSpace s({{"a", 2}, {"b", 2}});
  const auto bell = superpose(s, {{1.0, {0, 0}}, {1.0, {1, 1}}});
  CHECK(log_negativity(bell, {"a"}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_negativity(fock_ket(s, {1, 0}), {"a"}) == doctest::Approx(0.0).epsilon(1e-12));

  const auto pair = make_entangled_input();
  CHECK(std::abs(log_negativity(pair, {"a_ell_1", "a_mell_1"}) - 1.0) < 1e-9);
  // Either side of the cut gives the same value.
  CHECK(std::abs(log_negativity(pair, {"a_ell_2", "a_mell_2"}) - 1.0) < 1e-9);
}

TEST_CASE("Wigner function normalization at the origin") {
  const CompositeSpace s({{"m", 4}});
  CHECK(wigner_at(fock_ket(s, {0}), 0, 0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  CHECK(wigner_at(fock_ket(s, {1}), 0, 0) == doctest::Approx(-1.0 / M_PI).epsilon(1e-12));
  CHECK(wigner_at(fock_ket(s, {2}), 0, 0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("Wigner function agrees with the position-space quadrature") {
  std::mt19937_64 rng(5150);
  const CompositeSpace s({{"m", 4}});
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int k = 0; k < 6; ++k) {
    const StateMatrix rho(s, testing::random_density(4, rng, 1 + k % 4));
    for (int j = 0; j < 4; ++j) {
      const double x = u(rng), p = u(rng);
      CHECK(std::abs(wigner_at(rho, x, p) - wigner_quadrature(rho.data(), x, p)) < 1e-9);
    }
  }
}

TEST_CASE("Wigner grid integrates to one and keeps Fock negativity") {
  const CompositeSpace s({{"m", 3}});
  const auto w1 = wigner(fock_ket(s, {1}));
  CHECK(w1.integral() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(w1.min() == doctest::Approx(-1.0 / M_PI).epsilon(1e-9));
  const auto w0 = wigner(fock_ket(s, {0}));
  CHECK(w0.min() >= 0.0);
  CHECK(w0.max() == doctest::Approx(1.0 / M_PI).epsilon(1e-9));
}

TEST_CASE("classical benchmarks are exact") {
  CHECK(classical_bound(Benchmark::QubitMemory, 1) == 2.0 / 3.0);
  CHECK(classical_bound(Benchmark::Teleport, 4) == 2.0 / 5.0);
  CHECK(classical_bound(Benchmark::QubitMemory, 2) == 3.0 / 4.0);
  CHECK_THROWS_AS(classical_bound(Benchmark::Teleport, 0), Error);
}

TEST_CASE("assess reports the requested quantities") {
  const auto pair = make_entangled_input();
  AssessOptions opt;
  opt.bipartition = {"a_ell_1", "a_mell_1"};
  opt.benchmark = Benchmark::Teleport;
  opt.benchmark_size = 4;
  const auto m = assess(pair, pair, opt);
  CHECK(m.fidelity == doctest::Approx(1.0));
  REQUIRE(m.log_negativity.has_value());
  CHECK(*m.log_negativity == doctest::Approx(1.0));
  CHECK(m.classical_bound == 2.0 / 5.0);
  CHECK_FALSE(m.wigner_min.has_value());
  CHECK(m.mean_occupations.at("a_ell_1") == doctest::Approx(0.5));
}
