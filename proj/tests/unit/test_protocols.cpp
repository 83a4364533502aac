#include <cmath>

#include "doctest.h"
#include "ringmem/protocols.hpp"
#include "support.hpp"

using namespace ringmem;

namespace {

const std::vector<FockTerm> kQubitPlus = {{1.0, {1, 0}}, {1.0, {0, 1}}};

ScenarioConfig lossless(ScenarioKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  c.lossy_cavities.assign(kind == ScenarioKind::Entangled ? 2 : 1, false);
  return c;
}

}  // namespace

TEST_CASE("qubit map: computational index 2 n_ell + n_mell") {
  CHECK(QubitMap::index(0, 0) == 0);
  CHECK(QubitMap::index(0, 1) == 1);
  CHECK(QubitMap::index(1, 0) == 2);
  CHECK(QubitMap::index(1, 1) == 3);
  for (int i = 0; i < 4; ++i) {
    const auto [a, b] = QubitMap::occupations(i);
    CHECK(QubitMap::index(a, b) == i);
  }
  CHECK_THROWS_AS(QubitMap::index(2, 0), Error);
  CHECK_THROWS_AS(QubitMap::occupations(4), Error);
}

TEST_CASE("qubit map: two-cavity labels 4p + q - 5") {
  CHECK(QubitMap::composite_index(1, 1) == 0);
  CHECK(QubitMap::composite_index(1, 3) == 2);
  CHECK(QubitMap::composite_index(2, 1) == 4);
  CHECK(QubitMap::composite_index(3, 3) == 10);
  // |0,1>_1 |1,0>_2: computational indices 1 and 2.
  CHECK(QubitMap::composite_index(QubitMap::index(0, 1), QubitMap::index(1, 0)) == 1);
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      const auto [pp, qq] = QubitMap::composite_split(QubitMap::composite_index(p, q));
      CHECK(pp == p);
      CHECK(qq == q);
    }
  // 3 and 7 fall between the rows of the label table.
  CHECK_THROWS_AS(QubitMap::composite_split(3), Error);
  CHECK_THROWS_AS(QubitMap::composite_split(7), Error);
  CHECK_THROWS_AS(QubitMap::composite_index(0, 1), Error);
}

TEST_CASE("scenario names round-trip") {
  for (auto k : {ScenarioKind::Single, ScenarioKind::Superposition, ScenarioKind::Entangled,
                 ScenarioKind::FockSeries})
    CHECK(scenario_kind_from(to_string(k)) == k);
  CHECK_THROWS_AS(scenario_kind_from("double"), Error);
}

TEST_CASE("scenario validation") {
  ScenarioConfig c;
  CHECK_NOTHROW(validate(c));
  c.storage_time = -1.0;
  CHECK_THROWS_AS(validate(c), Error);
  c = ScenarioConfig{};
  c.cutoff = 1;
  CHECK_THROWS_AS(validate(c), Error);
  c = ScenarioConfig{};
  c.branch_scales = {1.0, 1.0};
  CHECK_THROWS_AS(validate(c), Error);
  c = ScenarioConfig{};
  c.initial_state = {{1.0, {2}}};
  CHECK_THROWS_AS(validate(c), Error);
  c = ScenarioConfig{};
  c.t_off_offset = -1.0;
  CHECK_THROWS_AS(run_protocol(c), Error);
}

TEST_CASE("write and read pulses last pi / (2 G~)") {
  ScenarioConfig c;
  const auto r = run_protocol(c);
  const double pulse = M_PI / (2 * 4 * c.physical.cavity_decay);
  CHECK(r.t_off == doctest::Approx(pulse).epsilon(1e-12));
  CHECK(r.t_on - r.t_off == doctest::Approx(613e-6).epsilon(1e-12));
  CHECK(r.t_read - r.t_on == doctest::Approx(pulse).epsilon(1e-12));
  CHECK(r.trajectory.times.front() == 0.0);
  CHECK(r.trajectory.times.back() == r.t_read);
  for (double tr : r.trajectory.observables.at("trace")) CHECK(std::abs(tr - 1.0) < 1e-6);
  CHECK(r.metrics.classical_bound == 2.0 / 3.0);
  CHECK(r.metrics.fidelity > 0.0);
  CHECK(r.metrics.fidelity < 1.0);
  CHECK(r.constraints.all_ok());
}

TEST_CASE("write offset shortens only the write pulse") {
  ScenarioConfig c;
  c.t_off_offset = -5e-6;
  const auto r = run_protocol(c);
  const double pulse = M_PI / (2 * 4 * c.physical.cavity_decay);
  CHECK(r.t_off == doctest::Approx(pulse - 5e-6).epsilon(1e-12));
  CHECK(r.t_read - r.t_on == doctest::Approx(pulse).epsilon(1e-12));
}

TEST_CASE("lossless memory returns the photon") {
  auto c = lossless(ScenarioKind::Single);
  const auto r = run_protocol(c);
  CHECK(r.metrics.fidelity == doctest::Approx(1.0).epsilon(1e-7));

  c = lossless(ScenarioKind::Superposition);
  c.initial_state = kQubitPlus;
  CHECK(run_protocol(c).metrics.fidelity == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("two swaps imprint (-1)^n, undone by a read phase of pi") {
  auto c = lossless(ScenarioKind::FockSeries);
  c.cutoff = 3;
  c.initial_state = {{1.0, {0}}, {1.0, {1}}};
  CHECK(run_protocol(c).metrics.fidelity < 1e-7);
  c.read_phase = M_PI;
  CHECK(run_protocol(c).metrics.fidelity == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("fidelity falls with storage time once the cavity has emptied") {
  // Below a few cavity lifetimes the write residue left in the cavity still
  // interferes with the read pulse, so the curve is not monotone there.
  for (auto kind : {ScenarioKind::Single, ScenarioKind::Superposition, ScenarioKind::Entangled,
                    ScenarioKind::FockSeries}) {
    CAPTURE(to_string(kind));
    ScenarioConfig c;
    c.kind = kind;
    double previous = 1.0;
    for (double t : {1e-2, 3e-2, 1e-1, 1.0, 3.0}) {
      c.storage_time = t;
      const double f = run_protocol(c).metrics.fidelity;
      CHECK(f < previous);
      previous = f;
    }
  }
}

TEST_CASE("an idle branch leaves its mode alone") {
  auto c = lossless(ScenarioKind::Superposition);
  c.initial_state = kQubitPlus;
  c.branch_scales = {1.0, 0.0};
  c.read_phase = M_PI;  // otherwise the active branch comes back with a sign flip
  const auto r = run_protocol(c);
  CHECK(r.metrics.fidelity == doctest::Approx(1.0).epsilon(1e-7));
  for (double n : r.trajectory.observables.at("n_d")) CHECK(std::abs(n) < 1e-12);
  for (double n : r.trajectory.observables.at("n_a_mell")) CHECK(std::abs(n - 0.5) < 1e-12);
}

TEST_CASE("an uncoupled lossy branch decays like a bare cavity") {
  ScenarioConfig c;
  c.kind = ScenarioKind::Superposition;
  c.storage_time = 1e-4;
  c.branch_scales = {1.0, 0.0};
  const auto r = run_protocol(c);
  const auto& t = r.trajectory.times;
  const auto& n = r.trajectory.observables.at("n_a_mell");
  for (std::size_t k = 0; k < t.size(); ++k)
    CHECK(std::abs(n[k] - 0.5 * std::exp(-c.physical.cavity_decay * t[k])) < 1e-7);
}

TEST_CASE("branches never exchange population") {
  const auto r = run_protocol(lossless(ScenarioKind::Superposition));
  const auto& obs = r.trajectory.observables;
  for (std::size_t k = 0; k < r.trajectory.times.size(); ++k) {
    CHECK(std::abs(obs.at("n_a_ell")[k] + obs.at("n_c")[k] - 0.5) < 1e-10);
    CHECK(std::abs(obs.at("n_a_mell")[k] + obs.at("n_d")[k] - 0.5) < 1e-10);
  }
}

TEST_CASE("an idle lossless second cavity keeps its marginal") {
  ScenarioConfig c;
  c.kind = ScenarioKind::Entangled;
  c.storage_time = 1e-4;
  c.branch_scales = {1.0, 1.0, 0.0, 0.0};
  c.lossy_cavities = {true, false};
  const double t_read = run_protocol(c).t_read;
  IntegratorOptions opt;
  for (int k = 0; k <= 8; ++k) opt.checkpoint_times.push_back(t_read * k / 8.0);
  const auto r = run_protocol(c, opt);
  const std::vector<std::string> second = {"a_ell_2", "a_mell_2", "c_2", "d_2"};
  REQUIRE(r.trajectory.checkpoints.size() >= 9);  // plus the phase boundaries
  const Matrix start = partial_trace(r.trajectory.checkpoints.front().state, second).data();
  for (const auto& cp : r.trajectory.checkpoints)
    CHECK(testing::max_abs(partial_trace(cp.state, second).data() - start) < 1e-8);
}

TEST_CASE("product input through two cavities factorizes") {
  ScenarioConfig single;
  single.kind = ScenarioKind::Superposition;
  single.storage_time = 1e-5;
  single.initial_state = kQubitPlus;
  // RK4 on a sum of commuting generators factorizes only up to truncation
  // error, so both runs use a fine step.
  IntegratorOptions fine;
  fine.step_fraction = 1.0 / 200.0;
  const auto one = run_protocol(single, fine);

  ScenarioConfig pair = single;
  pair.kind = ScenarioKind::Entangled;
  pair.initial_state = {{1.0, {1, 0, 1, 0}}, {1.0, {1, 0, 0, 1}}, {1.0, {0, 1, 1, 0}},
                        {1.0, {0, 1, 0, 1}}};
  const auto two = run_protocol(pair, fine);
  const Matrix expected = testing::kron(one.rho_retrieved.data(), one.rho_retrieved.data());
  CHECK(testing::max_abs(two.rho_retrieved.data() - expected) < 1e-9);
  REQUIRE(two.metrics.log_negativity.has_value());
  CHECK(std::abs(*two.metrics.log_negativity) < 1e-9);
}

TEST_CASE("default inputs") {
  CHECK(default_input(ScenarioKind::Single, 2).data()(1, 1).real() == 1.0);
  CHECK(default_input(ScenarioKind::Superposition, 2).space().mode_count() == 2);
  CHECK(default_input(ScenarioKind::Entangled, 2).space().mode_count() == 4);
  CHECK(scenario_space(ScenarioKind::Entangled, 2).dim() == 256);
}
