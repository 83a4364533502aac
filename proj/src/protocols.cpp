#include "ringmem/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace ringmem {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, what);
}

std::size_t branch_count(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Single:
    case ScenarioKind::FockSeries:
      return 1;
    case ScenarioKind::Superposition:
      return 2;
    case ScenarioKind::Entangled:
      return 4;
  }
  return 0;
}

std::size_t cavity_count(ScenarioKind kind) { return kind == ScenarioKind::Entangled ? 2 : 1; }

// Cavity owning a mode label; labels without a suffix belong to cavity 0.
std::size_t cavity_of(const std::string& label) {
  if (label.size() > 2 && label[label.size() - 2] == '_' && label.back() == '2') return 1;
  return 0;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    out.push_back(k == n ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n));
  return out;
}

// Offsets t - t_start on a log grid from `first` to `span`, ending exactly at
// `span`.
std::vector<double> log_offsets(double first, double span, int per_decade) {
  std::vector<double> out;
  if (span <= 0.0) return out;
  first = std::min(first, span);
  const double decades = std::log10(span / first);
  const auto n = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9));
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(first * std::pow(10.0, static_cast<double>(k) / per_decade));
  out.push_back(span);
  return out;
}

ControlEnvelope protocol_envelope(double t_off, double t_on, double t_read, double coupling,
                                  double scale, double read_phase) {
  std::vector<EnvelopeSegment> segs;
  segs.push_back({0.0, t_off, scale, 0.0});
  if (t_on > t_off) segs.push_back({t_off, t_on, 0.0, 0.0});
  segs.push_back({t_on, t_read, scale, read_phase});
  return ControlEnvelope(std::move(segs), coupling);
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Single:
      return "single";
    case ScenarioKind::Superposition:
      return "superposition";
    case ScenarioKind::Entangled:
      return "entangled";
    case ScenarioKind::FockSeries:
      return "fock_series";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from(const std::string& name) {
  if (name == "single") return ScenarioKind::Single;
  if (name == "superposition") return ScenarioKind::Superposition;
  if (name == "entangled") return ScenarioKind::Entangled;
  if (name == "fock_series") return ScenarioKind::FockSeries;
  invalid("unknown scenario kind '" + name + "'");
}

void validate(const ScenarioConfig& c) {
  validate(c.physical);
  if (!(c.storage_time >= 0.0) || !std::isfinite(c.storage_time))
    invalid("storage_time must be >= 0");
  if (!(c.coupling_ratio > 0.0) || !std::isfinite(c.coupling_ratio))
    invalid("coupling_ratio must be > 0");
  if (c.cutoff < 2) invalid("cutoff must be >= 2");
  if (c.kind == ScenarioKind::Entangled && c.cutoff > 3)
    invalid("entangled scenario supports cutoff 2 or 3");
  if (!std::isfinite(c.t_off_offset)) invalid("t_off_offset must be finite");
  if (!std::isfinite(c.read_phase)) invalid("read_phase must be finite");
  if (!c.branch_scales.empty()) {
    if (c.branch_scales.size() != branch_count(c.kind)) {
      std::ostringstream os;
      os << "branch_scales needs " << branch_count(c.kind) << " entries for scenario "
         << to_string(c.kind);
      invalid(os.str());
    }
    for (double s : c.branch_scales)
      if (!(s >= 0.0 && s <= 1.0)) invalid("branch scale must lie in [0, 1]");
  }
  if (!c.lossy_cavities.empty() && c.lossy_cavities.size() != cavity_count(c.kind))
    invalid("lossy_cavities needs one entry per cavity");
  if (c.samples_per_decade < 1) invalid("samples_per_decade must be >= 1");
  for (const auto& term : c.initial_state) {
    if (term.occupations.size() != photonic_modes(c.kind).size())
      invalid("initial_state term has the wrong number of occupations");
    for (int n : term.occupations)
      if (n < 0 || n >= c.cutoff) invalid("initial_state occupation outside the cutoff");
  }
}

std::vector<std::string> photonic_modes(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Single:
    case ScenarioKind::FockSeries:
      return {modes::a_ell};
    case ScenarioKind::Superposition:
      return {modes::a_ell, modes::a_mell};
    case ScenarioKind::Entangled:
      return {modes::labeled(modes::a_ell, 1), modes::labeled(modes::a_mell, 1),
              modes::labeled(modes::a_ell, 2), modes::labeled(modes::a_mell, 2)};
  }
  return {};
}

std::vector<std::string> side_modes(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Single:
    case ScenarioKind::FockSeries:
      return {modes::c};
    case ScenarioKind::Superposition:
      return {modes::c, modes::d};
    case ScenarioKind::Entangled:
      return {modes::labeled(modes::c, 1), modes::labeled(modes::d, 1),
              modes::labeled(modes::c, 2), modes::labeled(modes::d, 2)};
  }
  return {};
}

CompositeSpace scenario_space(ScenarioKind kind, int cutoff) {
  std::vector<ModeSpace> ms;
  for (const auto& l : photonic_modes(kind)) ms.push_back({l, cutoff});
  for (const auto& l : side_modes(kind)) ms.push_back({l, cutoff});
  return CompositeSpace(std::move(ms));
}

StateMatrix default_input(ScenarioKind kind, int cutoff) {
  switch (kind) {
    case ScenarioKind::Single:
    case ScenarioKind::FockSeries:
      return fock_ket(CompositeSpace({{modes::a_ell, cutoff}}), {1});
    case ScenarioKind::Superposition:
      return make_superposition_input(cutoff);
    case ScenarioKind::Entangled:
      return make_entangled_input(cutoff);
  }
  invalid("unknown scenario kind");
}

ProtocolResult run_protocol(const ScenarioConfig& config, const IntegratorOptions& options) {
  validate(config);
  const ScenarioKind kind = config.kind;
  const DerivedParams derived = config.coupling_source == CouplingSource::Ratio
                                    ? calibrate(config.physical, config.coupling_ratio)
                                    : derive(config.physical);
  const ConstraintReport constraints = check_constraints(config.physical, derived);

  const double coupling = derived.boosted_coupling;
  const double pulse = derived.swap_time;
  const double t_off = pulse + config.t_off_offset;
  if (!(t_off > 0.0)) invalid("t_off_offset leaves no write pulse");
  const double t_on = t_off + config.storage_time;
  const double t_read = t_on + pulse;

  const CompositeSpace space = scenario_space(kind, config.cutoff);
  const auto photonic = photonic_modes(kind);
  const auto sides = side_modes(kind);

  // Envelopes, one per coupled branch.
  std::vector<double> scales = config.branch_scales;
  if (scales.empty()) scales.assign(branch_count(kind), 1.0);
  std::vector<ControlEnvelope> env;
  for (double s : scales)
    env.push_back(protocol_envelope(t_off, t_on, t_read, coupling, s, config.read_phase));
  const ControlEnvelope schedule =
      protocol_envelope(t_off, t_on, t_read, coupling, 1.0, config.read_phase);

  const double offset = config.interactions_enabled ? interaction_shift(config.physical) : 0.0;
  Hamiltonian h = [&] {
    switch (kind) {
      case ScenarioKind::Single:
      case ScenarioKind::FockSeries:
        return hamiltonian_single(space, env[0], offset);
      case ScenarioKind::Superposition:
        return hamiltonian_superposition(space, env[0], env[1], offset, offset);
      case ScenarioKind::Entangled:
        return hamiltonian_entangled(space, {env[0], env[1], env[2], env[3]},
                                     {offset, offset, offset, offset});
    }
    invalid("unknown scenario kind");
  }();

  std::vector<CollapseChannel> channels;
  auto lossy = [&](const std::string& label) {
    return config.lossy_cavities.empty() || config.lossy_cavities[cavity_of(label)];
  };
  for (const auto& l : photonic)
    if (lossy(l)) channels.push_back(damping(space, l, config.physical.cavity_decay));
  for (const auto& l : sides)
    if (lossy(l)) channels.push_back(damping(space, l, config.physical.mechanical_decay));

  const LindbladSystem system{space, std::move(h), std::move(channels)};

  // Inputs.
  const CompositeSpace photonic_space = space.subspace(photonic);
  StateMatrix rho_photonic = config.initial_state.empty()
                                 ? default_input(kind, config.cutoff)
                                 : superpose(photonic_space, config.initial_state);
  std::vector<int> vacuum(sides.size(), 0);
  const StateMatrix rho0 = tensor(rho_photonic, fock_ket(space.subspace(sides), vacuum));

  // Sample grid: integrator-step resolution in the pulses, log spacing in
  // between.
  const double h_nominal = options.step_fraction / std::max(coupling, std::abs(offset));
  const auto n_write = static_cast<std::size_t>(std::max(1.0, std::ceil(t_off / h_nominal)));
  const auto n_read = static_cast<std::size_t>(std::max(1.0, std::ceil(pulse / h_nominal)));
  const double pulse_step = pulse / static_cast<double>(n_read);
  std::vector<double> samples = uniform_grid(0.0, t_off, n_write);
  for (double tau : log_offsets(pulse_step, config.storage_time, config.samples_per_decade))
    samples.push_back(t_off + tau);
  for (double t : uniform_grid(t_on, t_read, n_read)) samples.push_back(t);
  samples.back() = t_read;
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  IntegratorOptions opts = options;
  for (double t : {0.0, t_off, t_on, t_read}) opts.checkpoint_times.push_back(t);
  std::sort(opts.checkpoint_times.begin(), opts.checkpoint_times.end());
  opts.checkpoint_times.erase(
      std::unique(opts.checkpoint_times.begin(), opts.checkpoint_times.end()),
      opts.checkpoint_times.end());

  Trajectory traj = integrate(system, rho0, schedule, samples, opts);
  StateMatrix retrieved = partial_trace(traj.final_state, photonic);

  AssessOptions ao;
  ao.grid = config.wigner_grid;
  switch (kind) {
    case ScenarioKind::Single:
    case ScenarioKind::FockSeries:
      ao.wigner = config.wigner;
      break;
    case ScenarioKind::Superposition:
      break;
    case ScenarioKind::Entangled:
      ao.bipartition = {photonic[0], photonic[1]};
      ao.benchmark = Benchmark::Teleport;
      ao.benchmark_size = 4;
      break;
  }
  MetricsReport metrics = assess(rho_photonic, retrieved, ao);

  return ProtocolResult{config,
                        derived,
                        constraints,
                        std::move(rho_photonic),
                        std::move(retrieved),
                        std::move(traj),
                        schedule,
                        t_off,
                        t_on,
                        t_read,
                        pulse_step,
                        std::move(metrics)};
}

int QubitMap::index(int n_ell, int n_mell) {
  if ((n_ell != 0 && n_ell != 1) || (n_mell != 0 && n_mell != 1))
    invalid("qubit map covers occupations 0 and 1 only");
  return 2 * n_ell + n_mell;
}

std::pair<int, int> QubitMap::occupations(int index) {
  if (index < 0 || index > 3) invalid("computational index must be in 0..3");
  return {index / 2, index % 2};
}

int QubitMap::composite_index(int p, int q) {
  if (p < 1 || p > 3 || q < 1 || q > 3) invalid("composite labels p, q must be in 1..3");
  return 4 * p + q - 5;
}

std::pair<int, int> QubitMap::composite_split(int n) {
  const int p = (n + 5) / 4;
  const int q = (n + 5) % 4;
  if (n < 0 || q == 0 || p < 1 || p > 3) invalid("composite index outside the p, q in 1..3 domain");
  return {p, q};
}

QubitProjection map_to_qubit_basis(const StateMatrix& rho) {
  const CompositeSpace& s = rho.space();
  if (s.mode_count() != 2) invalid("qubit map needs a two-mode state");
  if (s.mode(0).cutoff < 2 || s.mode(1).cutoff < 2) invalid("qubit map needs cutoff >= 2");
  std::array<std::size_t, 4> idx{};
  for (int k = 0; k < 4; ++k) {
    const auto [a, b] = QubitMap::occupations(k);
    idx[static_cast<std::size_t>(k)] = s.basis_index({a, b});
  }
  QubitProjection out;
  out.matrix = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.matrix(i, j) = rho.data()(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
  out.discarded_weight = std::max(0.0, rho.trace() - out.matrix.trace().real());
  out.warning = out.discarded_weight > 1e-6;
  return out;
}

QubitProjection map_to_two_qubit_pair(const StateMatrix& rho) {
  const CompositeSpace& s = rho.space();
  if (s.mode_count() != 4) invalid("two-cavity qubit map needs a four-mode state");
  for (const auto& m : s.modes())
    if (m.cutoff < 2) invalid("qubit map needs cutoff >= 2");
  std::array<std::size_t, 16> idx{};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      const auto [a1, b1] = QubitMap::occupations(p);
      const auto [a2, b2] = QubitMap::occupations(q);
      idx[static_cast<std::size_t>(4 * p + q)] = s.basis_index({a1, b1, a2, b2});
    }
  QubitProjection out;
  out.matrix = Matrix::Zero(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      out.matrix(i, j) = rho.data()(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]),
                                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(j)]));
  out.discarded_weight = std::max(0.0, rho.trace() - out.matrix.trace().real());
  out.warning = out.discarded_weight > 1e-6;
  return out;
}

}  // namespace ringmem
