#pragma once

// Write / store / read runs for the three memory scenarios and the Fock-state
// series, plus the occupation-to-qubit bookkeeping.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringmem/dynamics.hpp"
#include "ringmem/metrics.hpp"
#include "ringmem/model.hpp"
#include "ringmem/optics.hpp"

namespace ringmem {

enum class ScenarioKind { Single, Superposition, Entangled, FockSeries };

std::string to_string(ScenarioKind kind);
// Throws InvalidArgument for unknown names.
ScenarioKind scenario_kind_from(const std::string& name);

// How the boosted coupling is obtained.
enum class CouplingSource {
  Ratio,  // G~ = coupling_ratio * gamma_0, control power back-computed
  Power,  // G~ follows from physical.control_power
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Single;
  PhysicalParams physical = default_parameters();  // per cavity
  double storage_time = 613e-6;                  // t_on - t_off, s
  double coupling_ratio = 4.0;
  CouplingSource coupling_source = CouplingSource::Ratio;
  bool interactions_enabled = false;  // side modes shifted by 4 g~ N
  int cutoff = 2;                     // Fock levels per mode
  // Photonic input over the scenario's photonic modes.  Empty selects the
  // scenario default: |1> on a_ell, the OAM superposition, or the SPDC pair.
  std::vector<FockTerm> initial_state;
  // Per-branch coupling scale in [0, 1], in Hamiltonian coupling order.
  // Empty means every branch at full strength.
  std::vector<double> branch_scales;
  // Shifts the end of the write pulse away from pi/(2 G~); the read pulse
  // keeps its nominal length.
  double t_off_offset = 0;
  // Control phase during readout.
  double read_phase = 0;
  // Per-branch loss switches; false turns off both cavity and side-mode
  // damping on that cavity (entangled) or branch.
  std::vector<bool> lossy_cavities;
  int samples_per_decade = 25;  // storage-phase sampling
  bool wigner = false;          // attach min W for single-mode outputs
  PhaseSpaceGrid wigner_grid;
};

// Throws InvalidArgument.
void validate(const ScenarioConfig& config);

// Photonic and side-mode labels of a scenario, in space order.
std::vector<std::string> photonic_modes(ScenarioKind kind);
std::vector<std::string> side_modes(ScenarioKind kind);
CompositeSpace scenario_space(ScenarioKind kind, int cutoff);

// Default photonic input of a scenario.
StateMatrix default_input(ScenarioKind kind, int cutoff);

struct ProtocolResult {
  ScenarioConfig config;
  DerivedParams derived;
  ConstraintReport constraints;
  StateMatrix rho_initial;    // photonic modes only
  StateMatrix rho_retrieved;  // photonic modes at t_read
  Trajectory trajectory;
  ControlEnvelope schedule;  // write, store (if nonzero), read
  double t_off = 0;
  double t_on = 0;
  double t_read = 0;
  double pulse_step = 0;  // sampling step inside the pulses
  MetricsReport metrics;
};

ProtocolResult run_protocol(const ScenarioConfig& config,
                            const IntegratorOptions& options = {});

// (n_ell, n_mell) <-> computational index 2 n_ell + n_mell.
struct QubitMap {
  static int index(int n_ell, int n_mell);
  static std::pair<int, int> occupations(int index);
  // Two-cavity label n = 4p + q - 5 for p, q in {1, 2, 3}.
  static int composite_index(int p, int q);
  static std::pair<int, int> composite_split(int n);
};

struct QubitProjection {
  Matrix matrix;  // 4x4, computational order
  double discarded_weight = 0;
  bool warning = false;  // discarded weight above 1e-6
};

// Projects a two-mode state onto occupations {0, 1} per mode and reorders it
// into computational order.
QubitProjection map_to_qubit_basis(const StateMatrix& rho_two_mode);

// Same for the four photonic modes of the entangled scenario: 16x16 in the
// order 4 p + q with p, q computational indices of cavity 1 and 2.
QubitProjection map_to_two_qubit_pair(const StateMatrix& rho_four_mode);

}  // namespace ringmem
