#pragma once

// Interaction-picture Hamiltonians of the memory and Lindblad propagation
// under a piecewise-constant control envelope.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ringmem/hilbert.hpp"

namespace ringmem {

namespace modes {
inline const std::string a_ell = "a_ell";
inline const std::string a_mell = "a_mell";
inline const std::string c = "c";
inline const std::string d = "d";
// Per-cavity label in the two-cavity system, e.g. labeled("c", 2) == "c_2".
std::string labeled(const std::string& base, int cavity);
}  // namespace modes

struct EnvelopeSegment {
  double t_start = 0;
  double t_end = 0;
  double amplitude_scale = 1;  // in [0, 1]
  double phase = 0;            // control phase, radians
};

// Piecewise-constant control field.  The coupling inside a segment is
// reference_coupling * amplitude_scale * exp(i phase).
class ControlEnvelope {
 public:
  ControlEnvelope(std::vector<EnvelopeSegment> segments, double reference_coupling);

  const std::vector<EnvelopeSegment>& segments() const noexcept { return segments_; }
  double reference_coupling() const noexcept { return reference_; }
  double t_final() const noexcept { return segments_.back().t_end; }

  // Segment containing t; a boundary time belongs to the later segment, except
  // t_final which belongs to the last one.
  std::size_t segment_at(double t) const;
  Complex coupling_in(std::size_t segment) const;
  Complex coupling(double t) const { return coupling_in(segment_at(t)); }
  double max_coupling() const;

 private:
  std::vector<EnvelopeSegment> segments_;
  double reference_;
};

// Square pulse on [0, t_end] with the given scale, used for simple tests.
ControlEnvelope constant_envelope(double t_end, double coupling, double scale = 1.0);

// coupling(t) * op + conj(coupling(t)) * op^dag
struct CouplingTerm {
  OperatorMatrix op;
  ControlEnvelope envelope;
};

// frequency * n_mode
struct DetuningTerm {
  std::string mode;
  double frequency = 0;
};

// Hamiltonian divided by hbar (rad/s).
class Hamiltonian {
 public:
  explicit Hamiltonian(CompositeSpace space) : space_(std::move(space)) {}

  void add_coupling(OperatorMatrix op, ControlEnvelope envelope);
  void add_detuning(const std::string& mode, double frequency);
  // Arbitrary time-independent Hermitian term.
  void add_static(OperatorMatrix op);

  OperatorMatrix operator()(double t) const;

  const CompositeSpace& space() const noexcept { return space_; }
  const std::vector<CouplingTerm>& couplings() const noexcept { return couplings_; }
  const std::vector<DetuningTerm>& detunings() const noexcept { return detunings_; }
  const std::vector<OperatorMatrix>& static_terms() const noexcept { return static_terms_; }

 private:
  CompositeSpace space_;
  std::vector<CouplingTerm> couplings_;
  std::vector<DetuningTerm> detunings_;
  std::vector<OperatorMatrix> static_terms_;
};

// H = G(t) (a_ell^dag c + h.c.) + offset * n_c.
Hamiltonian hamiltonian_single(const CompositeSpace& space, const ControlEnvelope& coupling,
                               double interaction_offset);

// Two independent beam-splitter branches (a_ell, c) and (a_mell, d).
Hamiltonian hamiltonian_superposition(const CompositeSpace& space,
                                      const ControlEnvelope& coupling_plus,
                                      const ControlEnvelope& coupling_minus, double offset_c,
                                      double offset_d);

// Sum of one superposition Hamiltonian per cavity.  Couplings are ordered
// (cavity 1 +l, cavity 1 -l, cavity 2 +l, cavity 2 -l); offsets as
// (c_1, d_1, c_2, d_2).
Hamiltonian hamiltonian_entangled(const CompositeSpace& space,
                                  const std::array<ControlEnvelope, 4>& couplings,
                                  const std::array<double, 4>& offsets);

struct CollapseChannel {
  OperatorMatrix op;
  double rate = 0;   // rad/s, >= 0
  std::string mode;  // set when op is the plain lowering operator of this mode
};

// Amplitude damping of one mode at the given rate.
CollapseChannel damping(const CompositeSpace& space, const std::string& mode, double rate);

struct LindbladSystem {
  CompositeSpace space;
  Hamiltonian hamiltonian;
  std::vector<CollapseChannel> channels;
};

// -i[H, rho] - sum_k (rate_k / 2) ({L^dag L, rho} - 2 L rho L^dag)
Matrix lindblad_rhs(const Matrix& rho, const OperatorMatrix& H,
                    const std::vector<CollapseChannel>& channels);

struct IntegratorOptions {
  // Exact damping map on intervals where every coupling is off and the
  // remaining Hamiltonian is number-operator detunings only.
  bool analytic_storage = true;
  // Step bound h <= step_fraction / max(|G|, |offset|, rate).
  double step_fraction = 1.0 / 50.0;
  double max_step = 0;       // extra cap; 0 disables
  double min_step = 1e-15;   // below this the run is rejected
  double trace_tolerance = 1e-6;
  double positivity_tolerance = 1e-6;
  std::vector<double> checkpoint_times;
};

struct Checkpoint {
  double time;
  StateMatrix state;
};

struct Trajectory {
  std::vector<double> times;
  // "n_<mode>" per mode, "trace", "purity"
  std::map<std::string, std::vector<double>> observables;
  std::vector<Checkpoint> checkpoints;
  StateMatrix final_state;
  std::size_t steps = 0;
  std::size_t analytic_intervals = 0;
};

// Propagates rho0 over the schedule span.  Observables are recorded at every
// sample time (which must lie inside [0, schedule.t_final()]).  Throws
// PropagationError naming the schedule segment on trace drift, positivity loss
// or step underflow.
Trajectory integrate(const LindbladSystem& system, const StateMatrix& rho0,
                     const ControlEnvelope& schedule, std::vector<double> sample_times,
                     const IntegratorOptions& options = {});

}  // namespace ringmem
