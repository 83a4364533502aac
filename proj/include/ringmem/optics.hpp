#pragma once

// Linear optics used to prepare the signal states: 50:50 beam splitters with
// a pi/2 reflection phase, phase plates and vortex phase plates.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ringmem/hilbert.hpp"

namespace ringmem {

// U = exp(i pi/4 (a_i^dag a_j + a_j^dag a_i)), so a photon entering mode j
// stays in j with amplitude 1/sqrt2 and is reflected into i with i/sqrt2.
StateMatrix beamsplitter_transform(const StateMatrix& state, const std::string& mode_i,
                                   const std::string& mode_j);

// exp(i theta n_mode)
StateMatrix phase_shift(const StateMatrix& state, const std::string& mode, double theta);

struct BeamSplitter {
  std::string first;
  std::string second;
  // Output labels; empty keeps the input label.
  std::string first_out;
  std::string second_out;
};

struct PhaseShift {
  std::string mode;
  double theta = 0;
};

// A vortex phase plate imprints OAM sign * l on a path; here it only renames
// the mode, e.g. "a2" -> "a_ell".
struct VortexRelabel {
  std::string mode;
  int oam_sign = +1;
  std::string new_label;
};

using OpticalElement = std::variant<BeamSplitter, PhaseShift, VortexRelabel>;

struct LinearOpticsNetwork {
  std::vector<ModeSpace> modes;
  std::vector<OpticalElement> elements;

  // Throws InvalidArgument when an element names a mode that does not exist
  // at that point of the network, or a beam splitter joins modes of
  // different cutoff.
  void validate() const;
};

// Sequential application of the elements to the Fock input.
StateMatrix run_mach_zehnder(const LinearOpticsNetwork& network,
                             const std::vector<int>& input_occupations);

// Two rails a0, a1 -> BS1 -> a2, a3 -> [phase on a3] -> BS2 -> a4, a5.
LinearOpticsNetwork mach_zehnder(std::optional<double> phase = std::nullopt, int cutoff = 2);

// (|1,0> + |0,1>)/sqrt2 on (a_ell, a_mell), prepared by BS1 and vortex plates.
StateMatrix make_superposition_input(int cutoff = 2);

// (|1,0>_1 |0,1>_2 + |0,1>_1 |1,0>_2)/sqrt2 on
// (a_ell_1, a_mell_1, a_ell_2, a_mell_2).
StateMatrix make_entangled_input(int cutoff = 2);

}  // namespace ringmem
