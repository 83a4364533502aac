#include "ringmem/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ringmem/error.hpp"

namespace ringmem {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive and finite");
}

double side_mode_frequency(const PhysicalParams& p, double moment, int sign) {
  const double w = p.winding_number + sign * 2.0 * p.oam_index;
  return constants::hbar * w * w / (2.0 * moment);
}

// Common part of derive() and calibrate(); leaves alpha-dependent fields unset.
DerivedParams derive_static(const PhysicalParams& p) {
  validate(p);
  DerivedParams d;
  d.moment_of_inertia = p.atom_mass * p.ring_radius * p.ring_radius;
  const double L = p.winding_number;
  d.omega_p = constants::hbar * L * L / (2.0 * d.moment_of_inertia);
  d.omega_c = side_mode_frequency(p, d.moment_of_inertia, +1);
  d.omega_d = side_mode_frequency(p, d.moment_of_inertia, -1);
  d.lattice_depth = p.atom_photon_coupling * p.atom_photon_coupling / p.atomic_detuning;
  d.bare_coupling = d.lattice_depth * std::sqrt(static_cast<double>(p.atom_count) / 8.0);
  // g = 2 hbar w_rho a / R and g~ = g / (4 pi hbar).
  d.interaction_strength = p.trap_freq_rho * p.scattering_length / (2.0 * constants::pi * p.ring_radius);
  d.interaction_shift = 4.0 * d.interaction_strength * static_cast<double>(p.atom_count);
  const double photon_energy = constants::hbar * p.optical_frequency;
  d.pump_rate_signal = std::sqrt(p.signal_power * p.cavity_decay / photon_energy);
  return d;
}

// |gamma_0/2 - i Delta~| with Delta~ = -omega_c.
double cavity_response(const PhysicalParams& p, const DerivedParams& d) {
  return std::hypot(0.5 * p.cavity_decay, d.omega_c);
}

}  // namespace

PhysicalParams default_parameters() { return PhysicalParams{}; }

PhysicalParams strong_coupling_parameters() {
  PhysicalParams p;
  p.winding_number = 25;
  p.atom_count = 80000;
  p.control_power = 1.45e-9;
  return p;
}

void validate(const PhysicalParams& p) {
  require_positive(p.atom_mass, "atom_mass");
  require_positive(p.ring_radius, "ring_radius");
  require_positive(p.trap_freq_rho, "trap_freq_rho");
  require_positive(p.trap_freq_z, "trap_freq_z");
  require_positive(static_cast<double>(p.atom_count), "atom_count");
  require_positive(p.atom_photon_coupling, "atom_photon_coupling");
  require_positive(p.atomic_detuning, "atomic_detuning");
  require_positive(p.cavity_decay, "cavity_decay");
  require_positive(p.mechanical_decay, "mechanical_decay");
  require_positive(p.control_power, "control_power");
  require_positive(p.signal_power, "signal_power");
  require_positive(p.optical_frequency, "optical_frequency");
  // Zero scattering length is the non-interacting gas.
  if (!(p.scattering_length >= 0.0) || !std::isfinite(p.scattering_length))
    throw Error(ErrorKind::InvalidArgument, "scattering_length must be non-negative");
  if (p.oam_index < 1) throw Error(ErrorKind::InvalidArgument, "oam_index must be >= 1");
  if (p.winding_number < 0) throw Error(ErrorKind::InvalidArgument, "winding_number must be >= 0");
}

DerivedParams derive(const PhysicalParams& p) {
  DerivedParams d = derive_static(p);
  d.control_power = p.control_power;
  d.pump_rate_control = std::sqrt(p.control_power * p.cavity_decay /
                                  (constants::hbar * p.optical_frequency));
  d.steady_amplitude = d.pump_rate_control / cavity_response(p, d);
  d.boosted_coupling = d.bare_coupling * d.steady_amplitude / std::sqrt(2.0);
  d.swap_time = constants::pi / (2.0 * d.boosted_coupling);
  return d;
}

DerivedParams calibrate(const PhysicalParams& p, double coupling_ratio) {
  require_positive(coupling_ratio, "coupling_ratio");
  DerivedParams d = derive_static(p);
  d.boosted_coupling = coupling_ratio * p.cavity_decay;
  d.steady_amplitude = std::sqrt(2.0) * d.boosted_coupling / d.bare_coupling;
  d.pump_rate_control = d.steady_amplitude * cavity_response(p, d);
  d.control_power = d.pump_rate_control * d.pump_rate_control * constants::hbar *
                    p.optical_frequency / p.cavity_decay;
  d.swap_time = constants::pi / (2.0 * d.boosted_coupling);
  return d;
}

double interaction_shift(const PhysicalParams& p) {
  const double g_tilde =
      p.trap_freq_rho * p.scattering_length / (2.0 * constants::pi * p.ring_radius);
  return 4.0 * g_tilde * static_cast<double>(p.atom_count);
}

ConstraintReport check_constraints(const PhysicalParams& p, const DerivedParams& d) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  ConstraintReport r;

  const double n_max = 4.0 * p.ring_radius / (3.0 * p.scattering_length) *
                       std::sqrt(constants::pi * p.trap_freq_rho / p.trap_freq_z);
  r.quasi_1d.margin = n_max / static_cast<double>(p.atom_count);
  r.quasi_1d.ok = static_cast<double>(p.atom_count) < n_max;

  const double w_min = std::min(d.omega_c, d.omega_d);
  r.bogoliubov.margin = d.interaction_shift > 0 ? w_min / d.interaction_shift : inf;
  r.bogoliubov.ok = r.bogoliubov.margin >= kMuchGreaterRatio;

  const double lattice = d.lattice_depth * d.steady_amplitude * d.steady_amplitude;
  const double chemical =
      d.omega_p + 2.0 * d.interaction_strength * static_cast<double>(p.atom_count);
  r.lattice_weak.margin = lattice > 0 ? chemical / lattice : inf;
  r.lattice_weak.ok = r.lattice_weak.margin >= kMuchGreaterRatio;

  r.sideband_resolved.margin = w_min / p.cavity_decay;
  r.sideband_resolved.ok = r.sideband_resolved.margin >= kMuchGreaterRatio;

  r.mode_separation.margin = std::abs(d.omega_c - d.omega_d) / p.cavity_decay;
  r.mode_separation.ok = r.mode_separation.margin >= kMuchGreaterRatio;
  return r;
}

}  // namespace ringmem
