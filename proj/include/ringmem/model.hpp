#pragma once

// Laboratory parameters of the ring-condensate cavity and the model constants
// derived from them.  Everything is SI; angular frequencies and rates are in
// rad/s.

#include <cstdint>

namespace ringmem {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
}  // namespace constants

struct PhysicalParams {
  double atom_mass = 23.0 * constants::atomic_mass_unit;
  double scattering_length = 0.1e-9;
  double ring_radius = 10e-6;
  double trap_freq_rho = constants::two_pi * 840.0;
  double trap_freq_z = constants::two_pi * 840.0;
  std::int64_t atom_count = 20000;
  int winding_number = 20;
  int oam_index = 130;
  double atom_photon_coupling = constants::two_pi * 0.36e6;
  double atomic_detuning = 300.0 * constants::two_pi * 9.8e6;
  double cavity_decay = constants::two_pi * 1e3;
  double mechanical_decay = 1.7e-5 * constants::two_pi * 1e3;
  double control_power = 8.6e-10;  // W
  double signal_power = 8.6e-12;   // W
  double optical_frequency = constants::two_pi * constants::speed_of_light / 589e-9;
};

// Default set: coupling ratio 4 (L_p = 20, N = 2e4).
PhysicalParams default_parameters();
// Stronger-coupling set used for coupling ratio 8 (L_p = 25, N = 8e4).
PhysicalParams strong_coupling_parameters();

// Throws InvalidArgument on nonpositive rates, masses, lengths or powers.
void validate(const PhysicalParams& p);

struct DerivedParams {
  double moment_of_inertia = 0;   // kg m^2
  double omega_p = 0;             // rotational frequency of the L_p current
  double omega_c = 0;             // side mode L_p + 2l
  double omega_d = 0;             // side mode L_p - 2l
  double lattice_depth = 0;       // U0 = g_a^2 / Delta_a
  double bare_coupling = 0;       // G = U0 sqrt(N/8)
  double pump_rate_control = 0;   // 1/s
  double pump_rate_signal = 0;    // 1/s
  double steady_amplitude = 0;    // alpha, real by phase choice
  double boosted_coupling = 0;    // G~ = G alpha / sqrt(2)
  double interaction_strength = 0;  // g~ (rad/s per atom)
  double interaction_shift = 0;   // 4 g~ N
  double swap_time = 0;           // t_off = pi / (2 G~)
  double control_power = 0;      // W, consistent with alpha
};

// Control power sets alpha, and alpha sets the boosted coupling.
DerivedParams derive(const PhysicalParams& p);

// Inverse route: the boosted coupling is fixed to coupling_ratio * gamma_0 and
// alpha / control power are back-computed from it.
DerivedParams calibrate(const PhysicalParams& p, double coupling_ratio);

// 4 g~ N, the side-mode frequency offset from s-wave collisions.
double interaction_shift(const PhysicalParams& p);

struct ConstraintCheck {
  bool ok = false;
  double margin = 0;  // dimensionless; ok when above the check's threshold
};

struct ConstraintReport {
  ConstraintCheck quasi_1d;          // N below 4R/(3a) sqrt(pi w_rho / w_z); margin = bound / N
  ConstraintCheck bogoliubov;        // min(w_c, w_d) / (4 g~ N)
  ConstraintCheck lattice_weak;      // (hbar L_p^2 / 2I + 2 g~ N) / (U0 alpha^2)
  ConstraintCheck sideband_resolved; // min(w_c, w_d) / gamma_0
  ConstraintCheck mode_separation;   // |w_c - w_d| / gamma_0

  bool all_ok() const {
    return quasi_1d.ok && bogoliubov.ok && lattice_weak.ok && sideband_resolved.ok &&
           mode_separation.ok;
  }
};

// Ratio a quantity must exceed for "much greater than" to hold.
inline constexpr double kMuchGreaterRatio = 3.0;

// Never throws on violated constraints; callers decide what to do with them.
ConstraintReport check_constraints(const PhysicalParams& p, const DerivedParams& d);

}  // namespace ringmem
