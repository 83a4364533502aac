#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringmem/hilbert.hpp"

namespace ringmem {

// Hermitian square root.  Eigenvalues in [-1e-10, 0) are treated as zero;
// anything more negative throws NotPositive.
Matrix hermitian_sqrt(const Matrix& m);

// Uhlmann fidelity [Tr sqrt(sqrt(a) b sqrt(a))]^2.  For pure a = |psi><psi|
// this reduces to <psi|b|psi>.
double fidelity(const StateMatrix& a, const StateMatrix& b);

// log2 of the trace norm of the partial transpose over `subsystem`.  Raw
// value, not floored at zero.
double log_negativity(const StateMatrix& rho, const std::vector<std::string>& subsystem);

struct PhaseSpaceGrid {
  double x_min = -5.0;
  double x_max = 5.0;
  int nx = 201;
  double p_min = -5.0;
  double p_max = 5.0;
  int np = 201;

  double x(int i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1); }
  double p(int j) const { return np == 1 ? p_min : p_min + (p_max - p_min) * j / (np - 1); }
};

// Wigner function sampled on a grid; values[j * nx + i] is W(x_i, p_j).
// Normalized so that the integral over dx dp is 1 and W_vacuum(0, 0) = 1/pi,
// with x = (a + a^dag)/sqrt(2).
struct WignerFunction {
  PhaseSpaceGrid grid;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j * grid.nx + i)]; }
  double min() const;
  double max() const;
  // Trapezoidal integral over the grid.
  double integral() const;
};

double wigner_at(const StateMatrix& rho, double x, double p);
WignerFunction wigner(const StateMatrix& rho, const PhaseSpaceGrid& grid = {});

enum class Benchmark {
  QubitMemory,  // (N + 1) / (N + 2) for N qubits
  Teleport,     // 2 / (d + 1) for dimension d
};

double classical_bound(Benchmark kind, int n);

struct MetricsReport {
  double fidelity = 0;
  std::optional<double> log_negativity;
  double classical_bound = 0;
  std::optional<double> wigner_min;
  std::map<std::string, double> mean_occupations;
};

struct AssessOptions {
  std::vector<std::string> bipartition;  // empty: no log-negativity
  Benchmark benchmark = Benchmark::QubitMemory;
  int benchmark_size = 1;
  bool wigner = false;  // single-mode states only
  PhaseSpaceGrid grid;
};

MetricsReport assess(const StateMatrix& initial, const StateMatrix& retrieved,
                     const AssessOptions& options);

}  // namespace ringmem
