#include "ringmem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ringmem {

namespace {

constexpr double kClampFloor = -1e-10;
constexpr double kPi = 3.14159265358979323846;

double clamp_eigenvalue(double v, const char* where) {
  if (v >= 0.0) return v;
  if (v >= kClampFloor) return 0.0;
  std::ostringstream os;
  os << where << ": eigenvalue " << v << " is below the clamping floor " << kClampFloor;
  throw Error(ErrorKind::NotPositive, os.str());
}

// Generalized Laguerre polynomial L_n^(k)(x).
double laguerre(int n, int k, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int m = 1; m < n; ++m) {
    const double next = ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

Matrix hermitian_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidArgument, "hermitian_sqrt: eigensolver failed");
  Eigen::VectorXd roots = solver.eigenvalues();
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    roots(i) = std::sqrt(clamp_eigenvalue(roots(i), "hermitian_sqrt"));
  const Matrix& v = solver.eigenvectors();
  return v * roots.cast<Complex>().asDiagonal() * v.adjoint();
}

double fidelity(const StateMatrix& a, const StateMatrix& b) {
  if (!(a.space() == b.space()))
    throw Error(ErrorKind::InvalidArgument, "fidelity: states live on different spaces");
  // Work on the numerical support of a: sqrt(a) b sqrt(a) shares its nonzero
  // spectrum with D^1/2 V^dag b V D^1/2 restricted to eigenvalues of a above
  // the rank tolerance.  Round-off in the null space would otherwise enter
  // through a square root and cost ~sqrt(eps).
  Eigen::SelfAdjointEigenSolver<Matrix> sa(a.data());
  if (sa.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidArgument, "fidelity: eigensolver failed");
  const Eigen::VectorXd& d = sa.eigenvalues();
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol_a = static_cast<double>(d.size()) * eps * std::max(d.maxCoeff(), 0.0);
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (clamp_eigenvalue(d(i), "fidelity") > tol_a) support.push_back(i);
  if (support.empty()) return 0.0;

  const auto r = static_cast<Eigen::Index>(support.size());
  Matrix v(d.size(), r);
  Eigen::VectorXd root(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    v.col(k) = sa.eigenvectors().col(support[static_cast<std::size_t>(k)]);
    root(k) = std::sqrt(d(support[static_cast<std::size_t>(k)]));
  }
  Matrix inner = root.asDiagonal() * (v.adjoint() * b.data() * v) * root.asDiagonal();
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const Eigen::VectorXd ev = hermitian_eigenvalues(inner);
  const double tol_in = static_cast<double>(r) * eps * std::max(ev.maxCoeff(), 0.0);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double x = clamp_eigenvalue(ev(i), "fidelity");
    if (x > tol_in) s += std::sqrt(x);
  }
  return s * s;
}

double log_negativity(const StateMatrix& rho, const std::vector<std::string>& subsystem) {
  return std::log2(trace_norm(partial_transpose(rho, subsystem)));
}

double WignerFunction::min() const { return *std::min_element(values.begin(), values.end()); }
double WignerFunction::max() const { return *std::max_element(values.begin(), values.end()); }

double WignerFunction::integral() const {
  const double dx = grid.nx > 1 ? (grid.x_max - grid.x_min) / (grid.nx - 1) : 1.0;
  const double dp = grid.np > 1 ? (grid.p_max - grid.p_min) / (grid.np - 1) : 1.0;
  double total = 0.0;
  for (int j = 0; j < grid.np; ++j) {
    const double wj = (j == 0 || j == grid.np - 1) ? 0.5 : 1.0;
    for (int i = 0; i < grid.nx; ++i) {
      const double wi = (i == 0 || i == grid.nx - 1) ? 0.5 : 1.0;
      total += wi * wj * at(i, j);
    }
  }
  return total * dx * dp;
}

double wigner_at(const StateMatrix& rho, double x, double p) {
  if (rho.space().mode_count() != 1)
    throw Error(ErrorKind::InvalidArgument, "wigner: state must be single-mode");
  const Matrix& r = rho.data();
  const int n_max = static_cast<int>(r.rows());
  const Complex two_alpha = std::sqrt(2.0) * Complex(x, p);  // 2 alpha, alpha = (x + ip)/sqrt2
  const double r2 = x * x + p * p;                            // 2 |alpha|^2
  const double gauss = std::exp(-r2);
  double w = 0.0;
  // <m| D P D^dag |n> for m >= n:
  // (-1)^n sqrt(n!/m!) (2 alpha)^(m-n) exp(-2|alpha|^2) L_n^(m-n)(4|alpha|^2)
  for (int n = 0; n < n_max; ++n) {
    double fact_ratio = 1.0;  // sqrt(n!/m!)
    Complex power = 1.0;      // (2 alpha)^(m-n)
    for (int m = n; m < n_max; ++m) {
      if (m > n) {
        fact_ratio /= std::sqrt(static_cast<double>(m));
        power *= two_alpha;
      }
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const Complex o = sign * fact_ratio * power * gauss * laguerre(n, m - n, 2.0 * r2);
      if (m == n) {
        w += r(n, n).real() * o.real();
      } else {
        w += 2.0 * (r(n, m) * o).real();
      }
    }
  }
  return w / kPi;
}

WignerFunction wigner(const StateMatrix& rho, const PhaseSpaceGrid& grid) {
  if (grid.nx < 1 || grid.np < 1)
    throw Error(ErrorKind::InvalidArgument, "wigner: grid resolution must be positive");
  WignerFunction w{grid, {}};
  w.values.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.np));
  for (int j = 0; j < grid.np; ++j)
    for (int i = 0; i < grid.nx; ++i) w.values.push_back(wigner_at(rho, grid.x(i), grid.p(j)));
  return w;
}

double classical_bound(Benchmark kind, int n) {
  switch (kind) {
    case Benchmark::QubitMemory:
      if (n < 1) throw Error(ErrorKind::InvalidArgument, "qubit memory bound needs N >= 1");
      return (n + 1.0) / (n + 2.0);
    case Benchmark::Teleport:
      if (n < 2) throw Error(ErrorKind::InvalidArgument, "teleportation bound needs d >= 2");
      return 2.0 / (n + 1.0);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown benchmark");
}

MetricsReport assess(const StateMatrix& initial, const StateMatrix& retrieved,
                     const AssessOptions& options) {
  MetricsReport r;
  r.fidelity = fidelity(initial, retrieved);
  if (!options.bipartition.empty())
    r.log_negativity = log_negativity(retrieved, options.bipartition);
  r.classical_bound = classical_bound(options.benchmark, options.benchmark_size);
  if (options.wigner) r.wigner_min = wigner(retrieved, options.grid).min();
  for (const auto& m : retrieved.space().modes())
    r.mean_occupations[m.label] = expectation(retrieved, number(retrieved.space(), m.label));
  return r;
}

}  // namespace ringmem
