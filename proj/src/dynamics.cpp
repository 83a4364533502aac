#include "ringmem/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Sparse>

namespace ringmem {

namespace {

using Sparse = Eigen::SparseMatrix<Complex>;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, what);
}

Sparse to_sparse(const Matrix& m) { return m.sparseView(); }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Operator with at most one nonzero per column: column k is sent to row
// dst[k] with weight val[k]; dst[k] < 0 marks an empty column.  Ladder
// operators, hopping terms a_i^dag a_j and damping Kraus operators all have
// this shape, and applying them this way is much cheaper than a general sparse
// product.
struct Monomial {
  std::vector<Eigen::Index> dst;
  std::vector<Complex> val;

  static std::optional<Monomial> from(const Matrix& m) {
    Monomial out;
    out.dst.assign(static_cast<std::size_t>(m.cols()), -1);
    out.val.assign(static_cast<std::size_t>(m.cols()), 0.0);
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, k) == Complex(0.0)) continue;
        if (out.dst[static_cast<std::size_t>(k)] >= 0) return std::nullopt;
        out.dst[static_cast<std::size_t>(k)] = i;
        out.val[static_cast<std::size_t>(k)] = m(i, k);
      }
    return out;
  }

  // out += c * A * rho
  void add_product(Complex c, const Matrix& rho, Matrix& out) const {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const Complex* src = rho.col(j).data();
      Complex* to = out.col(j).data();
      for (std::size_t k = 0; k < dst.size(); ++k)
        if (dst[k] >= 0) to[dst[k]] += c * val[k] * src[k];
    }
  }

  // out += r * A * rho * A^dag
  void add_sandwich(double r, const Matrix& rho, Matrix& out) const {
    for (std::size_t j = 0; j < dst.size(); ++j) {
      if (dst[j] < 0) continue;
      const Complex cj = r * std::conj(val[j]);
      const Complex* src = rho.col(static_cast<Eigen::Index>(j)).data();
      Complex* to = out.col(dst[j]).data();
      for (std::size_t i = 0; i < dst.size(); ++i)
        if (dst[i] >= 0) to[dst[i]] += val[i] * cj * src[i];
    }
  }
};

// General operator with a fast path for the monomial case.
struct Op {
  std::optional<Monomial> mono;
  Sparse sparse;

  explicit Op(const Matrix& m) : mono(Monomial::from(m)) {
    if (!mono) sparse = to_sparse(m);
  }
  explicit Op(Monomial m) : mono(std::move(m)) {}

  void add_product(Complex c, const Matrix& rho, Matrix& out) const {
    if (mono) mono->add_product(c, rho, out);
    else out.noalias() += c * (sparse * rho);
  }
  // Relies on rho being Hermitian: A rho A^dag = A (A rho)^dag.
  void add_sandwich(double r, const Matrix& rho, Matrix& out) const {
    if (mono) {
      mono->add_sandwich(r, rho, out);
    } else {
      const Matrix t = sparse * rho;
      out.noalias() += r * (sparse * t.adjoint());
    }
  }
};

// Amplitude damping with survival probability eta on one mode of the space,
// as monomial Kraus operators K_j|n> = sqrt(C(n,j) eta^(n-j) (1-eta)^j) |n-j>.
std::vector<Op> damping_kraus(const CompositeSpace& space, std::size_t mode, double eta,
                              const std::vector<std::vector<int>>& occupations) {
  const auto d = space.dim();
  const auto stride = static_cast<Eigen::Index>(space.stride(mode));
  std::vector<Op> kraus;
  for (int j = 0; j < space.mode(mode).cutoff; ++j) {
    Monomial m;
    m.dst.assign(d, -1);
    m.val.assign(d, 0.0);
    for (std::size_t idx = 0; idx < d; ++idx) {
      const int n = occupations[mode][idx];
      if (n < j) continue;
      m.dst[idx] = static_cast<Eigen::Index>(idx) - j * stride;
      m.val[idx] = std::sqrt(binomial(n, j) * std::pow(eta, n - j) * std::pow(1.0 - eta, j));
    }
    kraus.emplace_back(std::move(m));
  }
  return kraus;
}

// Precomputed pieces of one Lindblad system.
struct Generator {
  std::vector<Op> couplings;      // A_k
  std::vector<Op> couplings_adj;  // A_k^dag
  std::vector<Eigen::VectorXd> detunings;  // diagonal of n_mode
  std::vector<Sparse> statics;
  std::vector<Op> jumps;
  std::vector<double> rates;
  Eigen::VectorXd decay_diag;  // diagonal part of sum_k rate_k L_k^dag L_k
  Sparse decay_rest;           // off-diagonal remainder
  std::vector<std::vector<int>> occupations;  // [mode][basis index]

  explicit Generator(const LindbladSystem& sys) {
    const auto& H = sys.hamiltonian;
    for (const auto& c : H.couplings()) {
      couplings.emplace_back(c.op.data);
      couplings_adj.emplace_back(Matrix(c.op.data.adjoint()));
    }
    for (const auto& t : H.detunings())
      detunings.push_back(number(sys.space, t.mode).data.diagonal().real());
    for (const auto& s : H.static_terms()) statics.push_back(to_sparse(s.data));
    const auto d = static_cast<Eigen::Index>(sys.space.dim());
    Matrix decay = Matrix::Zero(d, d);
    for (const auto& ch : sys.channels) {
      jumps.emplace_back(ch.op.data);
      rates.push_back(ch.rate);
      decay += ch.rate * (ch.op.data.adjoint() * ch.op.data);
    }
    decay_diag = decay.diagonal().real();
    decay.diagonal().setZero();
    decay_rest = to_sparse(decay);
    occupations.resize(sys.space.mode_count());
    for (std::size_t i = 0; i < sys.space.dim(); ++i) {
      const auto occ = sys.space.occupations(i);
      for (std::size_t m = 0; m < occ.size(); ++m) occupations[m].push_back(occ[m]);
    }
  }

  // Diagonal of K = -i H - (1/2) sum rate L^dag L (detunings and decay).
  Eigen::VectorXcd diagonal(const LindbladSystem& sys) const {
    Eigen::VectorXcd kd = -0.5 * decay_diag.cast<Complex>();
    for (std::size_t k = 0; k < detunings.size(); ++k)
      kd += Complex(0.0, -sys.hamiltonian.detunings()[k].frequency) * detunings[k].cast<Complex>();
    return kd;
  }

  // Hermitian-preserving evaluation of the master-equation right-hand side,
  // K rho + (K rho)^dag + sum rate L rho L^dag.
  Matrix rhs(const std::vector<Complex>& g, const Eigen::VectorXcd& kd, const Matrix& rho) const {
    Matrix m = kd.asDiagonal() * rho;
    const Complex minus_i(0.0, -1.0);
    for (std::size_t k = 0; k < couplings.size(); ++k) {
      if (g[k] == Complex(0.0)) continue;
      couplings[k].add_product(minus_i * g[k], rho, m);
      couplings_adj[k].add_product(minus_i * std::conj(g[k]), rho, m);
    }
    for (const auto& s : statics) m.noalias() += minus_i * (s * rho);
    if (decay_rest.nonZeros() > 0) m.noalias() -= 0.5 * (decay_rest * rho);
    Matrix out = m + m.adjoint();
    for (std::size_t j = 0; j < jumps.size(); ++j)
      if (rates[j] != 0.0) jumps[j].add_sandwich(rates[j], rho, out);
    return out;
  }
};

double max_rate_scale(const std::vector<Complex>& g, const LindbladSystem& sys) {
  double s = 0.0;
  for (const auto& v : g) s = std::max(s, std::abs(v));
  for (const auto& t : sys.hamiltonian.detunings()) s = std::max(s, std::abs(t.frequency));
  for (const auto& st : sys.hamiltonian.static_terms())
    s = std::max(s, st.data.cwiseAbs().maxCoeff());
  for (const auto& ch : sys.channels) s = std::max(s, ch.rate);
  return s;
}

}  // namespace

std::string modes::labeled(const std::string& base, int cavity) {
  return base + "_" + std::to_string(cavity);
}

ControlEnvelope::ControlEnvelope(std::vector<EnvelopeSegment> segments, double reference_coupling)
    : segments_(std::move(segments)), reference_(reference_coupling) {
  if (segments_.empty()) invalid("control envelope needs at least one segment");
  if (!std::isfinite(reference_)) invalid("reference coupling must be finite");
  double t = 0.0;
  for (const auto& s : segments_) {
    if (s.t_start != t) invalid("envelope segments must be contiguous and start at t = 0");
    if (!(s.t_end > s.t_start)) invalid("envelope segment has non-positive duration");
    if (!(s.amplitude_scale >= 0.0 && s.amplitude_scale <= 1.0))
      invalid("envelope amplitude scale must lie in [0, 1]");
    t = s.t_end;
  }
}

std::size_t ControlEnvelope::segment_at(double t) const {
  if (t < 0.0 || t > t_final()) invalid("time outside control envelope span");
  for (std::size_t i = 0; i < segments_.size(); ++i)
    if (t < segments_[i].t_end) return i;
  return segments_.size() - 1;
}

Complex ControlEnvelope::coupling_in(std::size_t segment) const {
  const auto& s = segments_.at(segment);
  if (s.amplitude_scale == 0.0) return 0.0;
  return reference_ * s.amplitude_scale * std::polar(1.0, s.phase);
}

double ControlEnvelope::max_coupling() const {
  double m = 0.0;
  for (const auto& s : segments_) m = std::max(m, std::abs(reference_) * s.amplitude_scale);
  return m;
}

ControlEnvelope constant_envelope(double t_end, double coupling, double scale) {
  return ControlEnvelope({{0.0, t_end, scale, 0.0}}, coupling);
}

void Hamiltonian::add_coupling(OperatorMatrix op, ControlEnvelope envelope) {
  if (!(op.space == space_)) invalid("coupling operator lives on a different space");
  couplings_.push_back({std::move(op), std::move(envelope)});
}

void Hamiltonian::add_detuning(const std::string& mode, double frequency) {
  space_.index_of(mode);
  detunings_.push_back({mode, frequency});
}

void Hamiltonian::add_static(OperatorMatrix op) {
  if (!(op.space == space_)) invalid("static term lives on a different space");
  if (max_antihermitian_deviation(op.data) > 1e-10)
    throw Error(ErrorKind::NotHermitian, "static Hamiltonian term is not Hermitian");
  static_terms_.push_back(std::move(op));
}

OperatorMatrix Hamiltonian::operator()(double t) const {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  Matrix h = Matrix::Zero(d, d);
  for (const auto& c : couplings_) {
    const Complex g = c.envelope.coupling(t);
    h += g * c.op.data + std::conj(g) * c.op.data.adjoint();
  }
  for (const auto& t_ : detunings_) h += t_.frequency * number(space_, t_.mode).data;
  for (const auto& s : static_terms_) h += s.data;
  return {space_, std::move(h)};
}

Hamiltonian hamiltonian_single(const CompositeSpace& space, const ControlEnvelope& coupling,
                               double interaction_offset) {
  Hamiltonian h(space);
  h.add_coupling(creation(space, modes::a_ell) * annihilation(space, modes::c), coupling);
  if (interaction_offset != 0.0) h.add_detuning(modes::c, interaction_offset);
  return h;
}

Hamiltonian hamiltonian_superposition(const CompositeSpace& space,
                                      const ControlEnvelope& coupling_plus,
                                      const ControlEnvelope& coupling_minus, double offset_c,
                                      double offset_d) {
  Hamiltonian h(space);
  h.add_coupling(creation(space, modes::a_ell) * annihilation(space, modes::c), coupling_plus);
  h.add_coupling(creation(space, modes::a_mell) * annihilation(space, modes::d), coupling_minus);
  if (offset_c != 0.0) h.add_detuning(modes::c, offset_c);
  if (offset_d != 0.0) h.add_detuning(modes::d, offset_d);
  return h;
}

Hamiltonian hamiltonian_entangled(const CompositeSpace& space,
                                  const std::array<ControlEnvelope, 4>& couplings,
                                  const std::array<double, 4>& offsets) {
  Hamiltonian h(space);
  for (int cav = 1; cav <= 2; ++cav) {
    const auto base = static_cast<std::size_t>(2 * (cav - 1));
    const auto a = modes::labeled(modes::a_ell, cav);
    const auto am = modes::labeled(modes::a_mell, cav);
    const auto c = modes::labeled(modes::c, cav);
    const auto d = modes::labeled(modes::d, cav);
    h.add_coupling(creation(space, a) * annihilation(space, c), couplings[base]);
    h.add_coupling(creation(space, am) * annihilation(space, d), couplings[base + 1]);
    if (offsets[base] != 0.0) h.add_detuning(c, offsets[base]);
    if (offsets[base + 1] != 0.0) h.add_detuning(d, offsets[base + 1]);
  }
  return h;
}

CollapseChannel damping(const CompositeSpace& space, const std::string& mode, double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) invalid("collapse rate must be >= 0");
  return {annihilation(space, mode), rate, mode};
}

Matrix lindblad_rhs(const Matrix& rho, const OperatorMatrix& H,
                    const std::vector<CollapseChannel>& channels) {
  const auto d = static_cast<Eigen::Index>(H.space.dim());
  if (rho.rows() != d || rho.cols() != d) invalid("lindblad_rhs: dimension mismatch");
  const Complex minus_i(0.0, -1.0);
  Matrix out = minus_i * (H.data * rho - rho * H.data);
  for (const auto& ch : channels) {
    if (ch.op.data.rows() != d) invalid("lindblad_rhs: collapse operator dimension mismatch");
    const Matrix& L = ch.op.data;
    const Matrix LdL = L.adjoint() * L;
    out -= 0.5 * ch.rate * (LdL * rho + rho * LdL - 2.0 * L * rho * L.adjoint());
  }
  return out;
}

Trajectory integrate(const LindbladSystem& system, const StateMatrix& rho0,
                     const ControlEnvelope& schedule, std::vector<double> sample_times,
                     const IntegratorOptions& options) {
  const auto& space = system.space;
  if (!(rho0.space() == space)) invalid("integrate: initial state lives on a different space");
  if (!(system.hamiltonian.space() == space)) invalid("integrate: Hamiltonian space mismatch");
  for (const auto& ch : system.channels) {
    if (!(ch.rate >= 0.0)) invalid("integrate: negative collapse rate");
    if (!(ch.op.space == space)) invalid("integrate: collapse operator space mismatch");
  }
  const double t_final = schedule.t_final();
  std::sort(sample_times.begin(), sample_times.end());
  for (double t : sample_times)
    if (t < 0.0 || t > t_final) invalid("integrate: sample time outside schedule span");
  auto checkpoint_times = options.checkpoint_times;
  std::sort(checkpoint_times.begin(), checkpoint_times.end());
  for (double t : checkpoint_times)
    if (t < 0.0 || t > t_final) invalid("integrate: checkpoint time outside schedule span");

  // Breakpoints: every point where the generator may change or output is due.
  std::vector<double> points{0.0, t_final};
  for (const auto& s : schedule.segments()) points.push_back(s.t_end);
  for (const auto& c : system.hamiltonian.couplings())
    for (const auto& s : c.envelope.segments())
      if (s.t_end < t_final) points.push_back(s.t_end);
  points.insert(points.end(), sample_times.begin(), sample_times.end());
  points.insert(points.end(), checkpoint_times.begin(), checkpoint_times.end());
  std::sort(points.begin(), points.end());
  const double merge = 1e-13 * t_final;
  std::vector<double> breaks;
  for (double p : points)
    if (breaks.empty() || p - breaks.back() > merge) breaks.push_back(p);

  const Generator gen(system);
  const bool shortcut_capable =
      options.analytic_storage && system.hamiltonian.static_terms().empty() &&
      std::all_of(system.channels.begin(), system.channels.end(),
                  [](const CollapseChannel& c) { return !c.mode.empty(); });

  StateTolerance checkpoint_tol;
  checkpoint_tol.trace = options.trace_tolerance;
  checkpoint_tol.min_eigenvalue = -options.positivity_tolerance;

  Trajectory traj{{}, {}, {}, rho0, 0, 0};
  for (const auto& m : space.modes()) traj.observables["n_" + m.label];
  traj.observables["trace"];
  traj.observables["purity"];

  Matrix rho = rho0.data();
  std::size_t next_sample = 0;
  std::size_t next_checkpoint = 0;
  std::size_t segment = 0;

  auto record = [&](double t) {
    while (next_sample < sample_times.size() && sample_times[next_sample] <= t + merge) {
      traj.times.push_back(sample_times[next_sample]);
      for (std::size_t m = 0; m < space.mode_count(); ++m) {
        double n = 0.0;
        for (Eigen::Index i = 0; i < rho.rows(); ++i)
          n += gen.occupations[m][static_cast<std::size_t>(i)] * rho(i, i).real();
        traj.observables["n_" + space.mode(m).label].push_back(n);
      }
      traj.observables["trace"].push_back(rho.trace().real());
      traj.observables["purity"].push_back(rho.squaredNorm());
      ++next_sample;
    }
    while (next_checkpoint < checkpoint_times.size() &&
           checkpoint_times[next_checkpoint] <= t + merge) {
      try {
        traj.checkpoints.push_back({checkpoint_times[next_checkpoint],
                                    StateMatrix(space, rho, checkpoint_tol)});
      } catch (const Error& e) {
        throw PropagationError(segment, t, std::string("checkpoint rejected: ") + e.what());
      }
      ++next_checkpoint;
    }
  };

  auto check_trace = [&](double t) {
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (!(drift <= options.trace_tolerance)) {
      std::ostringstream os;
      os << "trace drift " << drift << " at t = " << t << " s exceeds "
         << options.trace_tolerance;
      throw PropagationError(segment, t, os.str());
    }
  };

  record(0.0);
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double t0 = breaks[b];
    const double t1 = breaks[b + 1];
    const double mid = 0.5 * (t0 + t1);
    segment = schedule.segment_at(mid);
    std::vector<Complex> g;
    for (const auto& c : system.hamiltonian.couplings()) g.push_back(c.envelope.coupling(mid));
    const bool couplings_off =
        std::all_of(g.begin(), g.end(), [](Complex v) { return v == Complex(0.0); });

    if (shortcut_capable && couplings_off) {
      const double dt = t1 - t0;
      std::vector<double> rate(space.mode_count(), 0.0);
      std::vector<double> freq(space.mode_count(), 0.0);
      for (const auto& ch : system.channels) rate[space.index_of(ch.mode)] += ch.rate;
      for (const auto& t : system.hamiltonian.detunings())
        freq[space.index_of(t.mode)] += t.frequency;
      for (std::size_t m = 0; m < space.mode_count(); ++m) {
        if (rate[m] == 0.0) continue;
        Matrix next = Matrix::Zero(rho.rows(), rho.cols());
        for (const auto& k : damping_kraus(space, m, std::exp(-rate[m] * dt), gen.occupations))
          k.add_sandwich(1.0, rho, next);
        rho = std::move(next);
      }
      Eigen::VectorXd energy = Eigen::VectorXd::Zero(rho.rows());
      for (std::size_t m = 0; m < space.mode_count(); ++m)
        for (Eigen::Index i = 0; i < rho.rows(); ++i)
          energy(i) += freq[m] * gen.occupations[m][static_cast<std::size_t>(i)];
      if (energy.cwiseAbs().maxCoeff() > 0.0)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
          for (Eigen::Index i = 0; i < rho.rows(); ++i)
            rho(i, j) *= std::polar(1.0, -(energy(i) - energy(j)) * dt);
      ++traj.analytic_intervals;
    } else {
      const double scale = max_rate_scale(g, system);
      double h_max = scale > 0.0 ? options.step_fraction / scale : (t1 - t0);
      if (options.max_step > 0.0) h_max = std::min(h_max, options.max_step);
      const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / h_max - 1e-9));
      const std::size_t steps = std::max<std::size_t>(n, 1);
      const double h = (t1 - t0) / static_cast<double>(steps);
      if (h < options.min_step) {
        std::ostringstream os;
        os << "step size " << h << " s underflows minimum " << options.min_step << " s";
        throw PropagationError(segment, t0, os.str());
      }
      const Eigen::VectorXcd kd = gen.diagonal(system);
      for (std::size_t s = 0; s < steps; ++s) {
        const Matrix k1 = gen.rhs(g, kd, rho);
        const Matrix k2 = gen.rhs(g, kd, rho + 0.5 * h * k1);
        const Matrix k3 = gen.rhs(g, kd, rho + 0.5 * h * k2);
        const Matrix k4 = gen.rhs(g, kd, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++traj.steps;
        check_trace(t0 + static_cast<double>(s + 1) * h);
      }
    }
    check_trace(t1);
    record(t1);
  }

  try {
    traj.final_state = StateMatrix(space, rho, checkpoint_tol);
  } catch (const Error& e) {
    throw PropagationError(segment, t_final, std::string("final state rejected: ") + e.what());
  }
  return traj;
}

}  // namespace ringmem
