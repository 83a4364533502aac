#include "ringmem/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace ringmem {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidArgument, what);
}

void require_same_space(const CompositeSpace& a, const CompositeSpace& b,
                        const char* where) {
  if (!(a == b)) invalid(std::string(where) + ": operand spaces differ");
}

// Splits composite indices into (selected modes, remaining modes) sub-indices.
struct IndexSplit {
  std::vector<std::size_t> selected;
  std::vector<std::size_t> rest;
  std::size_t selected_dim = 1;
  std::size_t rest_dim = 1;
};

IndexSplit split_indices(const CompositeSpace& space, const std::vector<bool>& mask) {
  IndexSplit split;
  std::vector<std::size_t> sel_stride(space.mode_count(), 0);
  std::vector<std::size_t> rest_stride(space.mode_count(), 0);
  for (std::size_t m = space.mode_count(); m-- > 0;) {
    const auto cutoff = static_cast<std::size_t>(space.mode(m).cutoff);
    if (mask[m]) {
      sel_stride[m] = split.selected_dim;
      split.selected_dim *= cutoff;
    } else {
      rest_stride[m] = split.rest_dim;
      split.rest_dim *= cutoff;
    }
  }
  split.selected.resize(space.dim());
  split.rest.resize(space.dim());
  for (std::size_t i = 0; i < space.dim(); ++i) {
    std::size_t s = 0, r = 0, rem = i;
    for (std::size_t m = 0; m < space.mode_count(); ++m) {
      const std::size_t occ = rem / space.stride(m);
      rem %= space.stride(m);
      if (mask[m]) {
        s += occ * sel_stride[m];
      } else {
        r += occ * rest_stride[m];
      }
    }
    split.selected[i] = s;
    split.rest[i] = r;
  }
  return split;
}

std::vector<bool> mode_mask(const CompositeSpace& space,
                            const std::vector<std::string>& labels) {
  std::vector<bool> mask(space.mode_count(), false);
  for (const auto& label : labels) mask[space.index_of(label)] = true;
  return mask;
}

Matrix lowering_matrix(int cutoff) {
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

}  // namespace

CompositeSpace::CompositeSpace(std::vector<ModeSpace> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) invalid("composite space needs at least one mode");
  std::set<std::string> seen;
  for (const auto& m : modes_) {
    if (m.cutoff < 2) invalid("mode '" + m.label + "': cutoff must be >= 2");
    if (m.label.empty()) invalid("mode label must be non-empty");
    if (!seen.insert(m.label).second) invalid("duplicate mode label '" + m.label + "'");
  }
  strides_.assign(modes_.size(), 1);
  dim_ = 1;
  for (std::size_t i = modes_.size(); i-- > 0;) {
    strides_[i] = dim_;
    dim_ *= static_cast<std::size_t>(modes_[i].cutoff);
  }
}

std::size_t CompositeSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i].label == label) return i;
  throw Error(ErrorKind::UnknownMode, "unknown mode '" + label + "'");
}

bool CompositeSpace::contains(const std::string& label) const noexcept {
  return std::any_of(modes_.begin(), modes_.end(),
                     [&](const ModeSpace& m) { return m.label == label; });
}

std::size_t CompositeSpace::basis_index(const std::vector<int>& occupations) const {
  if (occupations.size() != modes_.size())
    invalid("expected one occupation per mode (" + std::to_string(modes_.size()) + ")");
  std::size_t index = 0;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (occupations[i] < 0 || occupations[i] >= modes_[i].cutoff)
      invalid("occupation " + std::to_string(occupations[i]) + " outside cutoff of mode '" +
              modes_[i].label + "'");
    index += static_cast<std::size_t>(occupations[i]) * strides_[i];
  }
  return index;
}

std::vector<int> CompositeSpace::occupations(std::size_t index) const {
  if (index >= dim_) invalid("basis index out of range");
  std::vector<int> occ(modes_.size());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    occ[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return occ;
}

CompositeSpace CompositeSpace::subspace(const std::vector<std::string>& labels) const {
  const auto mask = mode_mask(*this, labels);
  std::vector<ModeSpace> kept;
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (mask[i]) kept.push_back(modes_[i]);
  return CompositeSpace(std::move(kept));
}

CompositeSpace CompositeSpace::relabeled(const std::string& from, const std::string& to) const {
  auto modes = modes_;
  modes[index_of(from)].label = to;
  return CompositeSpace(std::move(modes));
}

bool operator==(const CompositeSpace& a, const CompositeSpace& b) {
  if (a.modes_.size() != b.modes_.size()) return false;
  for (std::size_t i = 0; i < a.modes_.size(); ++i)
    if (a.modes_[i].label != b.modes_[i].label || a.modes_[i].cutoff != b.modes_[i].cutoff)
      return false;
  return true;
}

CompositeSpace tensor(const CompositeSpace& a, const CompositeSpace& b) {
  auto modes = a.modes();
  modes.insert(modes.end(), b.modes().begin(), b.modes().end());
  return CompositeSpace(std::move(modes));
}

OperatorMatrix::OperatorMatrix(CompositeSpace s, Matrix m) : space(std::move(s)), data(std::move(m)) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  if (data.rows() != d || data.cols() != d)
    invalid("operator matrix must be " + std::to_string(d) + "x" + std::to_string(d));
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space, b.space, "operator +");
  return {a.space, a.data + b.data};
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space, b.space, "operator *");
  return {a.space, a.data * b.data};
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) { return {a.space, s * a.data}; }

double max_antihermitian_deviation(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidArgument, "Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

StateMatrix::StateMatrix(CompositeSpace space, Matrix data, const StateTolerance& tol)
    : space_(std::move(space)), data_(std::move(data)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (data_.rows() != d || data_.cols() != d)
    invalid("density matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  const double herm = max_antihermitian_deviation(data_);
  if (herm > tol.hermiticity) {
    std::ostringstream os;
    os << "density matrix not Hermitian (max |rho - rho^dag| = " << herm << ")";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const double tr = data_.trace().real();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " differs from 1";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const double lo = min_eigenvalue();
  if (lo < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << lo;
    throw Error(ErrorKind::NotPositive, os.str());
  }
}

double StateMatrix::purity() const { return (data_ * data_).trace().real(); }

double StateMatrix::min_eigenvalue() const { return hermitian_eigenvalues(data_).minCoeff(); }

OperatorMatrix identity(const CompositeSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  return {space, Matrix::Identity(d, d)};
}

OperatorMatrix embed(const CompositeSpace& space, const std::string& mode_label,
                     const Matrix& single_mode) {
  const std::size_t target = space.index_of(mode_label);
  const int cutoff = space.mode(target).cutoff;
  if (single_mode.rows() != cutoff || single_mode.cols() != cutoff)
    invalid("single-mode matrix does not match cutoff of mode '" + mode_label + "'");
  Matrix out(1, 1);
  out(0, 0) = 1.0;
  for (std::size_t m = 0; m < space.mode_count(); ++m) {
    const Matrix factor = m == target
                              ? single_mode
                              : Matrix::Identity(space.mode(m).cutoff, space.mode(m).cutoff);
    Matrix next(out.rows() * factor.rows(), out.cols() * factor.cols());
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block(i * factor.rows(), j * factor.cols(), factor.rows(), factor.cols()) =
            out(i, j) * factor;
    out = std::move(next);
  }
  return {space, std::move(out)};
}

OperatorMatrix annihilation(const CompositeSpace& space, const std::string& mode_label) {
  return embed(space, mode_label, lowering_matrix(space.mode(space.index_of(mode_label)).cutoff));
}

OperatorMatrix creation(const CompositeSpace& space, const std::string& mode_label) {
  return annihilation(space, mode_label).adjoint();
}

OperatorMatrix number(const CompositeSpace& space, const std::string& mode_label) {
  const int cutoff = space.mode(space.index_of(mode_label)).cutoff;
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = k;
  return embed(space, mode_label, n);
}

OperatorMatrix quadrature_x(const CompositeSpace& space, const std::string& mode_label) {
  const Matrix a = lowering_matrix(space.mode(space.index_of(mode_label)).cutoff);
  return embed(space, mode_label, (a + a.adjoint()) / std::sqrt(2.0));
}

Vector fock_vector(const CompositeSpace& space, const std::vector<int>& occupations) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  v(static_cast<Eigen::Index>(space.basis_index(occupations))) = 1.0;
  return v;
}

Vector superpose_vector(const CompositeSpace& space, const std::vector<FockTerm>& terms) {
  if (terms.empty()) invalid("superposition needs at least one term");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.dim()));
  for (const auto& t : terms)
    v(static_cast<Eigen::Index>(space.basis_index(t.occupations))) += t.amplitude;
  const double norm = v.norm();
  if (norm == 0.0) invalid("superposition amplitudes are all zero");
  return v / norm;
}

StateMatrix pure_state(const CompositeSpace& space, const Vector& ket) {
  if (ket.size() != static_cast<Eigen::Index>(space.dim()))
    invalid("ket dimension does not match space");
  const double norm = ket.norm();
  if (norm == 0.0) invalid("zero ket");
  const Vector v = ket / norm;
  return StateMatrix(space, v * v.adjoint());
}

StateMatrix fock_ket(const CompositeSpace& space, const std::vector<int>& occupations) {
  return pure_state(space, fock_vector(space, occupations));
}

StateMatrix superpose(const CompositeSpace& space, const std::vector<FockTerm>& terms) {
  return pure_state(space, superpose_vector(space, terms));
}

StateMatrix tensor(const StateMatrix& a, const StateMatrix& b) {
  const auto& A = a.data();
  const auto& B = b.data();
  Matrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return StateMatrix(tensor(a.space(), b.space()), std::move(out));
}

double expectation(const StateMatrix& rho, const OperatorMatrix& op) {
  require_same_space(rho.space(), op.space, "expectation");
  return (rho.data() * op.data).trace().real();
}

StateMatrix partial_trace(const StateMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) invalid("partial_trace: keep list is empty");
  const auto& space = rho.space();
  const auto mask = mode_mask(space, keep);
  const auto split = split_indices(space, mask);
  const auto d = static_cast<Eigen::Index>(space.dim());
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(split.selected_dim),
                            static_cast<Eigen::Index>(split.selected_dim));
  const Matrix& r = rho.data();
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i)
      if (split.rest[i] == split.rest[j])
        out(static_cast<Eigen::Index>(split.selected[i]),
            static_cast<Eigen::Index>(split.selected[j])) += r(i, j);
  // Reduction is exact up to rounding; the input was already validated.
  StateTolerance tol;
  tol.trace = std::max(tol.trace, std::abs(rho.trace() - 1.0) + 1e-12);
  tol.min_eigenvalue = std::min(
      tol.min_eigenvalue,
      rho.min_eigenvalue() * static_cast<double>(split.rest_dim) - 1e-12);
  return StateMatrix(space.subspace(keep), std::move(out), tol);
}

OperatorMatrix partial_transpose(const OperatorMatrix& m, const std::vector<std::string>& subsystem) {
  const auto& space = m.space;
  if (subsystem.empty()) invalid("partial_transpose: subsystem is empty");
  const auto mask = mode_mask(space, subsystem);
  if (std::all_of(mask.begin(), mask.end(), [](bool b) { return b; }))
    invalid("partial_transpose: subsystem must be a proper subset of the modes");
  const auto split = split_indices(space, mask);
  // Inverse map from (selected, rest) back to the composite index.
  std::vector<std::size_t> compose(split.selected_dim * split.rest_dim);
  for (std::size_t i = 0; i < space.dim(); ++i)
    compose[split.selected[i] * split.rest_dim + split.rest[i]] = i;
  const auto d = static_cast<Eigen::Index>(space.dim());
  Matrix out(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      const auto ii = compose[split.selected[j] * split.rest_dim + split.rest[i]];
      const auto jj = compose[split.selected[i] * split.rest_dim + split.rest[j]];
      out(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj)) = m.data(i, j);
    }
  return {space, std::move(out)};
}

OperatorMatrix partial_transpose(const StateMatrix& rho, const std::vector<std::string>& subsystem) {
  return partial_transpose(OperatorMatrix(rho.space(), rho.data()), subsystem);
}

double trace_norm(const OperatorMatrix& m) {
  const double herm = max_antihermitian_deviation(m.data);
  if (herm > 1e-10) {
    std::ostringstream os;
    os << "trace_norm: matrix not Hermitian (deviation " << herm << ")";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  return hermitian_eigenvalues(m.data).cwiseAbs().sum();
}

}  // namespace ringmem
