#pragma once

// Dense operator algebra on tensor products of truncated bosonic modes.
//
// Basis convention: the composite basis index is the mixed-radix number formed
// by the mode occupations, with the first (leftmost) mode varying slowest.  For
// two modes of cutoff 2 the order is |0,0>, |0,1>, |1,0>, |1,1>.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ringmem/error.hpp"

namespace ringmem {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct ModeSpace {
  std::string label;
  int cutoff = 2;  // Fock levels |0> .. |cutoff-1>
};

class CompositeSpace {
 public:
  CompositeSpace() = default;
  explicit CompositeSpace(std::vector<ModeSpace> modes);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t mode_count() const noexcept { return modes_.size(); }
  const std::vector<ModeSpace>& modes() const noexcept { return modes_; }
  const ModeSpace& mode(std::size_t i) const { return modes_.at(i); }

  // Throws UnknownMode.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const noexcept;

  // Product of the cutoffs of all modes to the right of mode i.
  std::size_t stride(std::size_t i) const { return strides_.at(i); }

  std::size_t basis_index(const std::vector<int>& occupations) const;
  std::vector<int> occupations(std::size_t index) const;

  // Subspace made of the named modes, in this space's order.
  CompositeSpace subspace(const std::vector<std::string>& labels) const;
  CompositeSpace relabeled(const std::string& from, const std::string& to) const;

  friend bool operator==(const CompositeSpace& a, const CompositeSpace& b);

 private:
  std::vector<ModeSpace> modes_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

CompositeSpace tensor(const CompositeSpace& a, const CompositeSpace& b);

struct OperatorMatrix {
  CompositeSpace space;
  Matrix data;

  OperatorMatrix() = default;
  OperatorMatrix(CompositeSpace s, Matrix m);

  OperatorMatrix adjoint() const { return {space, data.adjoint()}; }
};

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-8;
  double min_eigenvalue = -1e-8;
};

// Density matrix.  Construction validates Hermiticity, unit trace and
// positivity against the supplied tolerances and throws otherwise.
class StateMatrix {
 public:
  StateMatrix(CompositeSpace space, Matrix data, const StateTolerance& tol = {});

  const CompositeSpace& space() const noexcept { return space_; }
  const Matrix& data() const noexcept { return data_; }
  std::size_t dim() const noexcept { return space_.dim(); }

  double trace() const { return data_.trace().real(); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  CompositeSpace space_;
  Matrix data_;
};

// Eigenvalues of a Hermitian matrix (ascending).
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);
double max_antihermitian_deviation(const Matrix& m);

OperatorMatrix identity(const CompositeSpace& space);
OperatorMatrix annihilation(const CompositeSpace& space, const std::string& mode_label);
OperatorMatrix creation(const CompositeSpace& space, const std::string& mode_label);
OperatorMatrix number(const CompositeSpace& space, const std::string& mode_label);
OperatorMatrix quadrature_x(const CompositeSpace& space, const std::string& mode_label);

// Embeds a single-mode matrix on the named mode, identity elsewhere.
OperatorMatrix embed(const CompositeSpace& space, const std::string& mode_label,
                     const Matrix& single_mode);

struct FockTerm {
  Complex amplitude;
  std::vector<int> occupations;
};

Vector fock_vector(const CompositeSpace& space, const std::vector<int>& occupations);
Vector superpose_vector(const CompositeSpace& space, const std::vector<FockTerm>& terms);

StateMatrix pure_state(const CompositeSpace& space, const Vector& ket);
StateMatrix fock_ket(const CompositeSpace& space, const std::vector<int>& occupations);
StateMatrix superpose(const CompositeSpace& space, const std::vector<FockTerm>& terms);
StateMatrix tensor(const StateMatrix& a, const StateMatrix& b);

double expectation(const StateMatrix& rho, const OperatorMatrix& op);

StateMatrix partial_trace(const StateMatrix& rho, const std::vector<std::string>& keep);
OperatorMatrix partial_transpose(const OperatorMatrix& m,
                                 const std::vector<std::string>& subsystem);
OperatorMatrix partial_transpose(const StateMatrix& rho,
                                 const std::vector<std::string>& subsystem);

// Sum of |eigenvalues| of a Hermitian matrix.  Throws NotHermitian.
double trace_norm(const OperatorMatrix& m);

}  // namespace ringmem
