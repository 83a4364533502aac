#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ringmem/hilbert.hpp"

namespace testing {

using ringmem::Complex;
using ringmem::Matrix;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix lowering(int cutoff) {
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Ginibre ensemble: G G^dag / Tr, full rank unless rank is given.
inline Matrix random_density(std::size_t dim, std::mt19937_64& rng, std::size_t rank = 0) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto k = static_cast<Eigen::Index>(rank ? rank : dim);
  Matrix g(static_cast<Eigen::Index>(dim), k);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = Complex(n(rng), n(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline Matrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(n(rng), n(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

inline Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// F = ||sqrt(a) sqrt(b)||_1^2.
inline double fidelity_oracle(const Matrix& a, const Matrix& b) {
  Eigen::JacobiSVD<Matrix> svd(psd_sqrt(a) * psd_sqrt(b));
  const double s = svd.singularValues().sum();
  return s * s;
}

// log2 of the nuclear norm of the transpose over the first factor of a
// (da x db) system.
inline double log_negativity_oracle(const Matrix& rho, int da, int db) {
  Matrix pt(rho.rows(), rho.cols());
  for (int i1 = 0; i1 < da; ++i1)
    for (int j1 = 0; j1 < db; ++j1)
      for (int i2 = 0; i2 < da; ++i2)
        for (int j2 = 0; j2 < db; ++j2)
          pt(i1 * db + j1, i2 * db + j2) = rho(i2 * db + j1, i1 * db + j2);
  Eigen::JacobiSVD<Matrix> svd(pt);
  return std::log2(svd.singularValues().sum());
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
