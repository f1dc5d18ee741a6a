// Copyright 2026 The atomicmaps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex matrix kernel shared by every other header: the CMat carrier,
// bipartite operators with their index convention, and the Hermitian
// spectral helpers.
//
// Composite index convention: basis vector |i> (x) |j> of C^dA (x) C^dB sits
// at row i * dB + j (0-based, A factor first). Superoperators vectorize
// matrices row-major, vec(X)[i * d + j] = X(i, j).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include "atomicmaps/errors.hpp"

namespace atomicmaps {

using Complex = std::complex<double>;
using CMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Tolerance for structural checks (Hermiticity, PSD, unitality).
inline constexpr double kStructuralTol = 1e-10;
/// Tolerance for values that are exact rationals in double precision.
inline constexpr double kExactTol = 1e-12;

enum class Side { A, B };

inline CMat identity(int d) { return CMat::Identity(d, d); }

/// Matrix unit e_ij (0-based): a single 1 at (i, j).
inline CMat unit_matrix(int d, int i, int j) {
  CMat e = CMat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool all_finite(const CMat& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag()))
        return false;
  return true;
}

inline bool is_hermitian(const CMat& m, double tol = kExactTol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// |a> (x) |b> under the composite index convention.
inline CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Operator on C^dA (x) C^dB.
class BipOp {
 public:
  BipOp(int dA, int dB, CMat mat) : dA_(dA), dB_(dB), mat_(std::move(mat)) {
    if (dA < 1 || dB < 1)
      throw BadDim("BipOp: factor dimensions must be positive");
    const Eigen::Index n = static_cast<Eigen::Index>(dA) * dB;
    if (mat_.rows() != n || mat_.cols() != n)
      throw DimMismatch("BipOp: matrix is " + std::to_string(mat_.rows()) +
                        "x" + std::to_string(mat_.cols()) + ", expected " +
                        std::to_string(n) + "x" + std::to_string(n));
    if (!all_finite(mat_)) throw Error("BipOp: non-finite entry");
  }

  /// Square bipartite operator with equal factors, d = sqrt(rows).
  static BipOp square(CMat mat) {
    const int d = static_cast<int>(std::lround(std::sqrt(mat.rows())));
    if (static_cast<Eigen::Index>(d) * d != mat.rows())
      throw DimMismatch("BipOp: size is not a perfect square");
    return BipOp(d, d, std::move(mat));
  }

  int dim_a() const { return dA_; }
  int dim_b() const { return dB_; }
  int size() const { return dA_ * dB_; }
  const CMat& mat() const { return mat_; }

 private:
  int dA_;
  int dB_;
  CMat mat_;
};

/// Unnormalized maximally entangled operator sum_ij e_ij (x) e_ij.
inline BipOp maximally_entangled(int d) {
  CMat p = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(i * d + i, j * d + j) = 1.0;
  return BipOp(d, d, std::move(p));
}

inline BipOp partial_transpose(const BipOp& rho, Side side) {
  const int dA = rho.dim_a();
  const int dB = rho.dim_b();
  const CMat& in = rho.mat();
  CMat out(in.rows(), in.cols());
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j)
      for (int k = 0; k < dA; ++k)
        for (int l = 0; l < dB; ++l) {
          const Complex v = in(i * dB + j, k * dB + l);
          if (side == Side::B)
            out(i * dB + l, k * dB + j) = v;
          else
            out(k * dB + j, i * dB + l) = v;
        }
  return BipOp(dA, dB, std::move(out));
}

/// Traces out the factor named by `side`.
inline CMat partial_trace(const BipOp& rho, Side side) {
  const int dA = rho.dim_a();
  const int dB = rho.dim_b();
  const CMat& in = rho.mat();
  if (side == Side::A) {
    CMat out = CMat::Zero(dB, dB);
    for (int i = 0; i < dA; ++i) out += in.block(i * dB, i * dB, dB, dB);
    return out;
  }
  CMat out = CMat::Zero(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dA; ++k) out(i, k) = in.block(i * dB, k * dB, dB, dB).trace();
  return out;
}

/// Hilbert-Schmidt inner product Tr(A^dagger B).
inline Complex hs_inner(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch("hs_inner: operand shapes differ");
  return (a.conjugate().cwiseProduct(b)).sum();
}

struct HermitianEig {
  RVec evals;  // ascending
  CMat evecs;  // columns are eigenvectors
};

namespace detail {

inline Eigen::MatrixXcd checked_hermitian(const CMat& h, double tol,
                                          const char* who) {
  if (h.rows() != h.cols())
    throw DimMismatch(std::string(who) + ": matrix is not square");
  const double asym = max_abs(h - h.adjoint());
  if (asym > tol)
    throw NonHermitian(std::string(who) + ": |H - H^dagger|_max = " +
                       std::to_string(asym));
  return Eigen::MatrixXcd(0.5 * (h + h.adjoint()));
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
inline HermitianEig hermitian_eig(const CMat& h, double tol = kStructuralTol) {
  const Eigen::MatrixXcd sym = detail::checked_hermitian(h, tol, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), CMat(solver.eigenvectors())};
}

inline RVec hermitian_eigenvalues(const CMat& h, double tol = kStructuralTol) {
  const Eigen::MatrixXcd sym =
      detail::checked_hermitian(h, tol, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NoConvergence("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

inline double min_eigenvalue(const CMat& h, double tol = kStructuralTol) {
  return hermitian_eigenvalues(h, tol)(0);
}

/// H^{-1/2} for Hermitian positive definite H.
inline CMat psd_inv_sqrt(const CMat& h, double tol = kStructuralTol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  if (eig.evals(0) <= tol)
    throw NotPositiveDefinite("psd_inv_sqrt: smallest eigenvalue " +
                              std::to_string(eig.evals(0)) + " <= " +
                              std::to_string(tol));
  const RVec scale = eig.evals.cwiseSqrt().cwiseInverse();
  return eig.evecs * scale.asDiagonal() * eig.evecs.adjoint();
}

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
inline CMat project_psd(const CMat& h, double tol = kStructuralTol) {
  const HermitianEig eig = hermitian_eig(h, tol);
  const RVec clipped = eig.evals.cwiseMax(0.0);
  CMat out = eig.evecs * clipped.asDiagonal() * eig.evecs.adjoint();
  return 0.5 * (out + out.adjoint());
}

// Seeded sampling helpers. All draws go through std::mt19937_64 so results are
// reproducible for a fixed seed on a given standard library.

inline CMat random_complex_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  return m;
}

/// Real orthogonal matrix from the QR factorization of a Gaussian matrix,
/// with R's diagonal made positive so the distribution is Haar.
inline CMat random_orthogonal(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int c = 0; c < d; ++c)
    if (r(c, c) < 0) q.col(c) *= -1.0;
  return q.cast<Complex>();
}

/// d x k matrix with orthonormal complex columns.
inline CMat random_isometry(int d, int k, std::mt19937_64& rng) {
  const CMat g = random_complex_gaussian(d, k, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr{Eigen::MatrixXcd(g)};
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, k);
  return q;
}

inline CMat random_unitary(int d, std::mt19937_64& rng) {
  return random_isometry(d, d, rng);
}

inline CMat random_hermitian(int d, std::mt19937_64& rng) {
  const CMat g = random_complex_gaussian(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

/// Random density matrix (trace one, full rank almost surely).
inline CMat random_density(int d, std::mt19937_64& rng) {
  const CMat g = random_complex_gaussian(d, d, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace atomicmaps
