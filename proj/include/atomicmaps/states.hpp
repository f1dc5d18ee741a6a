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

// Bipartite states used as entanglement probes: the fixed 4x4 and 3x3 PPT
// states, structural tests (PSD, PPT, Schmidt rank), Schmidt-number
// certificates, and the local operations that transport them (Gamma
// conjugation, zero-padding into larger dimensions, local unitaries).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "atomicmaps/choiduality.hpp"
#include "atomicmaps/numkernel.hpp"

namespace atomicmaps {

/// Hermitian bipartite operator; trace one when `normalized`.
class BipState {
 public:
  BipState(BipOp op, bool normalized, double tol = kExactTol)
      : op_(std::move(op)), normalized_(normalized) {
    const CMat& m = op_.mat();
    if (!is_hermitian(m, tol * std::max(1.0, max_abs(m))))
      throw NonHermitian("BipState: operator is not Hermitian");
    if (normalized_ && std::abs(m.trace() - Complex(1.0)) > tol)
      throw Error("BipState: normalized state must have unit trace");
  }

  const BipOp& op() const { return op_; }
  const CMat& mat() const { return op_.mat(); }
  int dim_a() const { return op_.dim_a(); }
  int dim_b() const { return op_.dim_b(); }
  bool normalized() const { return normalized_; }

 private:
  BipOp op_;
  bool normalized_;
};

inline double pair(const BipState& rho, const LinMap& map) {
  return pair(rho.op(), map);
}

namespace detail {

struct Entry {
  int row;
  int col;
  double numerator;
};

inline BipState rational_state(int d, double denominator,
                               std::initializer_list<Entry> entries) {
  CMat m = CMat::Zero(d * d, d * d);
  for (const Entry& e : entries) m(e.row, e.col) = e.numerator / denominator;
  return BipState(BipOp(d, d, std::move(m)), true);
}

}  // namespace detail

enum class HaForm { Dim4, Dim3 };

/// Ha's PPT entangled state: the 4 (x) 4 form, or the 3 (x) 3 state it is
/// built from. Entries are multiples of 1/7.
inline BipState rho_ha(HaForm form = HaForm::Dim4) {
  if (form == HaForm::Dim3)
    return detail::rational_state(
        3, 7.0,
        {{0, 0, 1}, {0, 7, -1}, {1, 1, 1}, {3, 3, 1}, {5, 5, 1}, {5, 6, 1},
         {6, 5, 1}, {6, 6, 1}, {7, 0, -1}, {7, 7, 1}, {8, 8, 1}});
  return detail::rational_state(
      4, 7.0,
      {{0, 0, 1}, {0, 10, -1}, {2, 2, 1}, {4, 4, 1}, {7, 7, 1}, {7, 8, 1},
       {8, 7, 1}, {8, 8, 1}, {10, 0, -1}, {10, 10, 1}, {11, 11, 1}});
}

/// PPT state on 4 (x) 4 with entries in multiples of 1/24; pairs to -1/6
/// against the Robertson witness.
inline BipState rho_new() {
  return detail::rational_state(
      4, 24.0,
      {{0, 0, 2},   {0, 10, -1},  {0, 15, -1}, {1, 1, 2},   {2, 2, 1},
       {2, 13, 1},  {3, 3, 1},    {3, 9, -1},  {4, 4, 2},   {5, 5, 2},
       {5, 10, -1}, {5, 15, -1},  {6, 6, 1},   {6, 12, -1}, {7, 7, 1},
       {7, 8, 1},   {8, 7, 1},    {8, 8, 1},   {9, 3, -1},  {9, 9, 1},
       {10, 0, -1}, {10, 5, -1},  {10, 10, 2}, {11, 11, 2}, {12, 6, -1},
       {12, 12, 1}, {13, 2, 1},   {13, 13, 1}, {14, 14, 2}, {15, 0, -1},
       {15, 5, -1}, {15, 15, 2}});
}

/// Gamma = diag(I_2, -I_2).
inline CMat gamma_matrix() {
  CMat g = identity(4);
  g(2, 2) = -1.0;
  g(3, 3) = -1.0;
  return g;
}

/// (A (x) B) rho (A (x) B)^dagger.
inline BipState local_conjugate(const BipState& rho, const CMat& a,
                                const CMat& b) {
  if (a.rows() != rho.dim_a() || a.cols() != rho.dim_a() ||
      b.rows() != rho.dim_b() || b.cols() != rho.dim_b())
    throw DimMismatch("local_conjugate: local operator dimensions differ");
  const CMat ab = kron(a, b);
  CMat m = ab * rho.mat() * ab.adjoint();
  m = (0.5 * (m + m.adjoint())).eval();
  return BipState(BipOp(rho.dim_a(), rho.dim_b(), std::move(m)),
                  rho.normalized());
}

enum class GammaPlacement { SecondFactor, BothFactors };

inline BipState gamma_conjugate(const BipState& rho,
                                GammaPlacement placement = GammaPlacement::SecondFactor) {
  if (rho.dim_a() != 4 || rho.dim_b() != 4)
    throw BadDim("gamma_conjugate: requires a 4 (x) 4 operator");
  const CMat g = gamma_matrix();
  return local_conjugate(
      rho, placement == GammaPlacement::BothFactors ? g : identity(4), g);
}

inline BipState partial_transpose(const BipState& rho, Side side = Side::B) {
  return BipState(partial_transpose(rho.op(), side), rho.normalized());
}

/// Zero-pads a d0 (x) d0 operator into D (x) D, keeping the first d0 basis
/// vectors of each factor.
inline BipOp embed(const BipOp& rho, int D) {
  if (rho.dim_a() != rho.dim_b())
    throw DimMismatch("embed: factors must have equal dimension");
  const int d0 = rho.dim_a();
  if (D < d0) throw BadDim("embed: target dimension smaller than source");
  CMat m = CMat::Zero(D * D, D * D);
  for (int i = 0; i < d0; ++i)
    for (int j = 0; j < d0; ++j)
      for (int k = 0; k < d0; ++k)
        for (int l = 0; l < d0; ++l)
          m(i * D + j, k * D + l) = rho.mat()(i * d0 + j, k * d0 + l);
  return BipOp(D, D, std::move(m));
}

inline BipState embed(const BipState& rho, int D) {
  return BipState(embed(rho.op(), D), rho.normalized());
}

struct PptReport {
  bool is_psd;
  bool is_ppt;
  double min_eig;
  double min_eig_pt;
};

/// Peres-Horodecki test: PSD and PSD partial transpose, each up to -tol.
inline PptReport ppt_check(const BipOp& rho, double tol = kStructuralTol) {
  const CMat& m = rho.mat();
  if (!is_hermitian(m, kExactTol * std::max(1.0, max_abs(m))))
    throw NonHermitian("ppt_check: operator is not Hermitian");
  const double lo = min_eigenvalue(m);
  const double lo_pt = min_eigenvalue(partial_transpose(rho, Side::B).mat());
  const bool psd = lo >= -tol;
  return {psd, psd && lo_pt >= -tol, lo, lo_pt};
}

inline PptReport ppt_check(const BipState& rho, double tol = kStructuralTol) {
  return ppt_check(rho.op(), tol);
}

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kSchmidtTol = 1e-8;

/// Schmidt rank of a pure vector on C^dA (x) C^dB.
inline int schmidt_rank_pure(const CVec& v, int dA, int dB,
                             double tol = kSchmidtTol) {
  if (v.size() != static_cast<Eigen::Index>(dA) * dB)
    throw DimMismatch("schmidt_rank_pure: vector length is not dA * dB");
  if (v.norm() == 0.0) throw ZeroVector("schmidt_rank_pure: zero vector");
  Eigen::MatrixXcd reshaped(dA, dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j) reshaped(i, j) = v(i * dB + j);
  const Eigen::VectorXd sv =
      Eigen::JacobiSVD<Eigen::MatrixXcd>(reshaped).singularValues();
  const double cutoff = tol * sv(0);
  return static_cast<int>((sv.array() > cutoff).count());
}

inline int schmidt_rank_pure(const CVec& v, double tol = kSchmidtTol) {
  const int d = static_cast<int>(std::lround(std::sqrt(v.size())));
  if (static_cast<Eigen::Index>(d) * d != v.size())
    throw DimMismatch("schmidt_rank_pure: length is not a perfect square");
  return schmidt_rank_pure(v, d, d, tol);
}

struct SchmidtTerm {
  double weight;
  CVec vector;
};

/// Claim: rho = sum_i weight_i |v_i><v_i| with every v_i of Schmidt rank <=
/// claimed_k, which certifies SN(rho) <= claimed_k.
struct SchmidtCertificate {
  int dA = 0;
  int dB = 0;
  std::vector<SchmidtTerm> terms;
  int claimed_k = 0;
};

enum class SchmidtFailure {
  None,
  DimMismatch,
  NegativeWeight,
  RankExceeded,
  ResidualTooLarge,
};

inline const char* to_string(SchmidtFailure f) {
  switch (f) {
    case SchmidtFailure::None: return "none";
    case SchmidtFailure::DimMismatch: return "dim_mismatch";
    case SchmidtFailure::NegativeWeight: return "negative_weight";
    case SchmidtFailure::RankExceeded: return "rank_exceeded";
    case SchmidtFailure::ResidualTooLarge: return "residual_too_large";
  }
  return "unknown";
}

struct SchmidtCheck {
  bool ok = false;
  SchmidtFailure reason = SchmidtFailure::None;
  double residual = 0.0;
  int max_rank = 0;
  explicit operator bool() const { return ok; }
};

inline CMat reconstruct(const SchmidtCertificate& cert) {
  const int n = cert.dA * cert.dB;
  CMat m = CMat::Zero(n, n);
  for (const SchmidtTerm& t : cert.terms)
    m += t.weight * (t.vector * t.vector.adjoint());
  return m;
}

inline SchmidtCheck verify_schmidt_certificate(const BipOp& rho,
                                               const SchmidtCertificate& cert,
                                               double tol = kSchmidtTol) {
  SchmidtCheck check;
  if (cert.dA != rho.dim_a() || cert.dB != rho.dim_b()) {
    check.reason = SchmidtFailure::DimMismatch;
    return check;
  }
  for (const SchmidtTerm& t : cert.terms) {
    if (t.vector.size() != rho.size()) {
      check.reason = SchmidtFailure::DimMismatch;
      return check;
    }
    if (t.weight < 0.0) {
      check.reason = SchmidtFailure::NegativeWeight;
      return check;
    }
    if (t.weight == 0.0 || t.vector.norm() == 0.0) continue;
    check.max_rank = std::max(check.max_rank,
                              schmidt_rank_pure(t.vector, cert.dA, cert.dB));
  }
  check.residual = (rho.mat() - reconstruct(cert)).norm();
  if (check.max_rank > cert.claimed_k)
    check.reason = SchmidtFailure::RankExceeded;
  else if (check.residual > tol)
    check.reason = SchmidtFailure::ResidualTooLarge;
  else
    check.ok = true;
  return check;
}

inline SchmidtCheck verify_schmidt_certificate(const BipState& rho,
                                               const SchmidtCertificate& cert,
                                               double tol = kSchmidtTol) {
  return verify_schmidt_certificate(rho.op(), cert, tol);
}

/// Searches for a decomposition certifying SN(rho) <= k. The operator is split
/// into the connected components of its sparsity graph and each block is
/// diagonalized separately; eigenvectors then live on few basis states, which
/// keeps their Schmidt ranks low for sparse states such as rho_ha. Returns
/// nullopt when a term exceeds k, rho has a negative eigenvalue, or the
/// reconstruction misses `tol`.
inline std::optional<SchmidtCertificate> derive_schmidt_certificate(
    const BipOp& rho, int k, double tol = kSchmidtTol) {
  const CMat& m = rho.mat();
  const int n = rho.size();
  const double zero = 1e-14 * std::max(1.0, max_abs(m));

  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (std::abs(m(r, c)) > zero) parent[find(r)] = find(c);

  std::map<int, std::vector<int>> components;
  for (int i = 0; i < n; ++i) components[find(i)].push_back(i);

  SchmidtCertificate cert{rho.dim_a(), rho.dim_b(), {}, k};
  for (const auto& [root, idx] : components) {
    const int s = static_cast<int>(idx.size());
    CMat block(s, s);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) block(a, b) = m(idx[a], idx[b]);
    if (max_abs(block) <= zero) continue;
    const HermitianEig eig = hermitian_eig(block);
    for (int e = 0; e < s; ++e) {
      const double w = eig.evals(e);
      if (w < -zero) return std::nullopt;
      if (w <= zero) continue;
      CVec v = CVec::Zero(n);
      for (int a = 0; a < s; ++a) v(idx[a]) = eig.evecs(a, e);
      if (schmidt_rank_pure(v, rho.dim_a(), rho.dim_b()) > k) return std::nullopt;
      cert.terms.push_back({w, std::move(v)});
    }
  }
  if (!verify_schmidt_certificate(rho, cert, tol)) return std::nullopt;
  return cert;
}

/// Applies A (x) B to every vector of a certificate; certifies the same
/// Schmidt number for (A (x) B) rho (A (x) B)^dagger.
inline SchmidtCertificate transform_certificate(const SchmidtCertificate& cert,
                                                const CMat& a, const CMat& b) {
  const CMat ab = kron(a, b);
  SchmidtCertificate out{cert.dA, cert.dB, {}, cert.claimed_k};
  for (const SchmidtTerm& t : cert.terms)
    out.terms.push_back({t.weight, ab * t.vector});
  return out;
}

/// Zero-pads certificate vectors to match embed(rho, D).
inline SchmidtCertificate embed_certificate(const SchmidtCertificate& cert,
                                            int D) {
  if (cert.dA != cert.dB || D < cert.dA)
    throw BadDim("embed_certificate: need square factors and D >= d0");
  const int d0 = cert.dA;
  SchmidtCertificate out{D, D, {}, cert.claimed_k};
  for (const SchmidtTerm& t : cert.terms) {
    CVec v = CVec::Zero(D * D);
    for (int i = 0; i < d0; ++i)
      for (int j = 0; j < d0; ++j) v(i * D + j) = t.vector(i * d0 + j);
    out.terms.push_back({t.weight, std::move(v)});
  }
  return out;
}

/// Unit vector sum_{i<k} c_i a_i (x) b_i with seeded orthonormal {a_i}, {b_i}
/// and positive coefficients; its Schmidt rank is exactly k.
inline CVec sample_schmidt_k(int d, int k, std::uint64_t seed) {
  if (k < 1 || k > d) throw BadK("sample_schmidt_k: need 1 <= k <= d");
  std::mt19937_64 rng(seed);
  const CMat a = random_isometry(d, k, rng);
  const CMat b = random_isometry(d, k, rng);
  std::uniform_real_distribution<double> coeff(0.5, 1.0);
  CVec v = CVec::Zero(d * d);
  for (int i = 0; i < k; ++i) {
    const double c = coeff(rng);
    v += c * kron_vec(a.col(i), b.col(i));
  }
  return v / v.norm();
}

}  // namespace atomicmaps
