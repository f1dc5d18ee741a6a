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

// Positive map families on M_d, all materialized as d^2 x d^2 superoperators:
// reduction, trace, Breuer-Hall (full and subspace-extended), Robertson, the
// two-parameter chi family, and the Hall coefficient-matrix form.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "atomicmaps/numkernel.hpp"

namespace atomicmaps {

/// Linear map M_d -> M_d acting as phi(X) = unvec(super * vec(X)).
class LinMap {
 public:
  LinMap(int d, CMat super, std::string label, std::string warning = {})
      : d_(d),
        super_(std::move(super)),
        label_(std::move(label)),
        warning_(std::move(warning)) {
    if (d < 1) throw BadDim("LinMap: dimension must be positive");
    if (super_.rows() != d * d || super_.cols() != d * d)
      throw DimMismatch("LinMap: superoperator must be d^2 x d^2");
  }

  /// Builds the superoperator column by column from phi(e_kl).
  template <class Action>
  static LinMap from_action(int d, Action&& action, std::string label,
                            std::string warning = {}) {
    CMat super(d * d, d * d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const CMat image = action(unit_matrix(d, k, l));
        super.col(k * d + l) =
            Eigen::Map<const CVec>(image.data(), d * d);
      }
    return LinMap(d, std::move(super), std::move(label), std::move(warning));
  }

  int dim() const { return d_; }
  const CMat& super() const { return super_; }
  const std::string& label() const { return label_; }
  /// Non-empty when the construction is degenerate (e.g. the d = 2 Breuer-Hall map).
  const std::string& warning() const { return warning_; }

 private:
  int d_;
  CMat super_;
  std::string label_;
  std::string warning_;
};

namespace detail {

struct ApplyMap {
  CMat operator()(const LinMap& map, const CMat& x) const {
    const int d = map.dim();
    if (x.rows() != d || x.cols() != d)
      throw DimMismatch("apply: input is " + std::to_string(x.rows()) + "x" +
                        std::to_string(x.cols()) + ", map acts on " +
                        std::to_string(d) + "x" + std::to_string(d));
    CMat out(d, d);
    Eigen::Map<CVec>(out.data(), d * d) =
        map.super() * Eigen::Map<const CVec>(x.data(), d * d);
    return out;
  }
};

}  // namespace detail

/// phi(X). A function object rather than a function so that calls with Eigen
/// expression arguments never pick up std::apply through ADL.
inline constexpr detail::ApplyMap apply{};

// ---------------------------------------------------------------------------
// Antisymmetric operators

enum class AntisymKind { FullUnitary, PartialRank };

/// Block form i * I_k (x) sigma_2 on the first 2k coordinates, zero elsewhere.
inline CMat standard_antisym_matrix(int d, int k) {
  CMat u = CMat::Zero(d, d);
  for (int b = 0; b < k; ++b) {
    u(2 * b, 2 * b + 1) = 1.0;
    u(2 * b + 1, 2 * b) = -1.0;
  }
  return u;
}

/// Antisymmetric U (U^T = -U) that is either unitary or a partial isometry of
/// rank 2k. Optionally remembers a unitary frame W with U = W U_ref W^T, where
/// U_ref = standard_antisym_matrix(d, k); the frame lets callers transport
/// witness states built for the standard form.
class AntisymOp {
 public:
  static AntisymOp from_matrix(CMat u, double tol = kExactTol) {
    if (u.rows() != u.cols() || u.rows() < 2)
      throw InvalidAntisym("AntisymOp: matrix must be square, d >= 2");
    const int d = static_cast<int>(u.rows());
    if (max_abs(u.transpose() + u) > tol)
      throw InvalidAntisym("AntisymOp: U^T != -U");
    const CMat p = u.adjoint() * u;
    if (max_abs(p * p - p) > tol)
      throw InvalidAntisym("AntisymOp: U^dagger U is not a projector");
    const double tr = p.trace().real();
    const int rank = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank) > tol || rank == 0 || rank % 2 != 0)
      throw InvalidAntisym("AntisymOp: U^dagger U must have positive even rank");
    const AntisymKind kind =
        rank == d ? AntisymKind::FullUnitary : AntisymKind::PartialRank;
    return AntisymOp(std::move(u), kind, rank / 2, std::nullopt);
  }

  /// Attaches a frame after checking W is unitary and U = W U_ref W^T.
  AntisymOp with_frame(CMat frame, double tol = kStructuralTol) const {
    const int d = dim();
    if (frame.rows() != d || frame.cols() != d)
      throw DimMismatch("AntisymOp: frame dimension mismatch");
    if (max_abs(frame.adjoint() * frame - identity(d)) > tol)
      throw InvalidAntisym("AntisymOp: frame is not unitary");
    const CMat rebuilt =
        frame * standard_antisym_matrix(d, k_) * frame.transpose();
    if (max_abs(rebuilt - u_) > tol)
      throw InvalidAntisym("AntisymOp: frame does not reproduce U");
    return AntisymOp(u_, kind_, k_, std::move(frame));
  }

  int dim() const { return static_cast<int>(u_.rows()); }
  const CMat& matrix() const { return u_; }
  AntisymKind kind() const { return kind_; }
  /// Rank of U, i.e. 2k.
  int rank() const { return 2 * k_; }
  int half_rank() const { return k_; }
  const std::optional<CMat>& frame() const { return frame_; }

 private:
  AntisymOp(CMat u, AntisymKind kind, int k, std::optional<CMat> frame)
      : u_(std::move(u)), kind_(kind), k_(k), frame_(std::move(frame)) {}

  CMat u_;
  AntisymKind kind_;
  int k_;
  std::optional<CMat> frame_;
};

/// U_0 = i I_{d/2} (x) sigma_2.
inline AntisymOp standard_antisym(int d) {
  if (d < 2 || d % 2 != 0)
    throw BadDim("standard_antisym: d must be even and >= 2");
  return AntisymOp::from_matrix(standard_antisym_matrix(d, d / 2))
      .with_frame(identity(d));
}

/// U_0 on the first 2k coordinates of C^d and zero on the complement.
inline AntisymOp standard_antisym_partial(int d, int k) {
  if (k < 1 || 2 * k > d)
    throw BadDim("standard_antisym_partial: need 1 <= k <= d/2");
  return AntisymOp::from_matrix(standard_antisym_matrix(d, k))
      .with_frame(identity(d));
}

/// Zero extension U -> U (+) 0 into C^D; antisymmetric but no longer unitary.
inline AntisymOp extend(const AntisymOp& u, int D) {
  const int d = u.dim();
  if (D < d) throw BadDim("extend: target dimension smaller than source");
  CMat big = CMat::Zero(D, D);
  big.topLeftCorner(d, d) = u.matrix();
  AntisymOp out = AntisymOp::from_matrix(std::move(big));
  if (u.frame()) {
    CMat frame = identity(D);
    frame.topLeftCorner(d, d) = *u.frame();
    out = out.with_frame(std::move(frame));
  }
  return out;
}

/// U = V U_0 V^T with V a seeded Haar-random real orthogonal matrix.
inline AntisymOp random_antisym_unitary(int d, std::uint64_t seed) {
  if (d < 2 || d % 2 != 0)
    throw BadDim("random_antisym_unitary: d must be even and >= 2");
  std::mt19937_64 rng(seed);
  const CMat v = random_orthogonal(d, rng);
  CMat u = v * standard_antisym_matrix(d, d / 2) * v.transpose();
  u = (0.5 * (u - u.transpose())).eval();  // exact antisymmetry
  return AntisymOp::from_matrix(std::move(u)).with_frame(v);
}

// ---------------------------------------------------------------------------
// Map families

inline LinMap reduction_map(int d) {
  if (d < 2) throw BadDim("reduction_map: d must be >= 2");
  return LinMap::from_action(
      d, [d](const CMat& x) -> CMat { return x.trace() * identity(d) - x; },
      "reduction");
}

inline LinMap trace_map(int d) {
  if (d < 1) throw BadDim("trace_map: d must be >= 1");
  return LinMap::from_action(
      d, [d](const CMat& x) -> CMat { return x.trace() * identity(d); },
      "trace");
}

/// X -> Tr(X) I - X - U X^T U^dagger, optionally normalized to be unital.
inline LinMap breuer_hall(const AntisymOp& u, bool normalized) {
  const int d = u.dim();
  const CMat& um = u.matrix();
  const CMat ud = um.adjoint();
  std::string warning;
  if (d == 2) {
    if (normalized)
      throw BadDim("breuer_hall: the d = 2 map vanishes and cannot be normalized");
    warning = "breuer_hall: map is trivial (identically zero) for d = 2";
  }
  auto raw = [&](const CMat& x) -> CMat {
    return x.trace() * identity(d) - x - um * x.transpose() * ud;
  };
  if (!normalized) return LinMap::from_action(d, raw, "breuer_hall", warning);

  if (u.kind() == AntisymKind::FullUnitary) {
    const double scale = 1.0 / (d - 2);
    return LinMap::from_action(
        d, [&](const CMat& x) -> CMat { return scale * raw(x); },
        "breuer_hall_normalized");
  }
  // phi(I) = (d - 2) I + P_perp; conjugate by its inverse square root.
  const CMat s = psd_inv_sqrt(raw(identity(d)));
  return LinMap::from_action(
      d, [&](const CMat& x) -> CMat { return s * raw(x) * s; },
      "breuer_hall_normalized");
}

/// Robertson's map on M_4 in 2x2 block form.
inline LinMap robertson() {
  auto reduce2 = [](const CMat& a) -> CMat {
    return a.trace() * identity(2) - a;
  };
  return LinMap::from_action(
      4,
      [&](const CMat& x) -> CMat {
        const CMat x11 = x.block(0, 0, 2, 2);
        const CMat x12 = x.block(0, 2, 2, 2);
        const CMat x21 = x.block(2, 0, 2, 2);
        const CMat x22 = x.block(2, 2, 2, 2);
        CMat out(4, 4);
        out.block(0, 0, 2, 2) = x22.trace() * identity(2);
        out.block(0, 2, 2, 2) = x12 + reduce2(x21);
        out.block(2, 0, 2, 2) = x21 + reduce2(x12);
        out.block(2, 2, 2, 2) = x11.trace() * identity(2);
        return 0.5 * out;
      },
      "robertson");
}

/// X -> Tr(X) I - y X - x U X^T U^dagger for (x, y) in the unit square.
inline LinMap chi_map(double x, double y, const AntisymOp& u) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw RangeError("chi_map: (x, y) must lie in [0,1]^2");
  const int d = u.dim();
  const CMat& um = u.matrix();
  const CMat ud = um.adjoint();
  return LinMap::from_action(
      d,
      [&](const CMat& m) -> CMat {
        return m.trace() * identity(d) - y * m - x * (um * m.transpose() * ud);
      },
      "chi");
}

// ---------------------------------------------------------------------------
// Hall coefficient-matrix form

inline int pair_count(int d) { return d * (d - 1) / 2; }

/// Lexicographic position of (k, l), k < l, among all pairs of {0..d-1}.
inline int pair_index(int d, int k, int l) {
  if (!(0 <= k && k < l && l < d))
    throw BadPair("pair_index: need 0 <= k < l < d");
  return k * d - k * (k + 1) / 2 + (l - k - 1);
}

inline std::vector<std::pair<int, int>> pair_list(int d) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(pair_count(d));
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) pairs.emplace_back(k, l);
  return pairs;
}

/// A_kl = e_kl - e_lk.
inline CMat pair_generator(int d, int k, int l) {
  if (!(0 <= k && k < l && l < d))
    throw BadPair("pair_generator: need 0 <= k < l < d");
  CMat a = CMat::Zero(d, d);
  a(k, l) = 1.0;
  a(l, k) = -1.0;
  return a;
}

/// Hermitian m x m coefficient matrix, m = d(d-1)/2, indexed by pair_list(d).
class CoeffMatrix {
 public:
  CoeffMatrix(int d, CMat c, double tol = kExactTol) : d_(d), c_(std::move(c)) {
    const int m = pair_count(d);
    if (d < 2) throw BadDim("CoeffMatrix: d must be >= 2");
    if (c_.rows() != m || c_.cols() != m)
      throw DimMismatch("CoeffMatrix: expected " + std::to_string(m) + "x" +
                        std::to_string(m));
    if (!is_hermitian(c_, tol))
      throw NonHermitian("CoeffMatrix: coefficients must be Hermitian");
  }

  int dim() const { return d_; }
  const CMat& coefficients() const { return c_; }

 private:
  int d_;
  CMat c_;
};

enum class HallVariant { Transposed, Plain };

/// phi(X) = sum_{p,q} c_pq A_p X' A_q^dagger with X' = X^T or X.
inline LinMap hall_map(const CoeffMatrix& c, HallVariant variant) {
  const int d = c.dim();
  const auto pairs = pair_list(d);
  std::vector<CMat> gens;
  gens.reserve(pairs.size());
  for (auto [k, l] : pairs) gens.push_back(pair_generator(d, k, l));
  const CMat& coeff = c.coefficients();
  return LinMap::from_action(
      d,
      [&](const CMat& x) -> CMat {
        const CMat xp = variant == HallVariant::Transposed ? CMat(x.transpose()) : x;
        CMat out = CMat::Zero(d, d);
        for (std::size_t p = 0; p < gens.size(); ++p) {
          const CMat left = gens[p] * xp;
          for (std::size_t q = 0; q < gens.size(); ++q) {
            const Complex w = coeff(p, q);
            if (w != Complex(0.0)) out += w * left * gens[q].adjoint();
          }
        }
        return out;
      },
      variant == HallVariant::Transposed ? "hall_transposed" : "hall_plain");
}

/// Coordinates of U in the A_kl basis: u_(kl) = U_kl for k < l.
inline CVec pair_vector(const AntisymOp& u) {
  const int d = u.dim();
  CVec v(pair_count(d));
  int p = 0;
  for (auto [k, l] : pair_list(d)) v(p++) = u.matrix()(k, l);
  return v;
}

struct CoeffAnalysis {
  CoeffMatrix c;
  double cp_weight;  // weight of the trace map, 1 - y
  double min_eig;    // smallest eigenvalue of c
};

/// Splits chi^U_{x,y} = (1 - y) * trace_map + hall_map(c, Transposed) with
/// c = y I - x u u^dagger.
inline CoeffAnalysis coefficient_analysis(double x, double y,
                                          const AntisymOp& u) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
    throw RangeError("coefficient_analysis: (x, y) must lie in [0,1]^2");
  const int d = u.dim();
  const CVec v = pair_vector(u);
  CMat c = y * identity(pair_count(d)) - x * (v * v.adjoint());
  c = (0.5 * (c + c.adjoint())).eval();
  const double min_eig = min_eigenvalue(c);
  return {CoeffMatrix(d, std::move(c)), 1.0 - y, min_eig};
}

}  // namespace atomicmaps
