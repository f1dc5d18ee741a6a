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

// Choi-Jamiolkowski correspondence between maps on M_d and operators on
// C^d (x) C^d, with P^+ taken unnormalized: choi(phi) = sum_ij e_ij (x) phi(e_ij).

#include <string>
#include <vector>

#include "atomicmaps/numkernel.hpp"
#include "atomicmaps/posmaps.hpp"

namespace atomicmaps {

/// Choi operator of an arbitrary map; a pure index reshuffle of the
/// superoperator, C[(i,a),(j,b)] = super[(a,b),(i,j)].
inline BipOp choi_operator(const LinMap& map) {
  const int d = map.dim();
  const CMat& s = map.super();
  CMat c(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) c(i * d + a, j * d + b) = s(a * d + b, i * d + j);
  return BipOp(d, d, std::move(c));
}

/// Inverse reshuffle of choi_operator.
inline LinMap map_from_choi(const BipOp& c, std::string label = "from_choi") {
  if (c.dim_a() != c.dim_b())
    throw DimMismatch("map_from_choi: factors must have equal dimension");
  const int d = c.dim_a();
  const CMat& m = c.mat();
  CMat s(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) s(a * d + b, i * d + j) = m(i * d + a, j * d + b);
  return LinMap(d, std::move(s), std::move(label));
}

/// Hermitian operator on C^d (x) C^d with its spectrum cached at construction.
class Witness {
 public:
  Witness(BipOp op, std::string source_label, double tol = kExactTol)
      : op_(std::move(op)), source_label_(std::move(source_label)) {
    if (op_.dim_a() != op_.dim_b())
      throw DimMismatch("Witness: factors must have equal dimension");
    const CMat& m = op_.mat();
    if (!is_hermitian(m, tol * std::max(1.0, max_abs(m))))
      throw NonHermitian("Witness: operator is not Hermitian");
    const RVec ev = hermitian_eigenvalues(m, tol * std::max(1.0, max_abs(m)));
    spectrum_.assign(ev.data(), ev.data() + ev.size());
  }

  const BipOp& op() const { return op_; }
  int dim() const { return op_.dim_a(); }
  const std::string& source_label() const { return source_label_; }
  /// Ascending eigenvalues.
  const std::vector<double>& spectrum() const { return spectrum_; }
  /// True when the operator has a negative eigenvalue, i.e. W is not >= 0.
  bool is_candidate(double tol = kStructuralTol) const {
    return spectrum_.front() < -tol;
  }

 private:
  BipOp op_;
  std::string source_label_;
  std::vector<double> spectrum_;
};

/// Choi witness of a Hermiticity-preserving map; throws NonHermitian otherwise.
inline Witness choi(const LinMap& map) {
  return Witness(choi_operator(map), map.label());
}

/// Duality pairing <rho, phi> = Tr(rho * choi(phi)).
inline double pair(const BipOp& rho, const LinMap& map) {
  if (rho.dim_a() != map.dim() || rho.dim_b() != map.dim())
    throw DimMismatch("pair: operator is " + std::to_string(rho.dim_a()) + "x" +
                      std::to_string(rho.dim_b()) + ", map acts on d = " +
                      std::to_string(map.dim()));
  const CMat& r = rho.mat();
  if (!is_hermitian(r, kExactTol * std::max(1.0, max_abs(r))))
    throw NonHermitian("pair: operator is not Hermitian");
  const CMat c = choi_operator(map).mat();
  const Complex value = r.cwiseProduct(c.transpose()).sum();
  if (std::abs(value.imag()) > kExactTol)
    throw NonHermitian("pair: imaginary residue " + std::to_string(value.imag()) +
                       "; map is not Hermiticity-preserving");
  return value.real();
}

/// (phi, psi) = sum_ij Tr(phi(e_ij)^dagger psi(e_ij)), evaluated on the
/// matrix-unit basis without going through the Choi operator.
inline Complex map_inner(const LinMap& phi, const LinMap& psi) {
  if (phi.dim() != psi.dim())
    throw DimMismatch("map_inner: maps act on different dimensions");
  const int d = phi.dim();
  Complex total = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const CMat e = unit_matrix(d, i, j);
      total += hs_inner(apply(phi, e), apply(psi, e));
    }
  return total;
}

struct WitnessReport {
  std::vector<double> evals;
  double min_eig;
  bool is_candidate;
  double trace;
};

inline WitnessReport witness_report(const Witness& w) {
  return {w.spectrum(), w.spectrum().front(), w.is_candidate(),
          w.op().mat().trace().real()};
}

}  // namespace atomicmaps
