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

// Reference implementations for the tests. Each one is written from the
// defining formula with explicit loops and shares no code path with the
// library beyond the matrix type and `apply`.

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "atomicmaps/numkernel.hpp"
#include "atomicmaps/posmaps.hpp"

namespace oracle {

using atomicmaps::CMat;
using atomicmaps::Complex;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline CMat e(int d, int i, int j) {
  CMat m = CMat::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

/// Transpose of the second factor: <ia|M^T_B|jb> = <ib|M|ja>.
inline CMat partial_transpose_b(const CMat& m, int dA, int dB) {
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < dA; ++i)
    for (int a = 0; a < dB; ++a)
      for (int j = 0; j < dA; ++j)
        for (int b = 0; b < dB; ++b)
          out(i * dB + a, j * dB + b) = m(i * dB + b, j * dB + a);
  return out;
}

inline CMat partial_transpose_a(const CMat& m, int dA, int dB) {
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < dA; ++i)
    for (int a = 0; a < dB; ++a)
      for (int j = 0; j < dA; ++j)
        for (int b = 0; b < dB; ++b)
          out(i * dB + a, j * dB + b) = m(j * dB + a, i * dB + b);
  return out;
}

/// Tr_B.
inline CMat trace_out_b(const CMat& m, int dA, int dB) {
  CMat out = CMat::Zero(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      for (int a = 0; a < dB; ++a) out(i, j) += m(i * dB + a, j * dB + a);
  return out;
}

/// sum_ij e_ij (x) phi(e_ij).
inline CMat choi(const atomicmaps::LinMap& map) {
  const int d = map.dim();
  CMat w = CMat::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) w += kron(e(d, i, j), atomicmaps::apply(map, e(d, i, j)));
  return w;
}

/// Robertson map from its action on matrix units (1-based labels in the
/// comments), extended to e_ji by phi(e_ji) = phi(e_ij)^dagger.
inline CMat robertson(const CMat& x) {
  auto u = [](int i, int j) { return e(4, i - 1, j - 1); };
  std::array<std::array<CMat, 4>, 4> img;
  img[0][0] = img[1][1] = 0.5 * (u(3, 3) + u(4, 4));
  img[2][2] = img[3][3] = 0.5 * (u(1, 1) + u(2, 2));
  img[0][2] = 0.5 * (u(1, 3) + u(4, 2));
  img[0][3] = 0.5 * (u(1, 4) - u(3, 2));
  img[1][2] = 0.5 * (u(2, 3) - u(4, 1));
  img[1][3] = 0.5 * (u(2, 4) + u(3, 1));
  img[0][1] = img[2][3] = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) img[i][j] = img[j][i].adjoint();
  CMat out = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out += x(i, j) * img[i][j];
  return out;
}

/// The 16x16 Robertson witness entered by hand as a nonzero pattern (all entries
/// carry the overall factor 1/2).
inline CMat reference_robertson_witness() {
  const std::vector<std::vector<std::pair<int, int>>> rows = {
      {{10, 1}, {15, 1}}, {},          {{2, 1}, {13, -1}}, {{3, 1}, {9, 1}},
      {},                 {{10, 1}, {15, 1}}, {{6, 1}, {12, 1}}, {{7, 1}, {8, -1}},
      {{7, -1}, {8, 1}},  {{3, 1}, {9, 1}},   {{0, 1}, {5, 1}},  {},
      {{6, 1}, {12, 1}},  {{2, -1}, {13, 1}}, {},                {{0, 1}, {5, 1}}};
  CMat w = CMat::Zero(16, 16);
  for (int r = 0; r < 16; ++r)
    for (auto [c, v] : rows[r]) w(r, c) = 0.5 * v;
  return w;
}

/// Ha's 4 (x) 4 state entered by hand, times 7.
inline CMat reference_rho_ha_times7() {
  CMat m = CMat::Zero(16, 16);
  for (int i : {0, 2, 4, 7, 8, 10, 11}) m(i, i) = 1.0;
  m(0, 10) = m(10, 0) = -1.0;
  m(7, 8) = m(8, 7) = 1.0;
  return m;
}

inline CMat reduction(const CMat& x) {
  return x.trace() * CMat::Identity(x.rows(), x.cols()) - x;
}

/// Unnormalized Breuer-Hall action.
inline CMat breuer_hall(const CMat& x, const CMat& u) {
  return x.trace() * CMat::Identity(x.rows(), x.cols()) - x -
         u * x.transpose() * u.adjoint();
}

/// sum over pairs p=(k<l), q=(m<n) of c_pq A_p X' A_q^dagger, entrywise,
/// with A_kl = e_kl - e_lk.
inline CMat hall(const CMat& c, const CMat& x, bool transposed) {
  const int d = static_cast<int>(x.rows());
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) pairs.emplace_back(k, l);
  auto a = [](std::pair<int, int> p, int r, int s) -> double {
    if (r == p.first && s == p.second) return 1.0;
    if (r == p.second && s == p.first) return -1.0;
    return 0.0;
  };
  CMat out = CMat::Zero(d, d);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t q = 0; q < pairs.size(); ++q)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) {
              const double ap = a(pairs[p], i, r);
              const double aq = a(pairs[q], j, s);  // (A_q^dagger)_{sj} = A_q(j,s)
              if (ap == 0.0 || aq == 0.0) continue;
              const Complex xv = transposed ? x(s, r) : x(r, s);
              out(i, j) += c(p, q) * ap * xv * aq;
            }
  return out;
}

/// Tr(A^dagger B) by loops.
inline Complex hs(const CMat& a, const CMat& b) {
  Complex s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += std::conj(a(i, j)) * b(i, j);
  return s;
}

}  // namespace oracle
