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

#include <catch_amalgamated.hpp>

#include <random>

#include "atomicmaps/states.hpp"
#include "oracles.hpp"

using namespace atomicmaps;
using Catch::Matchers::WithinAbs;

namespace {

CVec basis(int n, int i) {
  CVec v = CVec::Zero(n);
  v(i) = 1.0;
  return v;
}

CVec product(const CVec& a, const CVec& b) { return oracle::kron(a, b).col(0); }

/// Identifies C^3 with a subspace of C^4 on the second
/// factor: 0 -> 0, 1 -> 2, 2 -> 3.
CMat lift_dim3(const CMat& m3) {
  const int map_b[3] = {0, 2, 3};
  CMat m = CMat::Zero(16, 16);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j)
        for (int b = 0; b < 3; ++b)
          m(i * 4 + map_b[a], j * 4 + map_b[b]) = m3(i * 3 + a, j * 3 + b);
  return m;
}

}  // namespace

TEST_CASE("fixed states are exact PPT states") {
  for (const BipState& rho : {rho_ha(), rho_new(), rho_ha(HaForm::Dim3)}) {
    const CMat& m = rho.mat();
    CHECK(m == m.adjoint());
    CHECK(std::abs(m.trace() - Complex(1.0)) <= 1e-14);
    const PptReport r = ppt_check(rho);
    CHECK(r.is_psd);
    CHECK(r.is_ppt);
    CHECK(r.min_eig >= -1e-12);
    CHECK(r.min_eig_pt >= -1e-12);
  }
}

TEST_CASE("rho_ha matches the hand-entered matrix") {
  CHECK(max_abs(rho_ha().mat() - oracle::reference_rho_ha_times7() / 7.0) == 0.0);
}

TEST_CASE("rho_ha in 4x4 form is the lifted 3x3 form") {
  CHECK(lift_dim3(rho_ha(HaForm::Dim3).mat()) == rho_ha().mat());
}

TEST_CASE("rho_new has a 1/24 diagonal summing to one") {
  const BipState nw = rho_new();
  const CMat& m = nw.mat();
  double numerators = 0.0;
  for (int i = 0; i < 16; ++i) numerators += 24.0 * m(i, i).real();
  CHECK(numerators == 24.0);
}

TEST_CASE("gamma conjugation") {
  const BipState ha = rho_ha();
  for (GammaPlacement p : {GammaPlacement::SecondFactor, GammaPlacement::BothFactors}) {
    const BipState g = gamma_conjugate(ha, p);
    CHECK(gamma_conjugate(g, p).mat() == ha.mat());
    const RVec a = hermitian_eigenvalues(ha.mat()), b = hermitian_eigenvalues(g.mat());
    CHECK(max_abs((a - b).cast<Complex>()) <= 1e-12);
    CHECK(ppt_check(g).is_ppt);
  }
  CHECK_THROWS_AS(gamma_conjugate(rho_ha(HaForm::Dim3)), BadDim);
}

TEST_CASE("embedding") {
  const BipState e6 = embed(rho_ha(), 6);
  CHECK(std::abs(e6.mat().trace() - Complex(1.0)) <= 1e-15);
  CHECK(ppt_check(e6).is_ppt);
  CHECK_THROWS_AS(embed(rho_ha(), 3), BadDim);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    const BipOp m(3, 3, random_hermitian(9, rng));
    CHECK(embed(partial_transpose(m, Side::B), 5).mat() ==
          partial_transpose(embed(m, 5), Side::B).mat());
  }
}

TEST_CASE("ppt_check on the maximally entangled state") {
  for (int d : {2, 3, 4}) {
    const BipState phi(BipOp(d, d, maximally_entangled(d).mat() / d), true);
    const PptReport r = ppt_check(phi);
    CHECK(r.is_psd);
    CHECK_FALSE(r.is_ppt);
    CHECK_THAT(r.min_eig_pt, WithinAbs(-1.0 / d, 1e-12));
  }
}

TEST_CASE("BipState rejects bad operators") {
  std::mt19937_64 rng(2);
  CHECK_THROWS_AS(BipState(BipOp(2, 2, random_complex_gaussian(4, 4, rng)), false), NonHermitian);
  CHECK_THROWS_AS(BipState(BipOp(2, 2, identity(4)), true), Error);
}

TEST_CASE("schmidt_rank_pure examples") {
  CHECK(schmidt_rank_pure(product(basis(4, 0), basis(4, 0))) == 1);
  CVec me = CVec::Zero(16);
  for (int i = 0; i < 4; ++i) me += product(basis(4, i), basis(4, i));
  CHECK(schmidt_rank_pure(me) == 4);
  CHECK(schmidt_rank_pure(product(basis(4, 0), basis(4, 0)) + product(basis(4, 1), basis(4, 1))) == 2);
  CHECK(schmidt_rank_pure(product(basis(2, 1), basis(3, 2)), 2, 3) == 1);
  CHECK_THROWS_AS(schmidt_rank_pure(CVec::Zero(9)), ZeroVector);
}

TEST_CASE("schmidt rank is invariant under local unitaries") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const int k = 1 + t % 4;
    const CVec v = sample_schmidt_k(4, k, 100 + t);
    CHECK(schmidt_rank_pure(v) == k);
    const CMat u = kron(random_unitary(4, rng), random_unitary(4, rng));
    CHECK(schmidt_rank_pure(CVec(u * v)) == k);
  }
  CHECK_THROWS_AS(sample_schmidt_k(3, 4, 1), BadK);
  CHECK_THROWS_AS(sample_schmidt_k(3, 0, 1), BadK);
  CHECK(sample_schmidt_k(5, 2, 9) == sample_schmidt_k(5, 2, 9));
}

TEST_CASE("verify_schmidt_certificate on separable mixtures") {
  std::mt19937_64 rng(4);
  SchmidtCertificate cert{3, 3, {}, 1};
  CMat rho = CMat::Zero(9, 9);
  const double w[3] = {0.5, 0.3, 0.2};
  for (int i = 0; i < 3; ++i) {
    CVec a = random_complex_gaussian(3, 1, rng).col(0), b = random_complex_gaussian(3, 1, rng).col(0);
    const CVec v = product(a / a.norm(), b / b.norm());
    cert.terms.push_back({w[i], v});
    rho += w[i] * v * v.adjoint();
  }
  const SchmidtCheck ok = verify_schmidt_certificate(BipOp(3, 3, rho), cert);
  CHECK(ok.ok);
  CHECK(ok.max_rank == 1);

  SchmidtCertificate bad = cert;
  bad.terms[1].vector = sample_schmidt_k(3, 2, 5);
  CMat rho_bad = CMat::Zero(9, 9);
  for (const auto& t : bad.terms) rho_bad += t.weight * t.vector * t.vector.adjoint();
  const SchmidtCheck fail = verify_schmidt_certificate(BipOp(3, 3, rho_bad), bad);
  CHECK_FALSE(fail.ok);
  CHECK(fail.reason == SchmidtFailure::RankExceeded);

  SchmidtCertificate off = cert;
  off.terms[0].weight = 0.6;
  CHECK(verify_schmidt_certificate(BipOp(3, 3, rho), off).reason == SchmidtFailure::ResidualTooLarge);
  off.terms[0].weight = -0.1;
  CHECK(verify_schmidt_certificate(BipOp(3, 3, rho), off).reason == SchmidtFailure::NegativeWeight);
  CHECK(verify_schmidt_certificate(BipOp(9, 1, rho), cert).reason == SchmidtFailure::DimMismatch);
}

TEST_CASE("rank-two certificates for rho_ha and its partial transpose") {
  const BipState ha = rho_ha();
  const auto cert = derive_schmidt_certificate(ha.op(), 2);
  REQUIRE(cert);
  const SchmidtCheck c = verify_schmidt_certificate(ha, *cert);
  CHECK(c.ok);
  CHECK(c.max_rank == 2);
  CHECK(c.residual <= 1e-8);
  const BipOp pt = partial_transpose(ha.op(), Side::B);
  const auto cert_pt = derive_schmidt_certificate(pt, 2);
  REQUIRE(cert_pt);
  CHECK(verify_schmidt_certificate(pt, *cert_pt).ok);
  // rank two really is needed: no product decomposition of this form exists
  CHECK_FALSE(derive_schmidt_certificate(ha.op(), 1));
}

TEST_CASE("certificates follow local transformations and embeddings") {
  std::mt19937_64 rng(5);
  const BipState ha = rho_ha();
  const SchmidtCertificate cert = *derive_schmidt_certificate(ha.op(), 2);
  const CMat a = random_unitary(4, rng), b = random_unitary(4, rng);
  const BipState moved = local_conjugate(ha, a, b);
  CHECK(verify_schmidt_certificate(moved, transform_certificate(cert, a, b)).ok);
  for (int D : {5, 6, 8})
    CHECK(verify_schmidt_certificate(embed(ha, D), embed_certificate(cert, D)).ok);
}
