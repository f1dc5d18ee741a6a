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

#include "atomicmaps/detect.hpp"
#include "oracles.hpp"

using namespace atomicmaps;
using Catch::Matchers::WithinAbs;

namespace {

struct Certs {
  SchmidtCertificate state;
  SchmidtCertificate pt;
};

Certs certs_for(const BipState& rho) {
  return {*derive_schmidt_certificate(rho.op(), 2),
          *derive_schmidt_certificate(partial_transpose(rho.op(), Side::B), 2)};
}

}  // namespace

TEST_CASE("classify") {
  StateChecks good{true, true, true, true};
  CHECK(classify(-0.1, good, 1e-10) == Conclusion::AtomicCertified);
  StateChecks no_cert{true, true, std::nullopt, true};
  CHECK(classify(-0.1, no_cert, 1e-10) == Conclusion::IndecomposableCertified);
  StateChecks npt{true, false, true, true};
  CHECK(classify(-0.1, npt, 1e-10) == Conclusion::WitnessOnly);
  CHECK(classify(0.0, good, 1e-10) == Conclusion::Inconclusive);
  CHECK(classify(-1e-11, good, 1e-10) == Conclusion::Inconclusive);
  StateChecks not_psd{false, true, true, true};
  CHECK(classify(-0.1, not_psd, 1e-10) == Conclusion::Inconclusive);
  CHECK(std::string(to_string(Conclusion::WitnessOnly)) == "witness_only");
  // lower rank means a stronger conclusion
  CHECK(strength_rank(Conclusion::AtomicCertified) < strength_rank(Conclusion::IndecomposableCertified));
}

TEST_CASE("atomicity certificate for the Robertson map") {
  const BipState ha = rho_ha();
  const Certs c = certs_for(ha);
  const CertificateResult r = atomicity_certificate(robertson(), ha, c.state, c.pt);
  CHECK(r.conclusion == Conclusion::AtomicCertified);
  CHECK_THAT(r.pairing_value, WithinAbs(-1.0 / 14, 1e-12));

  const CertificateResult red = atomicity_certificate(reduction_map(4), ha, c.state, c.pt);
  CHECK(red.conclusion == Conclusion::Inconclusive);
  CHECK_THAT(red.pairing_value, WithinAbs(1.0, 1e-12));

  CHECK_THROWS_AS(atomicity_certificate(reduction_map(3), ha, c.state, c.pt), DimMismatch);
}

TEST_CASE("atomicity at the chi corner with transported certificates") {
  const BipState g = gamma_conjugate(rho_ha());
  const Certs c = certs_for(rho_ha());
  const CMat gm = gamma_matrix();
  const CertificateResult r =
      atomicity_certificate(chi_map(1, 1, standard_antisym(4)), g,
                            transform_certificate(c.state, identity(4), gm),
                            transform_certificate(c.pt, identity(4), gm));
  CHECK(r.conclusion == Conclusion::AtomicCertified);
  CHECK_THAT(r.pairing_value, WithinAbs(-1.0 / 7, 1e-12));
}

TEST_CASE("indecomposability certificates") {
  const CertificateResult r = indecomposability_certificate(robertson(), rho_new());
  CHECK(r.conclusion == Conclusion::IndecomposableCertified);
  CHECK_THAT(r.pairing_value, WithinAbs(-1.0 / 6, 1e-12));

  const BipState g = gamma_conjugate(rho_new());
  const CertificateResult chi = indecomposability_certificate(chi_map(0.8, 0.8, standard_antisym(4)), g);
  CHECK_THAT(chi.pairing_value, WithinAbs(-1.0 / 15, 1e-12));
  CHECK(chi.conclusion == Conclusion::IndecomposableCertified);

  const CertificateResult tr = indecomposability_certificate(trace_map(4), rho_ha());
  CHECK(tr.conclusion == Conclusion::Inconclusive);
  CHECK_THAT(tr.pairing_value, WithinAbs(1.0, 1e-12));

  const BipState phi(BipOp(4, 4, maximally_entangled(4).mat() / 4), true);
  CHECK(indecomposability_certificate(reduction_map(4), phi).conclusion == Conclusion::WitnessOnly);
}

TEST_CASE("affine pairing laws") {
  const AntisymOp u0 = standard_antisym(4);
  const BipState ha = gamma_conjugate(rho_ha()), nw = gamma_conjugate(rho_new());
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      const double x = i / 10.0, y = j / 10.0;
      const LinMap chi = chi_map(x, y, u0);
      REQUIRE_THAT(pair(ha, chi), WithinAbs((7 - 4 * x - 4 * y) / 7, 1e-12));
      REQUIRE_THAT(pair(nw, chi), WithinAbs((24 - 16 * x - 16 * y) / 24, 1e-12));
    }
}

TEST_CASE("chi at the corner equals twice the Gamma-conjugated Robertson pairing") {
  std::mt19937_64 rng(1);
  const LinMap chi = chi_map(1, 1, standard_antisym(4));
  for (int t = 0; t < 20; ++t) {
    const BipState rho(BipOp(4, 4, random_hermitian(16, rng)), false);
    CHECK_THAT(pair(rho, chi), WithinAbs(2.0 * pair(gamma_conjugate(rho), robertson()), 1e-12));
  }
}

TEST_CASE("region scan labels") {
  for (int n : {5, 9, 21, 64}) {
    const RegionReport rep = region_scan(standard_antisym(4), n);
    REQUIRE(static_cast<int>(rep.points.size()) == n * n);
    for (const RegionPoint& p : rep.points) {
      const int s = p.ix + p.iy;
      const Conclusion want = 4 * s > 7 * (n - 1)   ? Conclusion::AtomicCertified
                              : 2 * s > 3 * (n - 1) ? Conclusion::IndecomposableCertified
                                                    : Conclusion::Inconclusive;
      REQUIRE(p.conclusion == want);
    }
    // row-major with y outer
    CHECK(rep.points[1].ix == 1);
    CHECK(rep.points[1].iy == 0);
  }
}

TEST_CASE("region scan at named points") {
  // grid 11 puts x, y on multiples of 0.1
  const RegionReport rep = region_scan(standard_antisym(4), 11);
  auto at = [&](int ix, int iy) { return rep.points[iy * 11 + ix].conclusion; };
  CHECK(at(9, 9) == Conclusion::AtomicCertified);
  CHECK(at(8, 8) == Conclusion::IndecomposableCertified);
  CHECK(at(5, 5) == Conclusion::Inconclusive);
}

TEST_CASE("region scan in a random frame and higher dimension") {
  for (int d : {4, 5, 6, 8}) {
    const int even = d - d % 2;
    const AntisymOp base = random_antisym_unitary(even, 31 + d);
    const AntisymOp u = even == d ? base : extend(base, d);
    const int n = 9;
    const RegionReport rep = region_scan(u, n);
    for (const RegionPoint& p : rep.points) {
      const int s = p.ix + p.iy;
      const Conclusion want = 4 * s > 7 * (n - 1)   ? Conclusion::AtomicCertified
                              : 2 * s > 3 * (n - 1) ? Conclusion::IndecomposableCertified
                                                    : Conclusion::Inconclusive;
      REQUIRE(p.conclusion == want);
    }
  }
}

TEST_CASE("region scan needs a frame") {
  CHECK_THROWS(region_scan(AntisymOp::from_matrix(standard_antisym_matrix(4, 2)), 8));
}

TEST_CASE("embedded pairings are unchanged") {
  const BipState ha = gamma_conjugate(rho_ha()), nw = gamma_conjugate(rho_new());
  const Certs c = certs_for(ha);
  for (int D : {5, 6, 8}) {
    const LinMap bh = breuer_hall(extend(standard_antisym(4), D), false);
    CHECK_THAT(0.5 * pair(embed(ha, D), bh), WithinAbs(-1.0 / 14, 1e-12));
    CHECK_THAT(0.5 * pair(embed(nw, D), bh), WithinAbs(-1.0 / 6, 1e-12));
    const CertificateResult r = atomicity_certificate(
        bh, embed(ha, D), embed_certificate(c.state, D), embed_certificate(c.pt, D));
    CHECK(r.conclusion == Conclusion::AtomicCertified);
  }
}

TEST_CASE("ampliate matches the Choi construction") {
  const LinMap r = robertson();
  CHECK(max_abs(ampliate(r, maximally_entangled(4)) - oracle::choi(r)) == 0.0);
}

TEST_CASE("k-positivity falsifier") {
  const auto hit = k_positivity_falsify(reduction_map(4), 2, 200, 1);
  REQUIRE(hit);
  const CMat out = ampliate(reduction_map(4), BipOp(4, 4, hit->vector * hit->vector.adjoint()));
  const double lo = min_eigenvalue(0.5 * (out + out.adjoint()));
  CHECK(lo < -kStructuralTol);
  CHECK_THAT(lo, WithinAbs(hit->min_eig, 1e-12));
  CHECK(schmidt_rank_pure(hit->vector) <= 2);

  CHECK_FALSE(k_positivity_falsify(trace_map(4), 4, 200, 1));
  CHECK_FALSE(k_positivity_falsify(robertson(), 1, 500, 7));
  CHECK_THROWS_AS(k_positivity_falsify(trace_map(3), 4, 1, 1), BadK);
}

TEST_CASE("minimizer on the Robertson witness") {
  const PptMinimum r = minimize_over_ppt(choi(robertson()));
  CHECK(r.min_value >= -1.0 / 6 - 1e-3);
  CHECK(r.min_value <= -1.0 / 6 + 1e-3);
  CHECK(r.feasible);
  CHECK(ppt_check(r.rho_star, 1e-9).is_ppt);
  CHECK(std::abs(r.rho_star.mat().trace() - Complex(1.0)) < 1e-12);
  for (std::size_t i = 1; i < r.objective_history.size(); ++i)
    REQUIRE(r.objective_history[i] <= r.objective_history[i - 1] + 1e-12);
}

TEST_CASE("minimizer from a random start") {
  const PptMinimum r = minimize_over_ppt(choi(robertson()), 5000, 1.0, 17);
  CHECK(r.min_value >= -1.0 / 6 - 1e-3);
  CHECK(r.min_value <= -1.0 / 6 + 1e-3);
  CHECK(r.feasible);
}

TEST_CASE("minimizer on trivial witnesses") {
  const Witness id(BipOp(4, 4, identity(16)), "identity");
  CHECK_THAT(minimize_over_ppt(id, 200).min_value, WithinAbs(1.0, 1e-9));
  CMat diag = identity(16);
  diag(0, 0) = 2.0;
  const PptMinimum r = minimize_over_ppt(Witness(BipOp(4, 4, diag), "diag"), 500);
  CHECK_THAT(r.min_value, WithinAbs(1.0, 1e-6));
  CHECK(r.feasible);
}

TEST_CASE("Breuer-Hall and Robertson equivalence") {
  const EquivalenceReport id = verify_bh_robertson_equivalence(identity(4), 10, 1);
  CHECK(id.pass);
  CHECK(id.sign_relations_hold);
  CMat flip = identity(4);
  flip(3, 3) = -1.0;
  CHECK(verify_bh_robertson_equivalence(flip, 10, 2).pass);
  for (std::uint64_t s = 0; s < 10; ++s) {
    std::mt19937_64 rng(s);
    const EquivalenceReport r = verify_bh_robertson_equivalence(random_orthogonal(4, rng), 10, s);
    CHECK(r.pass);
    CHECK(r.max_residual <= 1e-10);
  }
  std::mt19937_64 rng(3);
  CHECK_THROWS_AS(verify_bh_robertson_equivalence(random_unitary(4, rng), 1, 1), NotOrthogonal);
  CHECK_THROWS_AS(verify_bh_robertson_equivalence(2.0 * identity(4), 1, 1), NotOrthogonal);
}
