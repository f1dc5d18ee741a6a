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

// Classification experiments built on witness states: atomicity and
// indecomposability certificates, the (x, y) region scan for the chi family,
// sampling falsifiers for k-positivity, a PPT-constrained minimizer of
// Tr(W rho), and the Breuer-Hall / Robertson unitary-equivalence check.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atomicmaps/choiduality.hpp"
#include "atomicmaps/numkernel.hpp"
#include "atomicmaps/posmaps.hpp"
#include "atomicmaps/states.hpp"

namespace atomicmaps {

enum class Conclusion {
  AtomicCertified,
  IndecomposableCertified,
  WitnessOnly,
  Inconclusive,
};

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::AtomicCertified: return "atomic";
    case Conclusion::IndecomposableCertified: return "indecomposable";
    case Conclusion::WitnessOnly: return "witness_only";
    case Conclusion::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Lower rank is a stronger conclusion.
inline int strength_rank(Conclusion c) {
  switch (c) {
    case Conclusion::AtomicCertified: return 0;
    case Conclusion::IndecomposableCertified: return 1;
    case Conclusion::WitnessOnly: return 2;
    case Conclusion::Inconclusive: return 3;
  }
  return 3;
}

struct StateChecks {
  bool psd = false;
  bool ppt = false;
  std::optional<bool> sn_cert_state;
  std::optional<bool> sn_cert_pt;
};

struct CertificateResult {
  double pairing_value = 0.0;
  StateChecks state_checks;
  Conclusion conclusion = Conclusion::Inconclusive;
};

/// Atomic needs both Schmidt certificates (rho in V_2 and its partial
/// transpose in V_2); indecomposable needs a PPT state; a negative pairing on a
/// non-PPT state only shows the witness detects something.
inline Conclusion classify(double pairing, const StateChecks& checks,
                           double tol) {
  if (!(pairing < -tol) || !checks.psd) return Conclusion::Inconclusive;
  if (!checks.ppt) return Conclusion::WitnessOnly;
  if (checks.sn_cert_state.value_or(false) && checks.sn_cert_pt.value_or(false))
    return Conclusion::AtomicCertified;
  return Conclusion::IndecomposableCertified;
}

namespace detail {

inline void require_same_dim(const LinMap& map, const BipState& rho) {
  if (rho.dim_a() != map.dim() || rho.dim_b() != map.dim())
    throw DimMismatch("certificate: state and map dimensions differ");
}

inline bool certifies_rank_two(const BipOp& target,
                               const SchmidtCertificate& cert) {
  return cert.claimed_k <= 2 && verify_schmidt_certificate(target, cert).ok;
}

inline StateChecks check_state(const BipState& rho,
                               const SchmidtCertificate* cert_rho,
                               const SchmidtCertificate* cert_pt, double tol) {
  const PptReport ppt = ppt_check(rho, tol);
  StateChecks checks{ppt.is_psd, ppt.is_ppt, std::nullopt, std::nullopt};
  if (cert_rho) checks.sn_cert_state = certifies_rank_two(rho.op(), *cert_rho);
  if (cert_pt)
    checks.sn_cert_pt =
        certifies_rank_two(partial_transpose(rho.op(), Side::B), *cert_pt);
  return checks;
}

}  // namespace detail

inline CertificateResult atomicity_certificate(const LinMap& map,
                                               const BipState& rho,
                                               const SchmidtCertificate& cert_rho,
                                               const SchmidtCertificate& cert_pt,
                                               double tol = kStructuralTol) {
  detail::require_same_dim(map, rho);
  CertificateResult result;
  result.state_checks = detail::check_state(rho, &cert_rho, &cert_pt, tol);
  result.pairing_value = pair(rho, map);
  result.conclusion = classify(result.pairing_value, result.state_checks, tol);
  return result;
}

inline CertificateResult indecomposability_certificate(
    const LinMap& map, const BipState& rho, double tol = kStructuralTol) {
  detail::require_same_dim(map, rho);
  CertificateResult result;
  result.state_checks = detail::check_state(rho, nullptr, nullptr, tol);
  result.pairing_value = pair(rho, map);
  result.conclusion = classify(result.pairing_value, result.state_checks, tol);
  return result;
}

// ---------------------------------------------------------------------------
// Region scan over the chi family

/// A witness state for the region scan; certificates are optional and only
/// matter for atomicity.
struct RegionProbe {
  std::string name;
  BipState state;
  std::optional<SchmidtCertificate> cert_state;
  std::optional<SchmidtCertificate> cert_pt;
};

struct RegionPoint {
  int ix;
  int iy;
  double x;
  double y;
  Conclusion conclusion;
};

struct RegionReport {
  int grid = 0;
  int d = 0;
  std::vector<RegionPoint> points;  // row-major: iy outer, ix inner
  double boundary_atomic = 7.0 / 4.0;
  double boundary_indec = 3.0 / 2.0;
};

/// Gamma-conjugated rho_ha (with derived rank-2 certificates) and
/// Gamma-conjugated rho_new, padded to d and moved into the frame of U.
inline std::vector<RegionProbe> default_region_probes(const AntisymOp& u) {
  const int d = u.dim();
  if (!u.frame())
    throw InvalidAntisym(
        "default_region_probes: U has no frame; supply probes explicitly");
  if (d < 4 || u.half_rank() < 2)
    throw BadDim("default_region_probes: U must have rank >= 4");

  const CMat& w = *u.frame();
  const CMat w_bar = w.conjugate();
  auto place = [&](const BipState& rho) {
    return local_conjugate(embed(rho, d), w_bar, w);
  };

  const BipState ha = gamma_conjugate(rho_ha());
  const auto cert = derive_schmidt_certificate(ha.op(), 2);
  const auto cert_pt =
      derive_schmidt_certificate(partial_transpose(ha.op(), Side::B), 2);

  std::vector<RegionProbe> probes;
  RegionProbe ha_probe{"gamma_rho_ha", place(ha), std::nullopt, std::nullopt};
  if (cert)
    ha_probe.cert_state =
        transform_certificate(embed_certificate(*cert, d), w_bar, w);
  if (cert_pt)
    ha_probe.cert_pt =
        transform_certificate(embed_certificate(*cert_pt, d), w_bar, w_bar);
  probes.push_back(std::move(ha_probe));
  probes.push_back(
      {"gamma_rho_new", place(gamma_conjugate(rho_new())), std::nullopt,
       std::nullopt});
  return probes;
}

/// Labels every grid point (x, y) = (ix, iy) / (n - 1) of the unit square with
/// the strongest conclusion any probe supports for chi_map(x, y, U).
inline RegionReport region_scan(const AntisymOp& u, int n,
                                const std::vector<RegionProbe>& probes,
                                double tol = kStructuralTol) {
  if (n < 2) throw BadDim("region_scan: grid resolution must be >= 2");
  const int d = u.dim();

  // State-side checks do not depend on (x, y).
  std::vector<StateChecks> checks;
  checks.reserve(probes.size());
  for (const RegionProbe& p : probes) {
    if (p.state.dim_a() != d || p.state.dim_b() != d)
      throw DimMismatch("region_scan: probe '" + p.name + "' has wrong dimension");
    checks.push_back(detail::check_state(p.state,
                                         p.cert_state ? &*p.cert_state : nullptr,
                                         p.cert_pt ? &*p.cert_pt : nullptr, tol));
  }

  RegionReport report;
  report.grid = n;
  report.d = d;
  report.points.reserve(static_cast<std::size_t>(n) * n);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double x = static_cast<double>(ix) / (n - 1);
      const double y = static_cast<double>(iy) / (n - 1);
      const LinMap chi = chi_map(x, y, u);
      Conclusion best = Conclusion::Inconclusive;
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const Conclusion c = classify(pair(probes[p].state, chi), checks[p], tol);
        if (strength_rank(c) < strength_rank(best)) best = c;
      }
      report.points.push_back({ix, iy, x, y, best});
    }
  return report;
}

inline RegionReport region_scan(const AntisymOp& u, int n) {
  return region_scan(u, n, default_region_probes(u));
}

// ---------------------------------------------------------------------------
// k-positivity falsifier

/// (id (x) phi)(rho): phi applied to every d x d block of rho.
inline CMat ampliate(const LinMap& map, const BipOp& rho) {
  const int d = map.dim();
  if (rho.dim_b() != d)
    throw DimMismatch("ampliate: second factor must match the map dimension");
  const int dA = rho.dim_a();
  CMat out(rho.size(), rho.size());
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dA; ++j)
      out.block(i * d, j * d, d, d) = apply(map, rho.mat().block(i * d, j * d, d, d));
  return out;
}

struct KPositivityCounterexample {
  CVec vector;
  double min_eig;
  int trial;
};

/// Samples Schmidt-rank-k vectors v (seed + t for trial t) and returns the
/// first with min eig (id (x) phi)(|v><v|) < -tol. A hit proves phi is not
/// k-positive; no hit proves nothing.
inline std::optional<KPositivityCounterexample> k_positivity_falsify(
    const LinMap& map, int k, int trials, std::uint64_t seed,
    double tol = kStructuralTol) {
  const int d = map.dim();
  if (k < 1 || k > d) throw BadK("k_positivity_falsify: need 1 <= k <= d");
  for (int t = 0; t < trials; ++t) {
    const CVec v = sample_schmidt_k(d, k, seed + static_cast<std::uint64_t>(t));
    const CMat out = ampliate(map, BipOp(d, d, v * v.adjoint()));
    const double lo = min_eigenvalue(0.5 * (out + out.adjoint()), 1e-8);
    if (lo < -tol) return KPositivityCounterexample{v, lo, t};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// PPT-constrained minimization

struct PptMinimum {
  double min_value = 0.0;
  BipState rho_star;
  bool converged = false;
  bool feasible = false;  // rho_star re-verified by ppt_check at 1e-9
  int iterations = 0;
  std::vector<double> objective_history;  // one entry per accepted step
};

namespace detail {

/// Dykstra's alternating projections onto {X >= 0} n {X^T_B >= 0} n {Tr X = 1}.
inline CMat project_ppt_states(const CMat& y, int dA, int dB,
                               int max_cycles = 20000,
                               double tol = kExactTol) {
  const int n = dA * dB;
  CMat x = y;
  CMat inc_psd = CMat::Zero(n, n);
  CMat inc_pt = CMat::Zero(n, n);
  CMat inc_tr = CMat::Zero(n, n);
  auto pt = [&](const CMat& m) {
    return partial_transpose(BipOp(dA, dB, m), Side::B).mat();
  };
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    const CMat prev = x;
    const CMat prev_psd = inc_psd;
    const CMat prev_pt = inc_pt;

    CMat z = project_psd(x + inc_psd);
    inc_psd = x + inc_psd - z;
    x = z;

    z = pt(project_psd(pt(x + inc_pt)));
    inc_pt = x + inc_pt - z;
    x = z;

    z = x + inc_tr;
    z -= ((z.trace() - Complex(1.0)) / static_cast<double>(n)) * identity(n);
    inc_tr = x + inc_tr - z;
    x = z;

    // x alone can stall while the corrections are still moving (the trace
    // step snaps it back), so both must settle.
    if (max_abs(x - prev) < tol && max_abs(inc_psd - prev_psd) < tol &&
        max_abs(inc_pt - prev_pt) < tol)
      break;
  }
  return x;
}

}  // namespace detail

/// Minimizes Tr(W rho) over PPT states by projected gradient steps
/// rho <- P(rho - step * W), each projection computed by Dykstra's method.
/// A step that raises the objective is rejected and the step halved. Stops
/// when the objective falls by less than 1e-10 across 50 accepted steps or
/// after `iters` steps. The result is pulled into the feasible set by mixing
/// with the maximally mixed state when rounding leaves it slightly outside.
inline PptMinimum minimize_over_ppt(const Witness& w, int iters = 5000,
                                    double step = 1.0, std::uint64_t seed = 0) {
  const int d = w.dim();
  const int n = d * d;
  const CMat& wm = w.op().mat();
  auto objective = [&](const CMat& rho) {
    return rho.cwiseProduct(wm.transpose()).sum().real();
  };

  CMat rho = identity(n) / static_cast<double>(n);
  if (seed != 0) {
    // A random state mixed with I/n: PT eigenvalues of a state are >= -1/2, so
    // weight 1/(1 + n/2) on the random part keeps the start PPT.
    std::mt19937_64 rng(seed);
    const double lambda = 1.0 / (1.0 + n / 2.0);
    rho = (1.0 - lambda) * rho + lambda * random_density(n, rng);
  }

  PptMinimum result{0.0, BipState(BipOp(d, d, rho), true), false, false, 0, {}};
  double f = objective(rho);
  result.objective_history.push_back(f);
  constexpr int kWindow = 50;
  for (int it = 0; it < iters; ++it) {
    result.iterations = it + 1;
    const CMat cand = detail::project_ppt_states(rho - step * wm, d, d);
    const double fc = objective(cand);
    if (fc > f + kExactTol) {
      step *= 0.5;
      if (step < 1e-12) break;
      continue;
    }
    rho = cand;
    f = fc;
    result.objective_history.push_back(f);
    const auto& h = result.objective_history;
    if (static_cast<int>(h.size()) > kWindow &&
        h[h.size() - 1 - kWindow] - f < 1e-10) {
      result.converged = true;
      break;
    }
  }

  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();
  const double lo =
      std::min(min_eigenvalue(rho),
               min_eigenvalue(partial_transpose(BipOp(d, d, rho), Side::B).mat()));
  if (lo < 0.0) {
    const double lambda = -lo / (-lo + 1.0 / n);
    rho = (1.0 - lambda) * rho + lambda * identity(n) / static_cast<double>(n);
  }
  result.rho_star = BipState(BipOp(d, d, rho), true);
  result.min_value = objective(rho);
  result.feasible = ppt_check(result.rho_star, 1e-9).is_ppt;
  return result;
}

// ---------------------------------------------------------------------------
// Breuer-Hall / Robertson equivalence

struct EquivalenceReport {
  double max_residual = 0.0;
  bool sign_relations_hold = false;
  bool pass = false;
};

/// For U = V U_0 V^T checks phi~_U(X) = (V Gamma) phi_R(V^T X V) (V Gamma)^T on
/// random X, and the V = I relations phi~_{U_0}(e_ii) = phi_R(e_ii),
/// phi~_{U_0}(e_ij) = -phi_R(e_ij) for i != j (compared exactly).
inline EquivalenceReport verify_bh_robertson_equivalence(const CMat& v,
                                                         int samples,
                                                         std::uint64_t seed) {
  if (v.rows() != 4 || v.cols() != 4)
    throw NotOrthogonal("verify_bh_robertson_equivalence: V must be 4x4");
  if (v.imag().cwiseAbs().maxCoeff() > kStructuralTol ||
      max_abs(v.transpose() * v - identity(4)) > kStructuralTol)
    throw NotOrthogonal("verify_bh_robertson_equivalence: V is not real orthogonal");

  const CMat vr = v.real().cast<Complex>();
  CMat um = vr * standard_antisym_matrix(4, 2) * vr.transpose();
  um = (0.5 * (um - um.transpose())).eval();
  const LinMap lhs = breuer_hall(AntisymOp::from_matrix(um, kStructuralTol), true);
  const LinMap rob = robertson();
  const CMat u1 = vr * gamma_matrix();
  const CMat& u2 = vr;

  EquivalenceReport report;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const CMat x = random_complex_gaussian(4, 4, rng);
    const CMat rhs = u1 * apply(rob, u2.adjoint() * x * u2) * u1.adjoint();
    report.max_residual = std::max(report.max_residual, max_abs(apply(lhs, x) - rhs));
  }

  const LinMap standard = breuer_hall(standard_antisym(4), true);
  report.sign_relations_hold = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const CMat e = unit_matrix(4, i, j);
      const double sign = i == j ? 1.0 : -1.0;
      if (max_abs(apply(standard, e) - sign * apply(rob, e)) != 0.0)
        report.sign_relations_hold = false;
    }
  report.pass = report.max_residual <= kStructuralTol && report.sign_relations_hold;
  return report;
}

}  // namespace atomicmaps
