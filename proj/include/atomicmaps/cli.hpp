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

// Command-line front end. `run_cli` takes arguments without the program
// name and writes to the given streams, so it can be driven from tests.
//
// Exit codes: 0 success, 1 negative or inconclusive result, 2 usage error,
// 3 library or IO failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <ostream>
#include <string>
#include <vector>

#include "atomicmaps/choiduality.hpp"
#include "atomicmaps/detect.hpp"
#include "atomicmaps/errors.hpp"
#include "atomicmaps/matrix_io.hpp"
#include "atomicmaps/posmaps.hpp"
#include "atomicmaps/region_output.hpp"
#include "atomicmaps/selftest.hpp"
#include "atomicmaps/states.hpp"

namespace atomicmaps::cli {

namespace detail {

struct Options {
  std::string map = "robertson";
  std::string file;
  std::string state = "ha";
  bool gamma = false;
  double x = 1.0;
  double y = 1.0;
  int d = 4;
  std::string u = "u0";
  bool normalized = false;
  int grid = 64;
  std::uint64_t seed = 0;
  double tol = kStructuralTol;
  std::string out;
  bool svg = false;
  int iters = 5000;
  double step = 1.0;
  int samples = 10;
};

/// Console formatting: 15 significant digits, so -1/14 prints as
/// -0.0714285714285714. Files use shortest round-trip text instead.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline AntisymOp build_antisym(const Options& o) {
  const int even = o.d - o.d % 2;
  AntisymOp u = [&] {
    if (o.u == "u0") return standard_antisym(even);
    std::uint64_t seed = 0;
    try {
      std::size_t used = 0;
      seed = std::stoull(o.u, &used);
      if (used != o.u.size()) throw std::invalid_argument(o.u);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--u", "expected 'u0' or an integer seed, got '" + o.u + "'");
    }
    return random_antisym_unitary(even, seed);
  }();
  return even == o.d ? u : extend(u, o.d);
}

inline LinMap build_map(const Options& o) {
  if (o.map == "robertson") return robertson();
  if (o.map == "reduction") return reduction_map(o.d);
  if (o.map == "trace") return trace_map(o.d);
  if (o.map == "bh") return breuer_hall(build_antisym(o), o.normalized);
  if (o.map == "chi") return chi_map(o.x, o.y, build_antisym(o));
  if (o.map == "file") {
    if (o.file.empty()) throw CLI::ValidationError("--file", "required with --map file");
    return map_from_choi(BipOp::square(read_cmat(o.file)), o.file);
  }
  throw CLI::ValidationError("--map", "unknown map '" + o.map + "'");
}

inline BipState build_state(const Options& o) {
  BipState rho = [&] {
    if (o.state == "ha") return rho_ha();
    if (o.state == "ha3") return rho_ha(HaForm::Dim3);
    if (o.state == "new") return rho_new();
    return BipState(BipOp::square(read_cmat(o.state)), false);
  }();
  if (o.gamma) rho = gamma_conjugate(rho);
  return rho;
}

/// Embeds a smaller state into the map's dimension.
inline BipState fit_state(const BipState& rho, const LinMap& map) {
  if (rho.dim_a() == rho.dim_b() && rho.dim_a() < map.dim()) return embed(rho, map.dim());
  return rho;
}

inline std::string svg_path(const std::string& out) {
  const auto dot = out.find_last_of('.');
  const auto slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + ".svg";
  return out.substr(0, dot) + ".svg";
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using detail::num;
  detail::Options o;
  CLI::App app{"atomicmaps: positive maps, entanglement witnesses and certificates"};
  app.name("atomicmaps");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--map", o.map, "robertson | reduction | trace | bh | chi | file");
  app.add_option("--file", o.file, "Choi matrix file for --map file");
  app.add_option("--state", o.state, "ha | ha3 | new | path to a CMAT file");
  app.add_flag("--gamma", o.gamma, "conjugate the state by 1 (x) Gamma (4x4 states)");
  app.add_option("--x", o.x, "chi parameter x");
  app.add_option("--y", o.y, "chi parameter y");
  app.add_option("--d", o.d, "dimension")->check(CLI::Range(2, 64));
  app.add_option("--u", o.u, "antisymmetric unitary: u0 or an integer seed");
  app.add_flag("--normalized", o.normalized, "normalized Breuer-Hall map");
  app.add_option("--grid", o.grid, "region grid resolution")->check(CLI::Range(2, 4096));
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "output path");
  app.add_flag("--svg", o.svg, "also render the region as SVG next to --out");
  app.add_option("--iters", o.iters, "minimizer iterations")->check(CLI::PositiveNumber);
  app.add_option("--step", o.step, "minimizer step size")->check(CLI::PositiveNumber);
  app.add_option("--samples", o.samples, "samples per orthogonal matrix")->check(CLI::PositiveNumber);

  auto* witness = app.add_subcommand("witness", "Choi matrix of a map");
  witness->require_subcommand(1);
  auto* w_build = witness->add_subcommand("build", "write the witness matrix");
  auto* w_spec = witness->add_subcommand("spectrum", "print the witness spectrum");
  auto* pair_cmd = app.add_subcommand("pair", "print Tr(rho C_phi)");
  auto* ppt_cmd = app.add_subcommand("ppt", "PSD and PPT check of a state");
  auto* certify = app.add_subcommand("certify", "certify a map with a state");
  certify->require_subcommand(1);
  auto* c_atomic = certify->add_subcommand("atomic", "atomicity certificate");
  auto* c_indec = certify->add_subcommand("indec", "indecomposability certificate");
  auto* region_cmd = app.add_subcommand("region", "scan the chi(x,y) parameter square");
  auto* min_cmd = app.add_subcommand("minimize", "minimize Tr(W rho) over PPT states");
  auto* eq_cmd = app.add_subcommand("equivalence", "check Breuer-Hall against Robertson");
  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    if (*w_build) {
      const Witness w = choi(detail::build_map(o));
      if (o.out.empty()) out << format_cmat(w.op().mat()) << "\n";
      else write_cmat(o.out, w.op().mat());
      return 0;
    }
    if (*w_spec) {
      const WitnessReport r = witness_report(choi(detail::build_map(o)));
      for (double e : r.evals) out << num(e) << "\n";
      out << "min_eig " << num(r.min_eig) << "\n"
          << "candidate " << (r.is_candidate ? "true" : "false") << "\n";
      return 0;
    }
    if (*pair_cmd) {
      const LinMap map = detail::build_map(o);
      out << num(pair(detail::fit_state(detail::build_state(o), map), map)) << "\n";
      return 0;
    }
    if (*ppt_cmd) {
      const PptReport r = ppt_check(detail::build_state(o), o.tol);
      out << "psd " << (r.is_psd ? "true" : "false") << " min_eig " << num(r.min_eig) << "\n"
          << "ppt " << (r.is_ppt ? "true" : "false") << " min_eig_pt " << num(r.min_eig_pt)
          << "\n";
      return r.is_psd && r.is_ppt ? 0 : 1;
    }
    if (*c_atomic || *c_indec) {
      const LinMap map = detail::build_map(o);
      const BipState rho = detail::fit_state(detail::build_state(o), map);
      CertificateResult r;
      Conclusion wanted;
      if (*c_atomic) {
        wanted = Conclusion::AtomicCertified;
        const auto cert = derive_schmidt_certificate(rho.op(), 2);
        const auto cert_pt = derive_schmidt_certificate(partial_transpose(rho.op(), Side::B), 2);
        if (cert && cert_pt) {
          r = atomicity_certificate(map, rho, *cert, *cert_pt, o.tol);
        } else {
          err << "no Schmidt-rank-2 certificate found; falling back to indecomposability\n";
          r = indecomposability_certificate(map, rho, o.tol);
        }
      } else {
        wanted = Conclusion::IndecomposableCertified;
        r = indecomposability_certificate(map, rho, o.tol);
      }
      out << "pairing " << num(r.pairing_value) << "\n"
          << "psd " << (r.state_checks.psd ? "true" : "false") << "\n"
          << "ppt " << (r.state_checks.ppt ? "true" : "false") << "\n"
          << "conclusion " << to_string(r.conclusion) << "\n";
      return strength_rank(r.conclusion) <= strength_rank(wanted) ? 0 : 1;
    }
    if (*region_cmd) {
      const RegionReport report = region_scan(detail::build_antisym(o), o.grid);
      const std::string csv = format_region_csv(report);
      if (o.out.empty()) {
        if (o.svg) throw CLI::ValidationError("--svg", "requires --out");
        out << csv;
      } else {
        detail::write_text(o.out, csv);
        if (o.svg) detail::write_text(detail::svg_path(o.out), render_region_svg(report));
      }
      return 0;
    }
    if (*min_cmd) {
      const PptMinimum r = minimize_over_ppt(choi(detail::build_map(o)), o.iters, o.step, o.seed);
      out << "min_value " << num(r.min_value) << "\n"
          << "iterations " << r.iterations << "\n"
          << "converged " << (r.converged ? "true" : "false") << "\n"
          << "feasible " << (r.feasible ? "true" : "false") << "\n";
      if (!o.out.empty()) write_cmat(o.out, r.rho_star.mat());
      return r.feasible ? 0 : 1;
    }
    if (*eq_cmd) {
      // Seed 0 selects V = I; other seeds draw a random orthogonal V.
      CMat v = identity(4);
      if (o.seed != 0) {
        std::mt19937_64 rng(o.seed);
        v = random_orthogonal(4, rng);
      }
      const EquivalenceReport r = verify_bh_robertson_equivalence(v, o.samples, o.seed);
      out << "max_residual " << num(r.max_residual) << "\n"
          << "sign_relations " << (r.sign_relations_hold ? "true" : "false") << "\n"
          << "pass " << (r.pass ? "true" : "false") << "\n";
      return r.pass ? 0 : 1;
    }
    if (*self_cmd) {
      bool all = true;
      for (const auto& r : selftest::run_acceptance_suite()) {
        out << selftest::format_result(r) << "\n";
        all = all && r.pass;
      }
      return all ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace atomicmaps::cli
