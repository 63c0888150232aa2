#include "sqwell/boundary_forms.hpp"

#include <cmath>
#include <sstream>

#include "sqwell/error.hpp"

namespace sqwell {

Mat2 build_U(const ExtensionParams& e) {
  const Complex phase = std::polar(1.0, e.phi);
  const Mat2 core{Complex(e.m0, -e.m3), Complex(-e.m2, -e.m1), Complex(e.m2, -e.m1),
                  Complex(e.m0, e.m3)};
  return phase * core;
}

TMatrix build_T(const MatchingParams& p, double mass) {
  if (is_singular_coupling(p, mass)) {
    std::ostringstream msg;
    msg << "T undefined at |mass*b| = 1 (mass=" << mass << ", b=" << p.b << ")";
    throw Error(ErrorCode::SingularCoupling, msg.str());
  }
  const double mb = mass * p.b;
  const double ma = mass * p.a;
  TDecomposition parts{(1.0 + mb) / (1.0 - mb), -2.0 * ma / (1.0 - mb * mb)};
  const Mat2 m{parts.t1, 0.0, parts.t2, (1.0 - mb) / (1.0 + mb)};
  return {m, parts};
}

Mat2 matching_matrix_general(const GeneralMatchingParams& g) {
  const Complex two_minus_ix3(2.0, -g.x3);
  const Complex denom = two_minus_ix3 * two_minus_ix3 + g.x1 * g.x4 - g.x2 * g.x2;
  const double scale = 4.0 + std::abs(g.x1 * g.x4) + g.x2 * g.x2 + g.x3 * g.x3;
  if (!(std::abs(denom) > 1e-14 * scale)) {
    std::ostringstream msg;
    msg << "matching denominator vanishes for x=(" << g.x1 << ", " << g.x2 << ", " << g.x3
        << ", " << g.x4 << ")";
    throw Error(ErrorCode::SingularDenominator, msg.str());
  }
  const double x1x4 = g.x1 * g.x4;
  const double x3sq = g.x3 * g.x3;
  // Lower-left numerator is -4 x1: this is the sign under which the
  // (2ma, 2mb, 0, 0) slice reproduces build_T.
  return {((2.0 + g.x2) * (2.0 + g.x2) - x1x4 + x3sq) / denom, -4.0 * g.x4 / denom,
          -4.0 * g.x1 / denom, ((2.0 - g.x2) * (2.0 - g.x2) - x1x4 + x3sq) / denom};
}

GeneralMatchingParams delta_slice(const MatchingParams& p, double mass) {
  return {2.0 * mass * p.a, 2.0 * mass * p.b, 0.0, 0.0};
}

RVAssembly assemble_RV(const ExtensionParams& ext, const WellConfig& cfg, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, "wavenumber k must be positive and finite");
  }
  const Mat2 U = build_U(ext);
  const double alpha = 2.0 * cfg.c * k + 1.0;
  const double beta = 2.0 * cfg.c * k - 1.0;
  const Complex ep = std::polar(1.0, k * cfg.c);
  const Complex em = std::conj(ep);

  RVAssembly rv;
  rv.alpha = alpha;
  rv.beta = beta;
  rv.R = {U.a12 * beta * ep, -U.a12 * alpha * em, (alpha - U.a22 * beta) * ep,
          -(beta - U.a22 * alpha) * em};
  rv.V = {(beta - U.a11 * alpha) * em, -(alpha - U.a11 * beta) * ep, U.a21 * alpha * em,
          -U.a21 * beta * ep};
  rv.delta = U.a12 * (alpha * alpha - beta * beta);
  return rv;
}

Mat2 closed_form_R_inverse(const RVAssembly& rv, const Mat2& U, double c, double k) {
  const Complex ep = std::polar(1.0, k * c);
  const Complex em = std::conj(ep);
  const Complex inv_delta = 1.0 / rv.delta;
  const Mat2 cof{-(rv.beta - U.a22 * rv.alpha) * em, U.a12 * rv.alpha * em,
                 -(rv.alpha - U.a22 * rv.beta) * ep, U.a12 * rv.beta * ep};
  return inv_delta * cof;
}

double delta_tolerance(const WellConfig& cfg, double k) { return 1e-12 * 8.0 * cfg.c * k; }

Mat2 wall_transfer(const ExtensionParams& ext, const WellConfig& cfg, double k,
                   std::optional<double> tol_override) {
  const RVAssembly rv = assemble_RV(ext, cfg, k);
  const double tol = tol_override.value_or(delta_tolerance(cfg, k));
  if (!(std::abs(rv.delta) > tol)) {
    std::ostringstream msg;
    msg << "|delta| = " << std::abs(rv.delta) << " <= " << tol
        << "; the wall map needs m1 or m2 nonzero";
    throw Error(ErrorCode::DegenerateTransfer, msg.str());
  }
  return closed_form_R_inverse(rv, build_U(ext), cfg.c, k) * rv.V;
}

Mat2 plane_wave_matrix(double k) { return {1.0, 1.0, Complex(0.0, k), Complex(0.0, -k)}; }

Mat2 plane_wave_matrix_inverse(double k) {
  const Complex ik(0.0, k);
  return (1.0 / (2.0 * ik)) * Mat2{ik, 1.0, ik, -1.0};
}

Mat2 origin_transfer(const MatchingParams& p, double mass, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, "wavenumber k must be positive and finite");
  }
  const TMatrix t = build_T(p, mass);
  return plane_wave_matrix_inverse(k) * t.matrix * plane_wave_matrix(k);
}

TransferPair transfer_pair(const ExtensionParams& ext, const MatchingParams& p,
                           const WellConfig& cfg, double k, std::optional<double> tol_override) {
  TransferPair out;
  out.k = k;
  out.wall = wall_transfer(ext, cfg, k, tol_override);
  out.origin = origin_transfer(p, cfg.mass, k);
  out.delta = assemble_RV(ext, cfg, k).delta;
  return out;
}

std::array<EquationSides, 4> consistency_equations(const ExtensionParams& ext,
                                                   const MatchingParams& p,
                                                   const WellConfig& cfg, double k) {
  const Mat2 U = build_U(ext);
  const RVAssembly rv = assemble_RV(ext, cfg, k);
  const TDecomposition t = build_T(p, cfg.mass).parts;
  const double al = rv.alpha;
  const double be = rv.beta;
  const Complex ik(0.0, k);
  const Complex e2p = std::polar(1.0, 2.0 * k * cfg.c);
  const Complex e2m = std::conj(e2p);
  const Complex u12u21 = U.a12 * U.a21;
  const Complex d = rv.delta;
  const double tsum = t.t1 + 1.0 / t.t1;
  const double tdiff = t.t1 - 1.0 / t.t1;

  return {{
      {-(be - U.a22 * al) * (be - U.a11 * al) + u12u21 * al * al,
       (ik * tsum + t.t2) / (2.0 * ik) * e2p * d},
      {(be - U.a22 * al) * (al - U.a11 * be) - u12u21 * al * be,
       (ik * tdiff + t.t2) / (2.0 * ik) * d},
      {-(al - U.a22 * be) * (be - U.a11 * al) + u12u21 * al * be,
       (ik * tdiff - t.t2) / (2.0 * ik) * d},
      {(al - U.a22 * be) * (al - U.a11 * be) - be * be * u12u21,
       (ik * tsum - t.t2) / (2.0 * ik) * e2m * d},
  }};
}

ConsistencyResiduals consistency_residuals(const ExtensionParams& ext, const MatchingParams& p,
                                           const WellConfig& cfg, double k,
                                           std::optional<double> tol_override) {
  const TransferPair pair = transfer_pair(ext, p, cfg, k, tol_override);
  const auto eqs = consistency_equations(ext, p, cfg, k);
  return {max_abs(pair.wall - pair.origin), eqs[0].residual(), eqs[1].residual(),
          eqs[2].residual(), eqs[3].residual()};
}

}  // namespace sqwell
