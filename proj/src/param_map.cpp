#include "sqwell/param_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sqwell/boundary_forms.hpp"
#include "sqwell/error.hpp"
#include "sqwell/spectrum.hpp"

namespace sqwell {

namespace {

// Every scalar combination the printed chain refers to, at one (a, b, k).
struct Terms {
  double c, k, ma, mb;
  double g;  // 1 - m^2 b^2
  double h;  // 1 + m^2 b^2
  double u;  // 4 c^2 k^2
  double s, co;
  double Q, R, S, A;

  Terms(const MatchingParams& p, const WellConfig& cfg, double k_in)
      : c(cfg.c), k(k_in), ma(cfg.mass * p.a), mb(cfg.mass * p.b) {
    g = 1.0 - mb * mb;
    h = 1.0 + mb * mb;
    u = 4.0 * c * c * k * k;
    s = std::sin(2.0 * c * k);
    co = std::cos(2.0 * c * k);
    Q = k * h * s + ma * co;
    R = k * h * co - ma * s;
    S = (u - 1.0) * ma + 2.0 * (u + 1.0) * Q;
    A = 16.0 * c * c * R * R + S * S / (k * k);
  }

  // Numerator of the m0 relation: (4c^2k^2+1) ma + 2(4c^2k^2-1) Q.
  double m0_bracket() const { return (u + 1.0) * ma + 2.0 * (u - 1.0) * Q; }
};

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, "wavenumber k must be positive and finite");
  }
}

AuditRecord real_record(std::string eq, double lhs, double rhs) {
  return {std::move(eq), lhs, rhs, std::abs(lhs - rhs), false, true};
}

AuditRecord complex_record(std::string eq, Complex lhs, Complex rhs) {
  return {std::move(eq), lhs, rhs, std::abs(lhs - rhs), true, true};
}

// A tangent only fixes phi modulo pi, so angles are compared on that circle.
AuditRecord phi_record(std::string eq, double phi_arccos, const PhiVariant& v) {
  if (!v.phi) return {std::move(eq), phi_arccos, 0.0, 0.0, false, false};
  AuditRecord r = real_record(std::move(eq), phi_arccos, *v.phi);
  r.residual = std::abs(std::remainder(phi_arccos - *v.phi, std::numbers::pi));
  return r;
}

// Branch of arctan in [0, pi): for phi in that range sin phi >= 0, so the
// sign of tan fixes the sign of cos.
PhiVariant variant_from_ratio(double num, double den, double cos_reference) {
  PhiVariant v;
  if (den == 0.0 || !std::isfinite(num / den)) return v;
  v.tan_value = num / den;
  double phi = std::atan(v.tan_value);
  if (phi < 0.0) phi += std::numbers::pi;
  v.phi = phi;
  const double cos_v = std::cos(phi);
  if (std::abs(cos_v) > 1e-12 && std::abs(cos_reference) > 1e-12) {
    v.cos_sign_agrees = std::signbit(cos_v) == std::signbit(cos_reference);
  }
  return v;
}

}  // namespace

ParamSolution m_params_at(const MatchingParams& p, const WellConfig& cfg, double k) {
  validate_matching(p, cfg);
  require_k(k);
  const Terms t(p, cfg, k);

  const double scale_r = t.k * t.h + std::abs(t.ma);
  const double scale_s = std::abs(t.u - 1.0) * std::abs(t.ma) + 2.0 * (t.u + 1.0) * scale_r;
  const double scale = 16.0 * t.c * t.c * scale_r * scale_r + scale_s * scale_s / (k * k);
  if (!(t.A > 1e-28 * scale)) {
    std::ostringstream msg;
    msg << "A = " << t.A << " vanishes at k = " << k;
    throw Error(ErrorCode::DegenerateA, msg.str());
  }

  ParamSolution sol;
  sol.A_value = t.A;
  sol.S_value = t.S;
  sol.R_value = t.R;
  sol.Q_value = t.Q;

  ExtensionParams& e = sol.ext;
  e.m2 = 0.0;
  e.m1 = 4.0 * t.c * k * t.g / std::sqrt(t.A);
  e.m3 = (2.0 * t.mb / t.g) * e.m1;
  e.m0 = -t.m0_bracket() * e.m1 / (4.0 * t.c * k * k * t.g);

  const double cos_phi = -t.S * e.m1 / (4.0 * t.c * k * k * t.g);
  const double clamped = std::clamp(cos_phi, -1.0, 1.0);
  e.phi = std::acos(clamped);
  sol.diagnostics = {cos_phi, std::abs(cos_phi - clamped), t.g < 0.0 ? -1 : 1};
  return sol;
}

double normalization_residual(const ExtensionParams& ext) {
  return std::abs(ext.norm_squared() - 1.0);
}

double normalization_residual(const ParamSolution& sol) { return normalization_residual(sol.ext); }

std::array<AuditRecord, 8> eight_equation_residuals(const ParamSolution& sol,
                                                    const MatchingParams& p,
                                                    const WellConfig& cfg, double k) {
  const Terms t(p, cfg, k);
  const ExtensionParams& e = sol.ext;
  const double cphi = std::cos(e.phi);
  const double sphi = std::sin(e.phi);
  const double c = t.c;
  return {{
      real_record("47", (2.0 * t.mb / t.g) * e.m2, 0.0),
      real_record("48", (2.0 * t.mb / t.g) * e.m1, e.m3),
      real_record("49", 4.0 * c * (t.ma / t.g) * e.m2, 0.0),
      real_record("50", (t.u - 1.0) * cphi - (t.u + 1.0) * e.m0, 4.0 * c * (t.ma / t.g) * e.m1),
      real_record("51", (t.u + 1.0) * cphi - (t.u - 1.0) * e.m0, -8.0 * c * (t.Q / t.g) * e.m1),
      real_record("52", 8.0 * c * (t.Q / t.g) * e.m2, 0.0),
      real_record("53", 8.0 * c * (t.R / t.g) * e.m2, 0.0),
      real_record("54", 4.0 * c * k * sphi, 8.0 * c * (t.R / t.g) * e.m1),
  }};
}

PhiVariants phi_variants(const MatchingParams& p, const WellConfig& cfg, double k) {
  const ParamSolution sol = m_params_at(p, cfg, k);
  const Terms t(p, cfg, k);
  const double cos_ref = sol.diagnostics.cos_phi_raw;
  const double eight_ck = 8.0 * t.c * k;

  PhiVariants out;
  out.phi_arccos = sol.ext.phi;
  out.phi_eq59 = variant_from_ratio(-eight_ck * t.R, t.S, cos_ref);
  out.phi_eq64 = variant_from_ratio(-eight_ck * t.R, (t.u - 1.0) * t.ma, cos_ref);
  out.phi_eq65 = variant_from_ratio(eight_ck * (t.co - t.s * t.s), t.s * (t.u - 1.0), cos_ref);
  // With ma = -k h sin/cos from Q = 0, R collapses to k h / cos and the
  // eq64 ratio to 8ck / ((4c^2k^2-1) sin 2ck).
  out.phi_eq64_sub62 = variant_from_ratio(eight_ck, (t.u - 1.0) * t.s, cos_ref);
  return out;
}

const std::vector<std::string>& audit_equation_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (int eq = 30; eq <= 56; ++eq) v.push_back(std::to_string(eq));
    for (const char* eq : {"59", "60", "61", "62", "64", "65", "64_sub62"}) v.emplace_back(eq);
    return v;
  }();
  return ids;
}

const AuditRecord* AuditReport::find(const std::string& eq) const {
  const auto it = std::find_if(records.begin(), records.end(),
                               [&](const AuditRecord& r) { return r.eq == eq; });
  return it == records.end() ? nullptr : &*it;
}

AuditReport chain_residuals(const ParamSolution& sol, const MatchingParams& p,
                            const WellConfig& cfg, double k) {
  validate_matching(p, cfg);
  require_k(k);
  const Terms t(p, cfg, k);
  const ExtensionParams& e = sol.ext;
  const double c = t.c;
  const double ck = c * k;
  const Complex eiphi = std::polar(1.0, e.phi);
  const Complex e2iphi = eiphi * eiphi;
  const Complex e2ikc = std::polar(1.0, 2.0 * ck);
  const Complex e2ikc_m = std::conj(e2ikc);
  const Complex m21(e.m2, e.m1);  // m2 + i m1
  const double cphi = std::cos(e.phi);
  const double sphi = std::sin(e.phi);
  const double alpha_sq = (2.0 * ck + 1.0) * (2.0 * ck + 1.0);
  const double beta_sq = (2.0 * ck - 1.0) * (2.0 * ck - 1.0);
  const Complex i_m3 = kI * e.m3;

  AuditReport report;
  report.input = {p.a, p.b, cfg.mass, cfg.c, k};
  report.ext = e;
  auto& out = report.records;

  const Mat2 wall = wall_transfer(e, cfg, k);
  const Mat2 origin = origin_transfer(p, cfg.mass, k);
  out.push_back(real_record("30", max_abs(wall), max_abs(origin)));
  out.back().residual = max_abs(wall - origin);

  const auto eqs = consistency_equations(e, p, cfg, k);
  for (int i = 0; i < 4; ++i) {
    out.push_back(complex_record(std::to_string(31 + i), eqs[i].lhs, eqs[i].rhs));
  }

  // Entry-wise equations rewritten in phi and m_i.
  out.push_back(complex_record(
      "35", -beta_sq + 2.0 * (t.u - 1.0) * e.m0 * eiphi - alpha_sq * e2iphi,
      -8.0 * c * Complex(k * t.h, t.ma) / t.g * eiphi * m21 * e2ikc));
  out.push_back(complex_record(
      "36", (t.u - 1.0) - 2.0 * (t.u + 1.0) * e.m0 * eiphi - i_m3 * 8.0 * ck * eiphi +
                (t.u - 1.0) * e2iphi,
      -8.0 * c * Complex(2.0 * k * t.mb, t.ma) / t.g * eiphi * m21));
  out.push_back(complex_record(
      "37", -(t.u - 1.0) + 2.0 * (t.u + 1.0) * e.m0 * eiphi - i_m3 * 8.0 * ck * eiphi -
                (t.u - 1.0) * e2iphi,
      -8.0 * c * Complex(2.0 * k * t.mb, -t.ma) / t.g * eiphi * m21));
  // The right-hand denominator here is printed as 1 - m^2 b (not squared in
  // b); it is evaluated exactly that way.
  const double g38 = 1.0 - cfg.mass * cfg.mass * p.b;
  out.push_back(complex_record(
      "38", alpha_sq - 2.0 * (t.u - 1.0) * e.m0 * eiphi + beta_sq * e2iphi,
      -8.0 * c * Complex(k * t.h, -t.ma) / g38 * eiphi * m21 * e2ikc_m));

  // Divided through by e^{i phi}.
  out.push_back(complex_record(
      "39", Complex((t.u + 1.0) * cphi - (t.u - 1.0) * e.m0, 4.0 * ck * sphi),
      4.0 * c * Complex(k * t.h, t.ma) / t.g * m21 * e2ikc));
  out.push_back(complex_record("40", (t.u - 1.0) * cphi - (t.u + 1.0) * e.m0 - i_m3 * 4.0 * ck,
                               -4.0 * c * Complex(2.0 * k * t.mb, t.ma) / t.g * m21));
  out.push_back(complex_record("41", (t.u - 1.0) * cphi - (t.u + 1.0) * e.m0 + i_m3 * 4.0 * ck,
                               4.0 * c * Complex(2.0 * k * t.mb, -t.ma) / t.g * m21));
  out.push_back(complex_record(
      "42", Complex((t.u + 1.0) * cphi - (t.u - 1.0) * e.m0, -4.0 * ck * sphi),
      -4.0 * c * Complex(k * t.h, -t.ma) / t.g * m21 * e2ikc_m));

  // Sums and differences of (39)-(42).
  out.push_back(complex_record("43", i_m3, (2.0 * t.mb / t.g) * m21));
  out.push_back(complex_record("44", (t.u - 1.0) * cphi - (t.u + 1.0) * e.m0,
                               -4.0 * c * (kI * t.ma) / t.g * m21));
  out.push_back(complex_record("45", (t.u + 1.0) * cphi - (t.u - 1.0) * e.m0,
                               kI * 8.0 * c * (t.Q / t.g) * m21));
  out.push_back(complex_record("46", kI * 4.0 * ck * sphi, 8.0 * c * (t.R / t.g) * m21));

  for (const AuditRecord& r : eight_equation_residuals(sol, p, cfg, k)) out.push_back(r);

  out.push_back(real_record("55", e.m2, 0.0));
  out.push_back(real_record("56", 4.0 * ck * cphi, -t.S / (k * t.g) * e.m1));

  const PhiVariants phis = phi_variants(p, cfg, k);
  out.push_back(phi_record("59", e.phi, phis.phi_eq59));
  out.push_back(real_record("60", 4.0 * ck * e.m0, -t.m0_bracket() / (k * t.g) * e.m1));
  const double m0_factor = t.m0_bracket() / (4.0 * c * k * k * t.g);
  const double m3_factor = 2.0 * t.mb / t.g;
  out.push_back(
      real_record("61", (m0_factor * m0_factor + m3_factor * m3_factor + 1.0) * e.m1 * e.m1, 1.0));
  out.push_back(real_record("62", t.Q, 0.0));
  out.push_back(phi_record("64", e.phi, phis.phi_eq64));
  out.push_back(phi_record("65", e.phi, phis.phi_eq65));
  out.push_back(phi_record("64_sub62", e.phi, phis.phi_eq64_sub62));
  return report;
}

AuditReport audit_at(const MatchingParams& p, const WellConfig& cfg, double k) {
  return chain_residuals(m_params_at(p, cfg, k), p, cfg, k);
}

std::vector<LevelMapRow> level_map_table(const MatchingParams& p, const WellConfig& cfg,
                                         int n_max) {
  validate_matching(p, cfg);
  std::vector<LevelMapRow> rows;
  for (const SpectralLevel& level : find_levels(p, cfg, n_max)) {
    const ParamSolution sol = m_params_at(p, cfg, level.k);
    rows.push_back({level.n, level.k, sol.ext.m1, sol.ext.phi, sol.ext.m0, sol.ext.m3});
  }
  return rows;
}

}  // namespace sqwell
