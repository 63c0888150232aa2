#pragma once

// Wall-side parameters (phi, m0..m3) solved from the origin-side couplings
// (a, b) at a wavenumber k, following the printed elimination chain, and an
// audit that evaluates every intermediate equation of that chain as printed.
//
// Shorthands used throughout, with m the particle mass:
//   Q = k(1+m^2b^2) sin 2ck + ma cos 2ck   (quantization function)
//   R = k(1+m^2b^2) cos 2ck - ma sin 2ck
//   S = (4c^2k^2-1) ma + 2(4c^2k^2+1) Q
//   A = 16 c^2 R^2 + S^2 / k^2
//
// m2 = 0, m1 = 4ck(1-m^2b^2)/sqrt(A), m3 = 2mb m1/(1-m^2b^2),
// 4ck m0 = -[(4c^2k^2+1) ma + 2(4c^2k^2-1) Q] m1 / (k(1-m^2b^2)),
// cos phi = -S m1 / (4ck^2(1-m^2b^2)).
//
// The chain closes (m0^2+m1^2+m2^2+m3^2 = 1) exactly at the roots of Q;
// away from them the deviation is 48 c^2 Q^2 / A.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sqwell/model.hpp"
#include "sqwell/numerics.hpp"

namespace sqwell {

struct ParamDiagnostics {
  double cos_phi_raw = 0.0;     // before clamping into [-1, 1]
  double clamp_magnitude = 0.0; // |cos_phi_raw - clamped|
  int m1_sign = 1;              // sign of 1 - m^2 b^2
};

struct ParamSolution {
  ExtensionParams ext;
  double A_value = 0.0;
  double S_value = 0.0;
  double R_value = 0.0;
  double Q_value = 0.0;
  ParamDiagnostics diagnostics;
};

/// Throws SingularCoupling, InvalidArgument (k <= 0) or DegenerateA.
ParamSolution m_params_at(const MatchingParams& p, const WellConfig& cfg, double k);

/// |m0^2 + m1^2 + m2^2 + m3^2 - 1|.
double normalization_residual(const ParamSolution& sol);
double normalization_residual(const ExtensionParams& ext);

struct AuditRecord {
  std::string eq;
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  bool complex_valued = false;
  bool defined = true;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

/// Residuals of the real eight-equation system, ids "47".."54".
std::array<AuditRecord, 8> eight_equation_residuals(const ParamSolution& sol,
                                                    const MatchingParams& p,
                                                    const WellConfig& cfg, double k);

struct PhiVariant {
  std::optional<double> phi;  // empty when the printed formula divides by 0
  double tan_value = 0.0;
  /// Whether cos(phi) has the sign of the cos phi obtained from S.
  bool cos_sign_agrees = true;
};

struct PhiVariants {
  double phi_arccos = 0.0;
  PhiVariant phi_eq59;          // tan phi = -8ck R / S
  PhiVariant phi_eq64;          // tan phi = -8ck R / ((4c^2k^2-1) ma)
  PhiVariant phi_eq65;          // tan phi = 8ck (cos 2ck - sin^2 2ck) / (sin 2ck (4c^2k^2-1))
  PhiVariant phi_eq64_sub62;    // ma eliminated from the eq64 form via Q = 0
};

PhiVariants phi_variants(const MatchingParams& p, const WellConfig& cfg, double k);

struct AuditInput {
  double a = 0.0;
  double b = 0.0;
  double mass = 0.0;
  double c = 0.0;
  double k = 0.0;

  friend bool operator==(const AuditInput&, const AuditInput&) = default;
};

struct AuditReport {
  AuditInput input;
  ExtensionParams ext;
  std::vector<AuditRecord> records;

  /// nullptr when the id is absent.
  const AuditRecord* find(const std::string& eq) const;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// Equation ids emitted by chain_residuals, in report order.
const std::vector<std::string>& audit_equation_ids();

AuditReport chain_residuals(const ParamSolution& sol, const MatchingParams& p,
                            const WellConfig& cfg, double k);

/// m_params_at followed by chain_residuals.
AuditReport audit_at(const MatchingParams& p, const WellConfig& cfg, double k);

struct LevelMapRow {
  int n = 0;
  double k = 0.0;
  double m1 = 0.0;
  double phi = 0.0;
  double m0 = 0.0;
  double m3 = 0.0;

  friend bool operator==(const LevelMapRow&, const LevelMapRow&) = default;
};

/// One row per level: the level-dependent maps m1 = F_n(a, b),
/// phi = G_n(a, b) evaluated at the n-th root of Q.
std::vector<LevelMapRow> level_map_table(const MatchingParams& p, const WellConfig& cfg,
                                         int n_max);

}  // namespace sqwell
