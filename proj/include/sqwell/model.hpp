#pragma once

// Parameter records for the two descriptions of the perturbed well: the
// origin-side couplings (a, b) of a*delta + b*delta' and the wall-side
// unitary parameters (phi, m0..m3). Units follow hbar = 1; only the
// products mass*a, mass*b and c*k ever enter a formula.

#include <array>

namespace sqwell {

/// Well on [-c, c] with particle mass `mass`.
struct WellConfig {
  double c = 2.5;
  double mass = 0.5;
};

/// Couplings of a*delta(x) + b*delta'(x).
struct MatchingParams {
  double a = 0.0;
  double b = 0.0;
};

/// U = e^{i phi} [[m0 - i m3, -m2 - i m1], [m2 - i m1, m0 + i m3]].
struct ExtensionParams {
  double phi = 0.0;
  double m0 = 1.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  std::array<double, 4> m() const { return {m0, m1, m2, m3}; }
  double norm_squared() const { return m0 * m0 + m1 * m1 + m2 * m2 + m3 * m3; }

  friend bool operator==(const ExtensionParams&, const ExtensionParams&) = default;
};

/// (x1, x2, x3, x4) of the general four-parameter origin matching.
struct GeneralMatchingParams {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
};

struct SpectralLevel {
  int n = 0;
  double k = 0.0;
  double energy = 0.0;

  friend bool operator==(const SpectralLevel&, const SpectralLevel&) = default;
};

inline constexpr double kCouplingTolerance = 1e-12;

/// Throws InvalidConfig unless c and mass are finite and positive.
void validate_config(const WellConfig& cfg);

/// Checks the inputs of every matching-matrix path: finite couplings, a
/// valid config, and |mass*b| != 1 (SingularCoupling). The quantization
/// function itself stays defined at |mass*b| = 1 and does not call this.
void validate_matching(const MatchingParams& p, const WellConfig& cfg);

/// True when |mass*b| is within kCouplingTolerance of 1.
bool is_singular_coupling(const MatchingParams& p, double mass);

/// Throws BadNorm unless |m| = 1 within `tol` and phi in [0, pi].
void validate_extension(const ExtensionParams& ext, double tol = 1e-12);

/// Maps (phi, m) onto phi' in [0, pi) using U(phi + pi, m) = U(phi, -m),
/// renormalizing m to unit length. Throws BadNorm when |m| is off by more
/// than 1e-9.
ExtensionParams canonicalize_extension(double phi, const std::array<double, 4>& m);

}  // namespace sqwell
