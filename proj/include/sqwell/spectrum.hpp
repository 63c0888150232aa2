#pragma once

// Levels of the perturbed well from the transcendental quantization
//
//   Q(k) = k (1 + m^2 b^2) sin 2ck + m a cos 2ck = 0,
//
// plus an independent cross-check: Dirichlet walls psi(+-c) = 0 joined
// through the delta/delta' origin matching, solved numerically.

#include <optional>
#include <vector>

#include "sqwell/model.hpp"
#include "sqwell/numerics.hpp"

namespace sqwell {

/// Q captured at fixed (a, b, mass, c). Defined for every real k, including
/// |mass*b| = 1.
class QuantizationFn {
 public:
  QuantizationFn(const MatchingParams& p, const WellConfig& cfg);

  double operator()(double k) const;

  double ma() const { return ma_; }
  double c() const { return c_; }
  /// 1 + m^2 b^2.
  double h() const { return h_; }

 private:
  double ma_;
  double h_;
  double c_;
};

double q_eval(const MatchingParams& p, const WellConfig& cfg, double k);

/// Upper edge n*pi/(2c) of the n-th bracketing cell.
double cell_edge(const WellConfig& cfg, int n);

inline constexpr double kLevelTolerance = 1e-15;

/// First n_max roots of Q, one per cell ((n-1) pi/2c, n pi/2c). For a = 0
/// the roots are the cell edges themselves and are returned exactly.
std::vector<SpectralLevel> find_levels(const MatchingParams& p, const WellConfig& cfg, int n_max);

/// Plane-wave amplitudes: psi_1 = D e^{ikx} + C e^{-ikx} on (-c, 0),
/// psi_2 = A e^{ikx} + B e^{-ikx} on (0, c).
struct Coefficients {
  Complex A, B, C, D;
};

/// 2x2 homogeneous system in (D, C) from psi_1(-c) = 0 and psi_2(c) = 0
/// with (A, B) = origin_transfer (D, C).
Mat2 dirichlet_system(const MatchingParams& p, const WellConfig& cfg, double k);

/// det S(k) rotated onto the real axis. The change of basis from real
/// (cos, sin) amplitudes to (D, C) has determinant i/2; multiplying by it
/// turns the determinant real for real k.
double dirichlet_determinant(const MatchingParams& p, const WellConfig& cfg, double k);

/// det S normalized by the row norms of S; dimensionless, used to accept
/// or reject a candidate eigenvalue.
double dirichlet_determinant_normalized(const MatchingParams& p, const WellConfig& cfg,
                                        double k);

inline constexpr double kEigenTolerance = 1e-8;

/// First n_max positive roots of the Dirichlet determinant, by sign scan
/// with step pi/(200c) and bisection. Throws SingularCoupling.
std::vector<SpectralLevel> dirichlet_levels(const MatchingParams& p, const WellConfig& cfg,
                                            int n_max);

/// Null vector of S(k) with the origin amplitudes attached, normalized to
/// unit L2 norm and phased so psi is real (up to sign). Throws
/// NotAnEigenvalue when the normalized determinant exceeds kEigenTolerance.
Coefficients eigenfunction(const MatchingParams& p, const WellConfig& cfg, double k);

Complex psi_value(const Coefficients& co, double k, double x);
Complex psi_derivative(const Coefficients& co, double k, double x);

/// Closed-form piecewise integral of |psi|^2 over [-c, c].
double norm_squared(const Coefficients& co, double k, double c);

struct ModelComparisonRow {
  int n = 0;
  double k_eq62 = 0.0;
  double k_dirichlet = 0.0;
  double diff = 0.0;  // k_eq62 - k_dirichlet

  friend bool operator==(const ModelComparisonRow&, const ModelComparisonRow&) = default;
};

std::vector<ModelComparisonRow> compare_models(const MatchingParams& p, const WellConfig& cfg,
                                               int n_max);

}  // namespace sqwell
