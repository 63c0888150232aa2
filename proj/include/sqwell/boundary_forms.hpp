#pragma once

// Matrices of both parametrizations and the two transfer maps that carry
// the left plane-wave amplitudes (D, C) onto the right ones (A, B):
//
//   wall side    (A, B) = R^{-1} V (D, C)   from the unitary wall conditions
//   origin side  (A, B) = M^{-1} T M (D, C) from the delta/delta' matching
//
// with psi_1 = D e^{ikx} + C e^{-ikx} on (-c, 0) and
//      psi_2 = A e^{ikx} + B e^{-ikx} on (0, c).

#include <array>
#include <optional>

#include "sqwell/model.hpp"
#include "sqwell/numerics.hpp"

namespace sqwell {

struct TDecomposition {
  double t1 = 1.0;  // (1 + mb) / (1 - mb)
  double t2 = 0.0;  // -2 ma / (1 - m^2 b^2)
};

struct TMatrix {
  Mat2 matrix;
  TDecomposition parts;
};

struct RVAssembly {
  Mat2 R;
  Mat2 V;
  Complex delta;  // det R = U12 (alpha^2 - beta^2)
  double alpha = 0.0;
  double beta = 0.0;
};

struct TransferPair {
  Mat2 wall;
  Mat2 origin;
  double k = 0.0;
  Complex delta;
};

struct ConsistencyResiduals {
  double matrix_residual = 0.0;  // max entry modulus of R^{-1}V - M^{-1}TM
  double eq31 = 0.0;
  double eq32 = 0.0;
  double eq33 = 0.0;
  double eq34 = 0.0;
};

/// Both sides of one printed complex equation.
struct EquationSides {
  Complex lhs;
  Complex rhs;
  double residual() const { return std::abs(lhs - rhs); }
};

Mat2 build_U(const ExtensionParams& ext);

/// Throws SingularCoupling when |mass*b| = 1.
TMatrix build_T(const MatchingParams& p, double mass);

/// Four-parameter origin matching (psi, psi')(0+) = G (psi, psi')(0-).
/// Throws SingularDenominator when (2 - i x3)^2 + x1 x4 - x2^2 vanishes.
Mat2 matching_matrix_general(const GeneralMatchingParams& g);

/// The slice of the general matching that realizes a*delta + b*delta'.
GeneralMatchingParams delta_slice(const MatchingParams& p, double mass);

RVAssembly assemble_RV(const ExtensionParams& ext, const WellConfig& cfg, double k);

/// Closed-form R^{-1} (cofactors over delta); no degeneracy check.
Mat2 closed_form_R_inverse(const RVAssembly& rv, const Mat2& U, double c, double k);

/// |delta| threshold below which the wall map is undefined: 1e-12 * 8ck.
double delta_tolerance(const WellConfig& cfg, double k);

/// R^{-1} V. Throws DegenerateTransfer when |delta| is at or below the
/// tolerance (m1 = m2 = 0 family). `tol_override` replaces the default
/// threshold.
Mat2 wall_transfer(const ExtensionParams& ext, const WellConfig& cfg, double k,
                   std::optional<double> tol_override = std::nullopt);

Mat2 plane_wave_matrix(double k);          // M = [[1, 1], [ik, -ik]]
Mat2 plane_wave_matrix_inverse(double k);  // (1 / 2ik) [[ik, 1], [ik, -1]]

/// M^{-1} T M. Throws SingularCoupling.
Mat2 origin_transfer(const MatchingParams& p, double mass, double k);

TransferPair transfer_pair(const ExtensionParams& ext, const MatchingParams& p,
                           const WellConfig& cfg, double k,
                           std::optional<double> tol_override = std::nullopt);

/// Sides of the four entry-wise equations obtained from equating both
/// transfer maps, in order (31), (32), (33), (34).
std::array<EquationSides, 4> consistency_equations(const ExtensionParams& ext,
                                                   const MatchingParams& p,
                                                   const WellConfig& cfg, double k);

ConsistencyResiduals consistency_residuals(const ExtensionParams& ext, const MatchingParams& p,
                                           const WellConfig& cfg, double k,
                                           std::optional<double> tol_override = std::nullopt);

}  // namespace sqwell
