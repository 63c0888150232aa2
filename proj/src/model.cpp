#include "sqwell/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sqwell/error.hpp"

namespace sqwell {

void validate_config(const WellConfig& cfg) {
  if (!(std::isfinite(cfg.c) && cfg.c > 0.0)) {
    std::ostringstream msg;
    msg << "half-width c must be positive and finite, got " << cfg.c;
    throw Error(ErrorCode::InvalidConfig, msg.str());
  }
  if (!(std::isfinite(cfg.mass) && cfg.mass > 0.0)) {
    std::ostringstream msg;
    msg << "mass must be positive and finite, got " << cfg.mass;
    throw Error(ErrorCode::InvalidConfig, msg.str());
  }
}

bool is_singular_coupling(const MatchingParams& p, double mass) {
  return std::abs(std::abs(mass * p.b) - 1.0) <= kCouplingTolerance;
}

void validate_matching(const MatchingParams& p, const WellConfig& cfg) {
  validate_config(cfg);
  if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
    throw Error(ErrorCode::InvalidConfig, "couplings a and b must be finite");
  }
  if (is_singular_coupling(p, cfg.mass)) {
    std::ostringstream msg;
    msg << "|mass*b| = 1 (mass=" << cfg.mass << ", b=" << p.b
        << "); the origin matching matrix diverges";
    throw Error(ErrorCode::SingularCoupling, msg.str());
  }
}

void validate_extension(const ExtensionParams& ext, double tol) {
  const double norm_dev = std::abs(ext.norm_squared() - 1.0);
  if (!(norm_dev <= tol)) {
    std::ostringstream msg;
    msg << "m0^2+m1^2+m2^2+m3^2 deviates from 1 by " << norm_dev;
    throw Error(ErrorCode::BadNorm, msg.str());
  }
  if (!(ext.phi >= 0.0 && ext.phi <= std::numbers::pi)) {
    std::ostringstream msg;
    msg << "phi = " << ext.phi << " outside [0, pi]";
    throw Error(ErrorCode::BadNorm, msg.str());
  }
}

ExtensionParams canonicalize_extension(double phi, const std::array<double, 4>& m) {
  const double norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
  if (!std::isfinite(phi) || !(std::abs(norm - 1.0) <= 1e-9)) {
    std::ostringstream msg;
    msg << "cannot canonicalize phi=" << phi << " with |m|=" << norm;
    throw Error(ErrorCode::BadNorm, msg.str());
  }
  constexpr double pi = std::numbers::pi;
  double sign = 1.0;
  double p = std::fmod(phi, 2.0 * pi);
  if (p < 0.0) p += 2.0 * pi;
  // A tiny negative remainder can round up to exactly 2*pi.
  if (p >= 2.0 * pi) p = 0.0;
  if (p >= pi) {
    p -= pi;
    sign = -1.0;
  }
  // Leave an already-unit vector untouched so the map is exactly idempotent.
  const bool unit = std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon();
  const double s = unit ? sign : sign / norm;
  return {p, s * m[0], s * m[1], s * m[2], s * m[3]};
}

}  // namespace sqwell
