#include "sqwell/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqwell/error.hpp"

namespace sqwell {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::SingularCoupling: return "SingularCoupling";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadNorm: return "BadNorm";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::DegenerateTransfer: return "DegenerateTransfer";
    case ErrorCode::DegenerateA: return "DegenerateA";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
  }
  return "Unknown";
}

Mat2 mat_mul(const Mat2& l, const Mat2& r) {
  return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
          l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) { return mat_mul(lhs, rhs); }

Mat2 operator*(Complex s, const Mat2& x) {
  return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
}

Mat2 operator+(const Mat2& l, const Mat2& r) {
  return {l.a11 + r.a11, l.a12 + r.a12, l.a21 + r.a21, l.a22 + r.a22};
}

Mat2 operator-(const Mat2& l, const Mat2& r) {
  return {l.a11 - r.a11, l.a12 - r.a12, l.a21 - r.a21, l.a22 - r.a22};
}

Complex det(const Mat2& x) { return x.a11 * x.a22 - x.a12 * x.a21; }

Mat2 adjoint(const Mat2& x) {
  return {std::conj(x.a11), std::conj(x.a21), std::conj(x.a12), std::conj(x.a22)};
}

double max_abs(const Mat2& x) {
  return std::max({std::abs(x.a11), std::abs(x.a12), std::abs(x.a21), std::abs(x.a22)});
}

Mat2 mat_inv(const Mat2& x, double rel_tol) {
  const double scale = max_abs(x);
  const Complex d = det(x);
  if (!std::isfinite(scale) || scale == 0.0 || !(std::abs(d) > rel_tol * scale * scale)) {
    std::ostringstream msg;
    msg << "determinant " << std::abs(d) << " below tolerance for entry scale " << scale;
    throw Error(ErrorCode::SingularMatrix, msg.str());
  }
  const Complex inv_d = 1.0 / d;
  return {inv_d * x.a22, -inv_d * x.a12, -inv_d * x.a21, inv_d * x.a11};
}

double bracketed_root(const RealFn& f, double lo, double hi, double tol, double boundary_tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    std::ostringstream msg;
    msg << "invalid bracket [" << lo << ", " << hi << "] with tol " << tol;
    throw Error(ErrorCode::NoSignChange, msg.str());
  }
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (std::abs(f_lo) <= boundary_tol) return lo;
  if (std::abs(f_hi) <= boundary_tol) return hi;
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi) || std::signbit(f_lo) == std::signbit(f_hi)) {
    std::ostringstream msg;
    msg << "f(" << lo << ") = " << f_lo << " and f(" << hi << ") = " << f_hi
        << " do not bracket a root";
    throw Error(ErrorCode::NoSignChange, msg.str());
  }

  // Each step halves the bracket, so 2100 steps exhaust any double range.
  for (int iter = 0; iter < 2100; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= tol * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) return mid;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace sqwell
