#pragma once

// Complex 2x2 matrix kit and a bisection root finder. Storage is by value
// throughout; none of these types alias.

#include <complex>
#include <functional>

namespace sqwell {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

struct Mat2 {
  Complex a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mat_mul(const Mat2& lhs, const Mat2& rhs);
Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator*(Complex s, const Mat2& x);
Mat2 operator+(const Mat2& lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& lhs, const Mat2& rhs);

Complex det(const Mat2& x);
Mat2 adjoint(const Mat2& x);

/// Largest entry modulus.
double max_abs(const Mat2& x);

inline constexpr double kDefaultInverseTolerance = 1e-14;

/// Inverse of a 2x2 matrix. Throws SingularMatrix when
/// |det| <= rel_tol * max_abs(x)^2, i.e. the tolerance is relative to the
/// entry scale, not absolute.
Mat2 mat_inv(const Mat2& x, double rel_tol = kDefaultInverseTolerance);

using RealFn = std::function<double(double)>;

/// Bisection on [lo, hi]. The bracket must show a sign change, unless an
/// endpoint already satisfies |f| <= boundary_tol, in which case that
/// endpoint is returned. Iteration stops once the bracket width drops below
/// tol * max(1, |mid|) or no representable midpoint remains.
double bracketed_root(const RealFn& f, double lo, double hi, double tol,
                      double boundary_tol = 0.0);

}  // namespace sqwell
