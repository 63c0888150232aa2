#pragma once

// Test-only reference solvers. They share no code with the library: the
// quantization roots come from a fine sign scan plus plain bisection, and
// the Dirichlet-wall levels from a real shooting function
//   psi = sin(k(x + c)) on the left, matched at the origin, psi(c) on the right.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace sqwell::oracle {

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double f_lo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> scan_roots(const std::function<double(double)>& f, double start,
                                      double step, int count) {
  std::vector<double> roots;
  double k = start;
  double fk = f(k);
  for (int i = 0; i < 10000000 && static_cast<int>(roots.size()) < count; ++i) {
    const double next = k + step;
    const double fn = f(next);
    if ((fk < 0.0) != (fn < 0.0)) roots.push_back(bisect(f, k, next));
    k = next;
    fk = fn;
  }
  return roots;
}

inline std::function<double(double)> quantization(double a, double b, double c, double mass) {
  return [=](double k) {
    const double mb = mass * b;
    return k * (1.0 + mb * mb) * std::sin(2.0 * c * k) + mass * a * std::cos(2.0 * c * k);
  };
}

/// Roots of the quantization function by a scan with step pi/(2000c).
inline std::vector<double> quantization_roots(double a, double b, double c, double mass,
                                              int count) {
  const double step = std::numbers::pi / (2000.0 * c);
  return scan_roots(quantization(a, b, c, mass), 0.0, step, count);
}

inline std::function<double(double)> dirichlet_shooting(double a, double b, double c,
                                                        double mass) {
  return [=](double k) {
    const double ma = mass * a;
    const double mb = mass * b;
    const double p0 = std::sin(k * c);
    const double d0 = k * std::cos(k * c);
    const double p1 = (1.0 + mb) / (1.0 - mb) * p0;
    const double d1 = -2.0 * ma / (1.0 - mb * mb) * p0 + (1.0 - mb) / (1.0 + mb) * d0;
    return p1 * std::cos(k * c) + d1 * std::sin(k * c) / k;
  };
}

inline std::vector<double> dirichlet_roots(double a, double b, double c, double mass,
                                           int count) {
  const double step = std::numbers::pi / (2000.0 * c);
  return scan_roots(dirichlet_shooting(a, b, c, mass), 0.5 * step, step, count);
}

}  // namespace sqwell::oracle
