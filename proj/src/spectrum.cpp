#include "sqwell/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sqwell/boundary_forms.hpp"
#include "sqwell/error.hpp"

namespace sqwell {

namespace {

void require_levels(int n_max) {
  if (n_max < 1) {
    throw Error(ErrorCode::InvalidArgument, "number of levels must be at least 1");
  }
}

double energy_of(double k, double mass) { return k * k / (2.0 * mass); }

}  // namespace

QuantizationFn::QuantizationFn(const MatchingParams& p, const WellConfig& cfg)
    : ma_(cfg.mass * p.a), h_(1.0 + cfg.mass * cfg.mass * p.b * p.b), c_(cfg.c) {}

double QuantizationFn::operator()(double k) const {
  const double x = 2.0 * c_ * k;
  return k * h_ * std::sin(x) + ma_ * std::cos(x);
}

double q_eval(const MatchingParams& p, const WellConfig& cfg, double k) {
  return QuantizationFn(p, cfg)(k);
}

double cell_edge(const WellConfig& cfg, int n) { return n * std::numbers::pi / (2.0 * cfg.c); }

std::vector<SpectralLevel> find_levels(const MatchingParams& p, const WellConfig& cfg,
                                       int n_max) {
  validate_config(cfg);
  require_levels(n_max);
  if (!std::isfinite(p.a) || !std::isfinite(p.b)) {
    throw Error(ErrorCode::InvalidConfig, "couplings a and b must be finite");
  }
  const QuantizationFn q(p, cfg);
  std::vector<SpectralLevel> levels;
  levels.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    double k = cell_edge(cfg, n);
    if (q.ma() != 0.0) {
      // Q(edge_n) = ma (-1)^n exactly, so every open cell holds a sign change.
      k = bracketed_root(q, cell_edge(cfg, n - 1), k, kLevelTolerance);
    }
    levels.push_back({n, k, energy_of(k, cfg.mass)});
  }
  return levels;
}

Mat2 dirichlet_system(const MatchingParams& p, const WellConfig& cfg, double k) {
  const Mat2 o = origin_transfer(p, cfg.mass, k);
  const Complex ep = std::polar(1.0, k * cfg.c);
  const Complex em = std::conj(ep);
  return {em, ep, o.a11 * ep + o.a21 * em, o.a12 * ep + o.a22 * em};
}

double dirichlet_determinant(const MatchingParams& p, const WellConfig& cfg, double k) {
  return (Complex(0.0, 0.5) * det(dirichlet_system(p, cfg, k))).real();
}

double dirichlet_determinant_normalized(const MatchingParams& p, const WellConfig& cfg,
                                        double k) {
  const Mat2 s = dirichlet_system(p, cfg, k);
  const double r1 = std::hypot(std::abs(s.a11), std::abs(s.a12));
  const double r2 = std::hypot(std::abs(s.a21), std::abs(s.a22));
  return std::abs(det(s)) / (r1 * r2);
}

std::vector<SpectralLevel> dirichlet_levels(const MatchingParams& p, const WellConfig& cfg,
                                            int n_max) {
  validate_matching(p, cfg);
  require_levels(n_max);
  const double step = std::numbers::pi / (200.0 * cfg.c);
  // Levels interlace with the unperturbed ones, so n_max roots lie well
  // below this bound.
  const double k_limit = cell_edge(cfg, 4 * n_max + 16);
  auto f = [&](double k) { return dirichlet_determinant(p, cfg, k); };

  std::vector<SpectralLevel> levels;
  // Half-step offset keeps the grid off the unperturbed edges n*pi/(2c).
  double k_lo = 0.5 * step;
  double f_lo = f(k_lo);
  while (static_cast<int>(levels.size()) < n_max && k_lo < k_limit) {
    const double k_hi = k_lo + step;
    const double f_hi = f(k_hi);
    double root = -1.0;
    if (f_lo == 0.0) {
      root = k_lo;
    } else if (std::signbit(f_lo) != std::signbit(f_hi) && f_hi != 0.0) {
      root = bracketed_root(f, k_lo, k_hi, kLevelTolerance);
    }
    if (root > 0.0) {
      const int n = static_cast<int>(levels.size()) + 1;
      levels.push_back({n, root, energy_of(root, cfg.mass)});
    }
    k_lo = k_hi;
    f_lo = f_hi;
  }
  return levels;
}

Complex psi_value(const Coefficients& co, double k, double x) {
  const Complex e = std::polar(1.0, k * x);
  return x < 0.0 ? co.D * e + co.C * std::conj(e) : co.A * e + co.B * std::conj(e);
}

Complex psi_derivative(const Coefficients& co, double k, double x) {
  const Complex e = std::polar(1.0, k * x);
  const Complex ik(0.0, k);
  return x < 0.0 ? ik * (co.D * e - co.C * std::conj(e)) : ik * (co.A * e - co.B * std::conj(e));
}

double norm_squared(const Coefficients& co, double k, double c) {
  // |F e^{ikx} + G e^{-ikx}|^2 = |F|^2 + |G|^2 + 2 Re(F conj(G) e^{2ikx}).
  const Complex ik2(0.0, 2.0 * k);
  const Complex e2 = std::polar(1.0, 2.0 * k * c);
  const Complex left_osc = (1.0 - std::conj(e2)) / ik2;  // int_{-c}^0 e^{2ikx}
  const Complex right_osc = (e2 - 1.0) / ik2;            // int_0^c e^{2ikx}
  const double left = c * (std::norm(co.D) + std::norm(co.C)) +
                      2.0 * (co.D * std::conj(co.C) * left_osc).real();
  const double right = c * (std::norm(co.A) + std::norm(co.B)) +
                       2.0 * (co.A * std::conj(co.B) * right_osc).real();
  return left + right;
}

Coefficients eigenfunction(const MatchingParams& p, const WellConfig& cfg, double k) {
  validate_matching(p, cfg);
  const double residual = dirichlet_determinant_normalized(p, cfg, k);
  if (!(residual <= kEigenTolerance)) {
    std::ostringstream msg;
    msg << "k = " << k << " is not a Dirichlet eigenvalue (normalized det " << residual << ")";
    throw Error(ErrorCode::NotAnEigenvalue, msg.str());
  }
  const Mat2 s = dirichlet_system(p, cfg, k);
  // The first row has unit-modulus entries, so it never vanishes.
  Complex d = s.a12;
  Complex c = -s.a11;
  // Rotate so that C = conj(D), which makes psi_1 real.
  if (std::abs(c) > 0.0) {
    const Complex ratio = std::conj(d) / c;
    const Complex lambda = std::sqrt(ratio / std::abs(ratio));
    d *= lambda;
    c *= lambda;
  }
  const Mat2 o = origin_transfer(p, cfg.mass, k);
  Coefficients co{o.a11 * d + o.a12 * c, o.a21 * d + o.a22 * c, c, d};
  const double scale = 1.0 / std::sqrt(norm_squared(co, k, cfg.c));
  co.A *= scale;
  co.B *= scale;
  co.C *= scale;
  co.D *= scale;
  return co;
}

std::vector<ModelComparisonRow> compare_models(const MatchingParams& p, const WellConfig& cfg,
                                               int n_max) {
  const auto dirichlet = dirichlet_levels(p, cfg, n_max);
  if (static_cast<int>(dirichlet.size()) < n_max) {
    std::ostringstream msg;
    msg << "Dirichlet scan found only " << dirichlet.size() << " of " << n_max << " levels";
    throw Error(ErrorCode::NoSignChange, msg.str());
  }
  const auto eq62 = find_levels(p, cfg, n_max);
  std::vector<ModelComparisonRow> rows;
  rows.reserve(eq62.size());
  for (std::size_t i = 0; i < eq62.size(); ++i) {
    rows.push_back({eq62[i].n, eq62[i].k, dirichlet[i].k, eq62[i].k - dirichlet[i].k});
  }
  return rows;
}

}  // namespace sqwell
