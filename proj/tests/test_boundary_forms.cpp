#include <cmath>
#include <numbers>

#include <doctest.h>

#include "sqwell/boundary_forms.hpp"
#include "sqwell/error.hpp"
#include "test_helpers.hpp"

using namespace sqwell;
using std::numbers::pi;
using test::near;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected sqwell::Error");
  return ErrorCode::InvalidArgument;
}

ExtensionParams random_extension() {
  std::array<double, 4> m{};
  double norm = 0.0;
  do {
    for (double& x : m) x = test::uniform(-1.0, 1.0);
    norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3]);
  } while (norm < 0.1);
  return {test::uniform(0.0, pi), m[0] / norm, m[1] / norm, m[2] / norm, m[3] / norm};
}

MatchingParams random_coupling(double mass) {
  for (;;) {
    const MatchingParams p{test::uniform(-10.0, 10.0), test::uniform(-6.0, 6.0)};
    if (std::abs(std::abs(mass * p.b) - 1.0) > 1e-3) return p;
  }
}

}  // namespace

TEST_CASE("build_U") {
  CHECK(near(build_U({0.0, 1.0, 0.0, 0.0, 0.0}), Mat2::identity(), 0.0));
  const Complex i = kI;
  CHECK(near(build_U({0.0, 0.0, 1.0, 0.0, 0.0}), Mat2{0.0, -i, -i, 0.0}, 0.0));

  SUBCASE("unitary with det e^{2i phi}") {
    for (int trial = 0; trial < 1000; ++trial) {
      const ExtensionParams e = random_extension();
      const Mat2 U = build_U(e);
      CHECK(near(adjoint(U) * U, Mat2::identity(), 1e-13));
      // (m0 - i m3)(m0 + i m3) + (m2 + i m1)(m2 - i m1) = |m|^2.
      CHECK(near(det(U), std::polar(1.0, 2.0 * e.phi), 1e-13));
    }
  }
}

TEST_CASE("build_T") {
  CHECK(build_T({0.0, 0.0}, 0.5).matrix == Mat2::identity());
  const TMatrix t = build_T({1.0, 0.0}, 0.5);
  CHECK(near(t.matrix, Mat2{1.0, 0.0, -1.0, 1.0}, 1e-15));
  CHECK(t.parts.t1 == 1.0);
  CHECK(t.parts.t2 == -1.0);
  CHECK(code_of([] { build_T({1.0, 2.0}, 0.5); }) == ErrorCode::SingularCoupling);

  for (int trial = 0; trial < 500; ++trial) {
    const double mass = test::uniform(0.1, 2.0);
    const TMatrix tm = build_T(random_coupling(mass), mass);
    CHECK(std::abs(det(tm.matrix) - 1.0) <= 1e-14 * std::max(1.0, max_abs(tm.matrix)));
    CHECK(tm.matrix.a22.real() == doctest::Approx(1.0 / tm.parts.t1).epsilon(1e-14));
  }
}

TEST_CASE("matching_matrix_general") {
  CHECK(near(matching_matrix_general({}), Mat2::identity(), 1e-16));
  CHECK(code_of([] { matching_matrix_general({0.0, 2.0, 0.0, 0.0}); }) ==
        ErrorCode::SingularDenominator);

  SUBCASE("delta slice reduces to T") {
    const MatchingParams p{1.5, 0.7};
    const Mat2 g = matching_matrix_general(delta_slice(p, 0.8));
    CHECK(near(g, build_T(p, 0.8).matrix, 1e-13));
  }

  SUBCASE("general entries") {
    // x = (1, 0, 0, 1): denominator 4 + 1 = 5.
    const Mat2 g = matching_matrix_general({1.0, 0.0, 0.0, 1.0});
    CHECK(near(g, Mat2{3.0 / 5.0, -4.0 / 5.0, -4.0 / 5.0, 3.0 / 5.0}, 1e-15));
    // x3 makes the denominator complex: (2 - i)^2 = 3 - 4i.
    const Mat2 h = matching_matrix_general({0.0, 0.0, 1.0, 0.0});
    CHECK(near(h.a11, 5.0 / Complex(3.0, -4.0), 1e-15));
  }
}

TEST_CASE("assemble_RV") {
  const WellConfig cfg{1.0, 0.5};
  SUBCASE("alpha^2 - beta^2 = 8ck") {
    for (double k : {0.1, 1.0, 7.3}) {
      const RVAssembly rv = assemble_RV({0.0, 0.0, 1.0, 0.0, 0.0}, {2.5, 0.5}, k);
      CHECK(rv.alpha * rv.alpha - rv.beta * rv.beta == doctest::Approx(8.0 * 2.5 * k));
    }
  }
  SUBCASE("delta at the reference example") {
    const RVAssembly rv = assemble_RV({0.0, 0.0, 1.0, 0.0, 0.0}, cfg, 1.0);
    CHECK(near(rv.delta, Complex(0.0, -8.0), 1e-14));
  }
  SUBCASE("m1 = m2 = 0 reports a vanishing delta") {
    const RVAssembly rv = assemble_RV({0.7, 0.6, 0.0, 0.0, 0.8}, cfg, 1.3);
    CHECK(std::abs(rv.delta) == 0.0);
  }
  SUBCASE("delta identity and det R") {
    for (int trial = 0; trial < 1000; ++trial) {
      const ExtensionParams e = random_extension();
      const WellConfig w{test::uniform(0.2, 5.0), 0.5};
      const double k = test::uniform(0.05, 20.0);
      const RVAssembly rv = assemble_RV(e, w, k);
      const Complex closed = -8.0 * w.c * k * Complex(e.m2, e.m1) * std::polar(1.0, e.phi);
      const double scale = 8.0 * w.c * k;
      CHECK(std::abs(rv.delta - closed) <= 1e-12 * scale);
      CHECK(std::abs(det(rv.R) - rv.delta) <= 1e-12 * scale * scale);
    }
  }
  CHECK(code_of([&] { assemble_RV({}, cfg, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("wall_transfer") {
  const WellConfig cfg{1.0, 0.5};
  const ExtensionParams e{pi / 2, 0.0, 1.0, 0.0, 0.0};
  const RVAssembly rv = assemble_RV(e, cfg, 1.0);
  const Mat2 closed = closed_form_R_inverse(rv, build_U(e), cfg.c, 1.0);
  CHECK(near(closed, mat_inv(rv.R), 1e-12));

  CHECK(code_of([&] { wall_transfer({0.0, 1.0, 0.0, 0.0, 0.0}, cfg, 1.0); }) ==
        ErrorCode::DegenerateTransfer);

  for (int trial = 0; trial < 300; ++trial) {
    const ExtensionParams r = random_extension();
    const double k = test::uniform(0.1, 10.0);
    const Mat2 w = wall_transfer(r, cfg, k);
    const RVAssembly ra = assemble_RV(r, cfg, k);
    // R (R^{-1} V) = V is an independent check of the closed form.
    CHECK(near(ra.R * w, ra.V, 1e-10 * std::max(1.0, max_abs(ra.R) * max_abs(w))));
    CHECK(std::isfinite(std::abs(det(w))));
  }
}

TEST_CASE("origin_transfer") {
  CHECK(near(origin_transfer({0.0, 0.0}, 0.5, 1.7), Mat2::identity(), 1e-15));

  SUBCASE("b = 0 closed form") {
    const double mass = 0.75;
    const double a = 2.2;
    const double k = 1.3;
    const double t2 = -2.0 * mass * a;
    const Complex q = t2 / Complex(0.0, 2.0 * k);
    CHECK(near(origin_transfer({a, 0.0}, mass, k), Mat2{1.0 + q, q, -q, 1.0 - q}, 1e-14));
  }

  SUBCASE("reproduces the origin matching on the plane waves") {
    for (int trial = 0; trial < 500; ++trial) {
      const double mass = test::uniform(0.1, 2.0);
      const MatchingParams p = random_coupling(mass);
      const double k = test::uniform(0.05, 15.0);
      const Mat2 o = origin_transfer(p, mass, k);
      CHECK(std::abs(det(o) - 1.0) <= 1e-13 * std::max(1.0, max_abs(o) * max_abs(o)));

      const Complex D = test::random_complex();
      const Complex C = test::random_complex();
      const Complex A = o.a11 * D + o.a12 * C;
      const Complex B = o.a21 * D + o.a22 * C;
      const Mat2 T = build_T(p, mass).matrix;
      const Complex ik(0.0, k);
      const Complex psi_left = D + C;
      const Complex dpsi_left = ik * (D - C);
      const double tol = 1e-12 * std::max(1.0, max_abs(T)) * (1.0 + k);
      CHECK(std::abs(A + B - (T.a11 * psi_left + T.a12 * dpsi_left)) <= tol);
      CHECK(std::abs(ik * (A - B) - (T.a21 * psi_left + T.a22 * dpsi_left)) <= tol * k);
    }
  }
  CHECK(code_of([] { origin_transfer({1.0, 2.0}, 0.5, 1.0); }) == ErrorCode::SingularCoupling);
}

TEST_CASE("consistency residuals") {
  const WellConfig cfg{1.0, 0.5};

  SUBCASE("entry-wise equations are the transfer identity scaled by delta") {
    for (int trial = 0; trial < 300; ++trial) {
      const ExtensionParams e = random_extension();
      const MatchingParams p = random_coupling(cfg.mass);
      const double k = test::uniform(0.1, 6.0);
      const TransferPair pair = transfer_pair(e, p, cfg, k);
      const Mat2 diff = pair.wall - pair.origin;
      const auto eqs = consistency_equations(e, p, cfg, k);
      const double dm = std::abs(pair.delta);
      const double tol = 1e-9 * dm * std::max(1.0, max_abs(pair.wall) + max_abs(pair.origin));
      CHECK(std::abs(eqs[0].residual() - dm * std::abs(diff.a11)) <= tol);
      CHECK(std::abs(eqs[1].residual() - dm * std::abs(diff.a12)) <= tol);
      CHECK(std::abs(eqs[2].residual() - dm * std::abs(diff.a21)) <= tol);
      CHECK(std::abs(eqs[3].residual() - dm * std::abs(diff.a22)) <= tol);
    }
  }

  SUBCASE("unperturbed couplings with the swap extension") {
    const double k = pi / (2.0 * cfg.c);
    const ConsistencyResiduals r =
        consistency_residuals({pi / 2, 0.0, 1.0, 0.0, 0.0}, {0.0, 0.0}, cfg, k);
    CHECK(r.matrix_residual >= 0.0);
    CHECK(r.eq31 >= 0.0);
    CHECK(r.eq32 >= 0.0);
    CHECK(r.eq33 >= 0.0);
    CHECK(r.eq34 >= 0.0);
    CHECK(std::isfinite(r.matrix_residual));
  }

  SUBCASE("mismatched pair") {
    // m1 = m2 = 0 only passes with the tolerance override; the map is then
    // dominated by 1/delta and nowhere near the origin transfer.
    const ExtensionParams e{0.0, 1.0, 1e-9, 0.0, 0.0};
    const ConsistencyResiduals r = consistency_residuals(e, {1.0, 0.3}, cfg, 1.0, 1e-300);
    CHECK(r.matrix_residual > 0.1);
    const ConsistencyResiduals s =
        consistency_residuals({1.0, 0.6, 0.8, 0.0, 0.0}, {0.0, 0.0}, cfg, 1.0);
    CHECK(s.matrix_residual > 0.1);
  }
}
