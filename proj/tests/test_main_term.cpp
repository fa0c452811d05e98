#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "period_lens/golden.hpp"
#include "period_lens/main_term.hpp"

using namespace period_lens;

namespace {

std::vector<int> levels() {
  std::vector<int> v;
  for (int n = 1; n <= 30; ++n) v.push_back(n);
  v.push_back(100);
  v.push_back(455);
  return v;
}

const double pi = 3.14159265358979323846;

}  // namespace

TEST_CASE("alpha at special points") {
  PrecisionGuard g(128);
  const Real half_pi = pi_real() / 2;
  for (int N : {1, 2, 3, 7, 16, 100}) {
    ArgumentFunction<Real> plus(N, Parity::plus);
    CHECK(d(abs(plus.raw(half_pi))) < 1e-35);
    if (N > 1) {
      ArgumentFunction<Real> minus(N, Parity::minus);
      CHECK(d(abs(minus.raw(Real(0)))) < 1e-35);
    }
  }
  // the first branch point for N = 3 sits at arccos(sqrt 3 / 4)
  ArgumentFunction<Real> a3(3, Parity::plus);
  Real b = acos(sqrt(Real(3)) / 4);
  REQUIRE(!a3.branch_points().empty());
  CHECK(d(abs(a3.branch_points().front() - b)) < 1e-30);
  for (long e : {20L, 30L, 40L}) {
    Real h = two_pow(-e);
    CHECK(d(half_pi - abs(a3.raw(b - h))) < 1e-5);
    CHECK(d(half_pi - abs(a3.raw(b + h))) < 1e-5);
    CHECK(a3.raw(b - h) * a3.raw(b + h) < 0);  // the jump
  }
}

TEST_CASE("argument endpoint values") {
  PrecisionGuard g(128);
  const Real P = pi_real();
  auto ends = [&](int N, Parity p) {
    ArgumentFunction<Real> a(N, p);
    return std::pair<double, double>{d(a(Real(0)) / P), d(a(P) / P)};
  };
  auto [s0, s1] = ends(16, Parity::plus);
  CHECK(s0 == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(s1 == doctest::Approx(0.5).epsilon(1e-15));
  auto [t0, t1] = ends(3, Parity::plus);
  CHECK(t0 == doctest::Approx(1).epsilon(1e-15));
  CHECK(t1 == doctest::Approx(3).epsilon(1e-15));
  auto [u0, u1] = ends(5, Parity::minus);
  CHECK(std::abs(u0) < 1e-15);
  CHECK(u1 == doctest::Approx(1).epsilon(1e-15));
  for (int N : {2, 3}) {
    auto [v0, v1] = ends(N, Parity::minus);
    CHECK(v1 - v0 == doctest::Approx(3).epsilon(1e-15));
  }
  auto [w0, w1] = ends(1, Parity::plus);
  CHECK(std::abs(w0) < 1e-15);
  CHECK(w1 == doctest::Approx(4).epsilon(1e-15));
}

TEST_CASE("no odd argument function at level 1") {
  CHECK_THROWS_AS(ArgumentFunction<Real>(1, Parity::minus), std::invalid_argument);
  CHECK_THROWS_AS(d_threshold(1, Parity::minus), std::invalid_argument);
}

TEST_CASE("piecewise argument equals the unwrapped argument") {
  PrecisionGuard g(128);
  const int M = 6000;
  const Real P = pi_real();
  for (int N : levels()) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      if (N == 1 && par == Parity::minus) continue;
      ArgumentFunction<Real> a(N, par);
      // stay off the endpoints, where g can vanish
      std::vector<Real> th;
      for (int i = 0; i < M; ++i) th.push_back(P * (Real(i) + Real(1) / 4) / (M - 1 + Real(1) / 2));
      auto u = unwrapped_argument(N, par, th);
      Real c = a(th[0]) - u[0];
      CAPTURE(N);
      CAPTURE(to_string(par));
      // the two agree up to a fixed multiple of pi
      CHECK(d(abs(c / P - round(c / P))) < 1e-18);
      Real worst(0);
      for (int i = 0; i < M; ++i) worst = std::max<Real>(worst, abs(a(th[i]) - u[i] - c));
      CHECK(d(worst) < 1e-18);
    }
  }
  // one point checked in isolation
  for (Parity par : {Parity::plus, Parity::minus}) {
    ArgumentFunction<Real> a(3, par);
    std::vector<Real> th;
    for (int i = 0; i <= 4000; ++i) th.push_back(Real(i) / 4000);
    auto u = unwrapped_argument(3, par, th);
    Real c = a(th[0]) - u[0];
    CHECK(d(abs(a(Real(1)) - u.back() - c)) < 1e-20);
  }
}

TEST_CASE("radius closed forms") {
  PrecisionGuard g(128);
  const Real P = pi_real();
  CHECK(d(abs(ArgumentFunction<Real>(1, Parity::plus).radius(Real(0)) - 1)) < 1e-30);
  CHECK(d(ArgumentFunction<Real>(16, Parity::plus).radius(Real(0))) < 1e-30);
  CHECK(d(ArgumentFunction<Real>(4, Parity::minus).radius(Real(0))) < 1e-30);
  for (int N : {2, 5, 9, 30}) {
    Real c = 2 * P / sqrt(Real(N));
    CHECK(d(abs(ArgumentFunction<Real>(N, Parity::minus).radius(P / 2) - (exp(c) - exp(-c)) / 2)) < 1e-30);
  }
  for (int N : levels()) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      if (N == 1 && par == Parity::minus) continue;
      ArgumentFunction<Real> a(N, par);
      for (int i = 0; i <= 50; ++i) {
        Real th = P * i / 100;
        CHECK(d(abs(a.radius(th) - a.radius(P - th))) < 1e-30);
      }
    }
  }
}

TEST_CASE("radius monotonicity and endpoint floor") {
  for (int N : levels()) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      if (N == 1 && par == Parity::minus) continue;
      auto r = radius_monotonicity_check(N, par, 1024);
      CAPTURE(N);
      CHECK(r.increasing);
      CHECK(r.above_endpoint);
    }
  }
  PrecisionGuard g(128);
  ArgumentFunction<Real> a9(9, Parity::plus);
  Real floor9 = abs(cos(2 * pi_real() / 3));
  Real lo = a9.radius(Real(0)) - floor9;
  for (int i = 0; i <= 4096; ++i) lo = std::min<Real>(lo, a9.radius(pi_real() * i / 4096) - floor9);
  CHECK(lo >= 0);
}

TEST_CASE("right derivatives of the radius at degenerate levels") {
  PrecisionGuard g(128);
  struct Case {
    int N;
    Parity par;
    double slope;
  };
  for (Case c : {Case{16, Parity::plus, pi / 2}, Case{4, Parity::minus, pi}}) {
    ArgumentFunction<Real> a(c.N, c.par);
    double prev = 1e9;
    for (long e = 10; e <= 20; ++e) {
      Real h = two_pow(-e);
      double err = std::abs(d(a.radius(h) / h) - c.slope);
      CHECK(err < prev);
      CHECK(err < 8.0 * d(h));
      prev = err;
    }
    CHECK(radius_monotonicity_check(c.N, c.par).right_derivative_at_zero == doctest::Approx(c.slope).epsilon(1e-6));
  }
}

TEST_CASE("derivative threshold reconstructions") {
  CHECK(d_threshold(1, Parity::plus) == 16);
  CHECK(d_threshold(15, Parity::plus) == 66);
  CHECK(d_threshold(4, Parity::minus) == 10);
  auto e = derivative_sup(15, Parity::plus);
  CHECK(e.lower <= e.upper);
  CHECK(d(e.upper - e.lower) < 1e-6);
}

TEST_CASE("the phase increases from the tabulated weight on") {
  PrecisionGuard g(128);
  const Real P = pi_real();
  for (int N : levels()) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      auto dv = golden::d_value(N, par);
      if (!dv) continue;
      ArgumentFunction<Real> a(N, par);
      const int m = (*dv - 2) / 2;
      Real lo(1e9);
      for (int i = 0; i <= 2048; ++i) lo = std::min<Real>(lo, m - a.derivative(P * i / 2048));
      CAPTURE(N);
      CHECK(lo > 0);
    }
  }
}

TEST_CASE("closed-form derivative against a central difference") {
  PrecisionGuard g(128);
  Real h = two_pow(-40);
  for (int N : {2, 3, 7, 30}) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      ArgumentFunction<Real> a(N, par);
      for (double t : {0.3, 1.2, 2.5}) {
        Real th(t);
        Real fd = (a(th + h) - a(th - h)) / (2 * h);
        CHECK(d(abs(fd - a.derivative(th))) < 1e-15);
      }
    }
  }
}

TEST_CASE("profile csv layout") {
  auto prof = main_term_profile(3, Parity::plus, 5);
  REQUIRE(prof.size() == 5);
  auto csv = profile_csv(prof);
  CHECK(csv.rfind("theta,argument,radius\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}
