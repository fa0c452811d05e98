#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "period_lens/error_bounds.hpp"
#include "period_lens/zero_locator.hpp"

using namespace period_lens;

namespace {

ZeroVerdict locate(const char* label, Parity par, Route route = Route::both) {
  PrecisionPolicy pol;
  LocatorOptions opt;
  opt.route = route;
  return count_on_circle(fixture(label), par, pol, opt);
}

}  // namespace

TEST_CASE("target function against the error term") {
  PrecisionPolicy pol;
  for (const char* label : {"16.12.a.a", "23.10.a.a", "2.40.a.a"}) {
    Newform f = fixture(label);
    for (Parity par : {Parity::plus, Parity::minus}) {
      auto q = build_q(f, par, pol);
      PrecisionGuard g(q.bits);
      const int N = f.level(), m = (f.weight() - 2) / 2;
      const bool im = target_uses_imag(par, f.fricke_sign());
      for (double t : {0.25, 1.0, 2.0, 3.0}) {
        Real th(t);
        Complex X = Complex(cos(th), sin(th)) / sqrt(Real(N));
        // e^{i m theta} q(conj X) = N^{m/2} (E(X) + X^m g(2 pi / (N X)))
        Complex Xm = pow(X, m);
        Complex Y = Complex(1, 0) / (X * Real(N));
        Complex main = par == Parity::plus ? ccos(Y * (2 * pi_real())) : csin(Y * (2 * pi_real()));
        Complex full = pow(sqrt(Real(N)), m) * (error_term(q, th) + Xm * main);
        Complex direct = Complex(cos(m * th), sin(m * th)) * evaluate(q, std::conj(X)).value;
        auto T = target_function(q, th);
        Real want = im ? direct.imag() : direct.real();
        Real scale = abs(direct) + 1;
        CAPTURE(std::string(label));
        CHECK(d(abs(T.value - want) / scale) < 1e-50);
        CHECK(d(abs((im ? full.imag() : full.real()) - want) / scale) < 1e-50);
        CHECK(T.radius >= 0);
      }
    }
  }
}

TEST_CASE("imaginary part for matching signs, real part otherwise") {
  CHECK(target_uses_imag(Parity::plus, 1));
  CHECK_FALSE(target_uses_imag(Parity::plus, -1));
  CHECK(target_uses_imag(Parity::minus, -1));
  CHECK_FALSE(target_uses_imag(Parity::minus, 1));
}

TEST_CASE("target function parity in theta") {
  PrecisionPolicy pol;
  for (const char* label : {"16.12.a.b", "17.6.a.c"}) {
    Newform f = fixture(label);
    for (Parity par : {Parity::plus, Parity::minus}) {
      auto q = build_q(f, par, pol);
      PrecisionGuard g(q.bits);
      const bool im = target_uses_imag(par, f.fricke_sign());
      for (double t : {0.3, 1.4, 2.6}) {
        Real a = target_function(q, Real(t)).value, b = target_function(q, Real(-t)).value;
        CHECK(d(abs(im ? a + b : a - b)) < 1e-50);
      }
    }
  }
}

TEST_CASE("endpoint multiplicities") {
  PrecisionPolicy pol;
  auto at = [&](const char* label, Parity par) {
    Newform f = fixture(label);
    auto p = par == Parity::plus ? build_even(f, pol) : build_odd(f, pol);
    auto hi = par == Parity::plus ? build_even(f, pol.escalated()) : build_odd(f, pol.escalated());
    return endpoint_multiplicity(p, &hi);
  };
  auto a = at("16.12.a.a", Parity::plus);
  CHECK(a.conclusive);
  CHECK(a.at_plus == 2);
  CHECK(a.at_minus == 2);
  auto b = at("1.12.a.a", Parity::minus);
  CHECK(b.at_plus == 2);
  CHECK(b.at_minus == 2);
  auto c = at("8.8.a.b", Parity::plus);
  CHECK(c.at_plus == 3);
  CHECK(c.at_minus == 3);
  auto e = at("4.26.a.a", Parity::plus);
  CHECK(e.at_plus == 0);
  CHECK(e.at_minus == 0);
  // a sign-matched even polynomial always vanishes at the endpoints
  for (const char* label : {"7.4.a.a", "23.10.a.a", "13.10.a.a"}) {
    auto m = at(label, Parity::plus);
    CAPTURE(std::string(label));
    CHECK(m.at_plus >= 1);
    CHECK(m.at_minus >= 1);
  }
}

TEST_CASE("predicted counts") {
  CHECK(predicted_count(20, 12, 1, Parity::plus) == 10);
  CHECK(predicted_count(20, 12, -1, Parity::plus) == 10);
  CHECK(predicted_count(7, 16, 1, Parity::plus) == 10);
  CHECK(predicted_count(4, 26, -1, Parity::minus) == 22);
  CHECK(predicted_count(1, 84, 1, Parity::plus) == 74);
  CHECK(predicted_count(2, 40, -1, Parity::minus) == 32);
  CHECK(predicted_count(455, 4, 1, Parity::plus) == 2);
  CHECK_FALSE(predicted_count(17, 6, 1, Parity::plus).has_value());
  CHECK_FALSE(predicted_count(1, 12, 1, Parity::minus).has_value());
}

TEST_CASE("verdicts for reference forms") {
  auto v7 = locate("7.4.a.a", Parity::plus);
  CHECK(v7.on_circle_count == 2);
  CHECK(v7.degree == 2);

  auto v16 = locate("16.12.a.a", Parity::plus);
  CHECK(v16.certified);
  CHECK(v16.on_circle_count == 10);
  CHECK(v16.endpoint_plus == 2);
  CHECK(v16.endpoint_minus == 2);

  auto v84 = locate("1.84.a.a", Parity::plus);
  CHECK(v84.certified);
  CHECK(v84.on_circle_count == 74);
  CHECK(v84.predicted == 74);
  CHECK(v84.exceptional_upper_bound == 8);

  auto vd = locate("1.12.a.a", Parity::minus);
  CHECK(vd.on_circle_count == 4);
  CHECK(vd.oracle_on_circle == 4);
  CHECK(vd.note.find("dense scan") != std::string::npos);

  auto v4 = locate("4.26.a.a", Parity::minus);
  CHECK(v4.certified);
  CHECK(v4.on_circle_count == 22);

  CHECK_THROWS_AS(locate("7.4.a.a", Parity::minus), std::invalid_argument);
}

TEST_CASE("routes agree and the bookkeeping adds up") {
  for (const auto& f : load_corpus(fixture_dir())) {
    for (Parity par : {Parity::plus, Parity::minus}) {
      if (par == Parity::minus && f.weight() < 6) continue;
      PrecisionPolicy pol;
      LocatorOptions opt;
      opt.route = Route::both;
      auto v = count_on_circle(f, par, pol, opt);
      CAPTURE(f.label());
      CAPTURE(to_string(par));
      REQUIRE(v.oracle_on_circle.has_value());
      CHECK(v.on_circle_count == *v.oracle_on_circle);
      CHECK(v.on_circle_count + v.exceptional_upper_bound == v.degree);
      CHECK(v.on_circle_count == 2 * v.sign_changes + v.endpoint_plus + v.endpoint_minus);
      CHECK(v.on_circle_count <= v.degree);
      if (v.predicted && v.certified) CHECK(v.on_circle_count >= *v.predicted);
      if (v.certified && v.route != Route::oracle) CHECK(v.min_margin.has_value());
    }
  }
}

TEST_CASE("single routes") {
  auto m = locate("23.10.a.a", Parity::plus, Route::main_term);
  CHECK(m.route == Route::main_term);
  CHECK_FALSE(m.oracle_on_circle.has_value());
  CHECK(m.on_circle_count == 8);
  auto o = locate("23.10.a.a", Parity::plus, Route::oracle);
  CHECK(o.route == Route::oracle);
  CHECK(o.on_circle_count == 8);
  CHECK(o.certified);
  CHECK(parse_route("main") == Route::main_term);
  CHECK(parse_route("oracle") == Route::oracle);
  CHECK(parse_route("both") == Route::both);
  CHECK_THROWS(parse_route("neither"));
}

TEST_CASE("lattice samples carry certified signs") {
  PrecisionPolicy pol;
  auto q = build_q(fixture("2.40.a.a"), Parity::minus, pol);
  auto s = sign_sequence(q, 2048, true);
  int lattice = 0;
  for (const auto& x : s) {
    if (!x.lattice) continue;
    ++lattice;
    CHECK(x.sign != 0);
    CHECK(x.margin > 0);
  }
  CHECK(lattice == 16);
}
