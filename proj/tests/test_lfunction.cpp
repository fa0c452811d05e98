#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common.hpp"
#include "period_lens/error_bounds.hpp"
#include "period_lens/lfunction.hpp"

using namespace period_lens;

namespace {

// reference values computed independently with PARI/GP (lfun, 40 digits)
const char* delta_l6 = "0.792122838646030569355944890486735838";
const char* delta_l1 = "0.0374412812685155417387703158411808705";
const char* f7_l[3] = {"0.285051661981436820679053299066647375", "0.599566157968617566581061167075228208",
                       "0.803813467894235728139591323244341148"};

void check_close(const LValue& v, const char* ref, double tol) {
  Real r = parse_real(ref);
  CAPTURE(v.s);
  CHECK(d(abs(v.value - r)) < tol);
  // the certified radius must cover the truth up to the reference's own accuracy
  CHECK(d(abs(v.value - r)) <= d(v.radius) + 1e-36);
}

// tau(1..M) from q (prod (1 - q^n)^3)^8 with Jacobi's sparse series for the
// cube; arithmetic wraps mod 2^128, exact because |tau(n)| < 2^100 here
std::vector<__int128> tau_jacobi(int M) {
  using U = unsigned __int128;
  std::vector<std::pair<int, U>> cube;
  for (long j = 0; j * (j + 1) / 2 < M; ++j)
    cube.emplace_back(static_cast<int>(j * (j + 1) / 2), static_cast<U>(static_cast<__int128>((j % 2 ? -1 : 1) * (2 * j + 1))));
  std::vector<U> acc(M, 0);
  acc[0] = 1;
  for (int r = 0; r < 8; ++r) {
    std::vector<U> next(M, 0);
    for (int i = 0; i < M; ++i) {
      if (acc[i] == 0) continue;
      for (const auto& [e, c] : cube) {
        if (i + e >= M) break;
        next[i + e] += acc[i] * c;
      }
    }
    acc.swap(next);
  }
  return std::vector<__int128>(acc.begin(), acc.end());
}

std::string i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  } while (u);
  return neg ? "-" + s : s;
}

Newform truncated(const Newform& f, int n) {
  NewformData t = f.data();
  t.an.resize(n);
  return Newform(t);
}

}  // namespace

TEST_CASE("functional equation symmetry of the completed values") {
  PrecisionPolicy pol;
  for (const char* label : {"1.12.a.a", "7.4.a.a", "4.26.a.a", "17.6.a.c"}) {
    Newform f = fixture(label);
    PrecisionGuard g(pol.working_bits);
    auto t = lambda_table(f, pol);
    const int k = f.weight();
    REQUIRE(static_cast<int>(t.size()) == k - 1);
    for (int s = 1; s <= k - 1; ++s) {
      CAPTURE(label);
      CAPTURE(s);
      Real diff = abs(t[s - 1].value - f.fe_sign() * t[k - s - 1].value);
      CHECK(diff <= t[s - 1].radius + t[k - s - 1].radius);
      CHECK(radius_within_target(t[s - 1], pol));
    }
  }
}

TEST_CASE("a second splitting parameter gives the same values") {
  PrecisionPolicy pol;
  Newform f = fixture("7.4.a.a");
  PrecisionGuard g(pol.working_bits);
  for (int s = 1; s <= 3; ++s) {
    auto a = lambda_completed(f, s, pol), b = lambda_completed(f, s, pol, Real(6) / 5);
    CHECK(abs(a.value - b.value) <= a.radius + b.radius);
  }
}

TEST_CASE("reference values") {
  PrecisionPolicy pol;
  Newform delta = fixture("1.12.a.a");
  Newform f7 = fixture("7.4.a.a");
  PrecisionGuard g(pol.working_bits);
  check_close(l_value(delta, 6, pol), delta_l6, 1e-35);
  check_close(l_value(delta, 1, pol), delta_l1, 1e-35);
  for (int s = 1; s <= 3; ++s) check_close(l_value(f7, s, pol), f7_l[s - 1], 1e-35);
}

TEST_CASE("completed and direct evaluation agree in the overlap") {
  PrecisionPolicy pol;
  Newform delta = fixture("1.12.a.a");
  PrecisionGuard g(pol.working_bits);
  for (int s = 9; s <= 11; ++s) {
    auto a = l_value(delta, s, pol), b = l_value_direct(delta, s, pol);
    CAPTURE(s);
    CHECK(b.method == "direct");
    CHECK(abs(a.value - b.value) <= a.radius + b.radius);
  }
  // a long tau list brings the Dirichlet tail at s = 11 below 1e-25
  NewformData t = delta.data();
  auto tau = tau_jacobi(120000);
  t.an.clear();
  for (auto v : tau) t.an.push_back(i128(v));
  Newform longer(t);
  auto a = l_value(delta, 11, pol), b = l_value_direct(longer, 11, pol);
  CHECK(d(abs(a.value - b.value) / a.value) < 1e-25);
  CHECK(abs(a.value - b.value) <= a.radius + b.radius);
}

TEST_CASE("direct sum domain") {
  PrecisionPolicy pol;
  Newform delta = fixture("1.12.a.a");
  PrecisionGuard g(pol.working_bits);
  CHECK_NOTHROW(l_value_direct(delta, 9, pol));
  CHECK_THROWS_AS(l_value_direct(delta, 8, pol), std::invalid_argument);
  // beyond the critical strip the Euler product pins L close to 1
  auto far = l_value_direct(delta, 30, pol);
  CHECK(d(abs(far.value - 1)) < d(growth_bound_near_one(12)));
  CHECK(d(abs(far.value - 1)) < 1e-6);
}

TEST_CASE("coefficient budget at the largest tabulated level") {
  PrecisionGuard g(256);
  auto b = coefficient_budget(455, 4, 128);
  CHECK(b.required > 0);
  CHECK(b.required < 10 * std::sqrt(455.0) * 128);
  CHECK(b.tail < two_pow(-128));
  CHECK(truncation_tail(455, 4, b.required) <= b.tail);
  CHECK(truncation_tail(455, 4, b.required - 1) >= truncation_tail(455, 4, b.required));
}

TEST_CASE("divisor tail decreases") {
  PrecisionGuard g(128);
  Real prev = divisor_tail(Real(2), 10);
  for (int M : {20, 50, 100, 1000}) {
    Real t = divisor_tail(Real(2), M);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(divisor_tail(Real(3), 100) < divisor_tail(Real(2), 100));
  // direct check against a long partial sum for sigma = 3, M = 50
  auto dc = divisor_counts(200000);
  Real s = 0;
  for (int n = 51; n <= 200000; ++n) s += Real(dc[n]) / pow(Real(n), 3);
  CHECK(s < divisor_tail(Real(3), 50));
}

TEST_CASE("values in the right half of the strip stay below the growth bound") {
  PrecisionPolicy pol;
  for (const char* label : {"1.12.a.a", "7.4.a.a", "17.6.a.c"}) {
    Newform f = fixture(label);
    const int k = f.weight();
    for (int sigma = (k + 1) / 2; sigma <= k - 1; ++sigma) {
      auto r = growth_selfcheck(f, sigma, 2, pol);
      CAPTURE(label);
      CAPTURE(sigma);
      CHECK(r.holds);
    }
  }
}

TEST_CASE("wrong Fricke sign is detected") {
  PrecisionPolicy pol;
  for (const char* label : {"7.4.a.a", "17.6.a.c", "1.12.a.a"}) {
    Newform f = fixture(label);
    CHECK(functional_equation_check(f, pol).consistent);
    if (f.level() <= 4) continue;  // the sign is forced there
    NewformData t = f.data();
    t.fricke_sign = -t.fricke_sign;
    t.fe_sign = -t.fe_sign;
    auto c = functional_equation_check(Newform(t), pol);
    CAPTURE(label);
    CHECK_FALSE(c.consistent);
    CHECK(c.worst_discrepancy > 1);
  }
}

TEST_CASE("too few coefficients") {
  PrecisionPolicy pol;
  Newform f = truncated(fixture("7.4.a.a"), 10);
  PrecisionGuard g(pol.working_bits);
  CHECK_THROWS_AS(l_value(f, 1, pol), InsufficientCoefficients);
  CHECK_THROWS_AS(functional_equation_check(f, pol), InsufficientCoefficients);
  try {
    l_value(f, 1, pol);
  } catch (const InsufficientCoefficients& e) {
    CHECK(e.required > 10);
    CHECK(e.available == 10);
  }
}

TEST_CASE("radii meet the target precision") {
  PrecisionPolicy pol;
  for (const char* label : {"1.12.a.a", "4.26.a.a", "455.4.a.a"}) {
    Newform f = fixture(label);
    PrecisionGuard g(pol.working_bits);
    for (const auto& v : l_value_table(f, pol)) {
      CAPTURE(label);
      CAPTURE(v.s);
      CHECK(v.radius >= 0);
      CHECK(radius_within_target(v, pol));
    }
  }
}
