#include "period_lens/lfunction.hpp"

#include <algorithm>
#include <limits>

namespace period_lens {

namespace {

Real factorial(int n) {
  Real r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Real infinity() { return std::numeric_limits<Real>::infinity(); }

// per-term bound b(n) >= |a(n)| (|t^s G(s, yt)| + |t^{s-k} G(k-s, y/t)|)
struct TermBound {
  int k;
  Real c;      // 2 pi / sqrt N times min(t, 1/t)
  Real tpow;   // max(t,1/t)^k
  Real crude;  // e (k-2)!
  int n0;      // first n with c n >= max(2(k-2), 1)

  TermBound(int level, int weight, const Real& t) : k(weight) {
    Real tm = t < 1 ? Real(1) / t : t;
    c = 2 * pi_real() / sqrt(Real(level)) / tm;
    tpow = pow(tm, weight);
    crude = exp(Real(1)) * factorial(weight - 2);
    Real need = std::max(2 * (weight - 2), 1);
    n0 = static_cast<int>(ceil(need / c).convert_to<double>());
    if (n0 < 1) n0 = 1;
  }

  // valid only when c n >= 1
  Real at(int n) const {
    Real z = c * n;
    Real g = n >= n0 ? 2 * exp(-z) / z : crude * exp(-z);
    // |a(n)| <= d(n) n^{(k-1)/2} <= 2 n^{k/2}
    return 2 * pow(Real(n), Real(k) / 2) * 2 * tpow * g;
  }

  Real ratio(int n) const {
    return pow(Real(n + 1) / n, Real(k) / 2 - 1) * exp(-c);
  }
};

}  // namespace

Real truncation_tail(int level, int weight, int M, const Real& t) {
  TermBound b(level, weight, t);
  int n = M + 1;
  if (b.c * n < 1) return infinity();
  Real sum(0);
  const Real stop = (1 + exp(-b.c)) / 2;
  for (;; ++n) {
    if (n >= b.n0) {
      Real rho = b.ratio(n);
      if (rho <= stop) return sum + b.at(n) / (1 - rho);
    }
    sum += b.at(n);
  }
}

CoefficientBudget coefficient_budget(int level, int weight, unsigned bits, const Real& t) {
  PrecisionGuard g(std::max(bits, 64u) + 32);
  Real eps = two_pow(-static_cast<long>(bits));
  int hi = 1;
  while (!(truncation_tail(level, weight, hi, t) < eps)) hi *= 2;
  int lo = hi / 2;  // tail(lo) >= eps unless lo == 0
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (truncation_tail(level, weight, mid, t) < eps)
      hi = mid;
    else
      lo = mid;
  }
  return {hi, bits, truncation_tail(level, weight, hi, t)};
}

std::vector<LValue> lambda_table(const Newform& f, const PrecisionPolicy& pol, const Real& t_in) {
  pol.validate();
  PrecisionGuard g(pol.working_bits);
  const int k = f.weight();
  const Real t(t_in);
  CoefficientBudget bud = coefficient_budget(f.level(), k, pol.working_bits, t);
  if (bud.required > f.count()) throw InsufficientCoefficients(bud.required, f.count());
  const int M = bud.required;
  RealVector a = f.coefficients(M);

  const Real twopi_over_rootN = 2 * pi_real() / sqrt(Real(f.level()));
  std::vector<Real> fact(k);
  fact[0] = 1;
  for (int i = 1; i < k; ++i) fact[i] = fact[i - 1] * i;

  // G[s] = z^{-s} Gamma(s, z) for s = 1..k-1
  auto fill_g = [&](const Real& z, std::vector<Real>& G) {
    Real ez = exp(-z);
    Real partial(0), zj(1), zinv = Real(1) / z, zneg(1);
    for (int s = 1; s < k; ++s) {
      partial += zj / fact[s - 1];
      zj *= z;
      zneg *= zinv;
      G[s] = fact[s - 1] * zneg * ez * partial;
    }
  };

  std::vector<Real> sum(k, Real(0)), absum(k, Real(0));
  std::vector<Real> G1(k), G2(k), tp(k + 1);
  tp[0] = 1;
  for (int i = 1; i <= k; ++i) tp[i] = tp[i - 1] * t;
  const int eps = f.fe_sign();
  for (int n = 1; n <= M; ++n) {
    if (a(n - 1) == 0) continue;
    Real y = twopi_over_rootN * n;
    fill_g(y * t, G1);
    fill_g(y / t, G2);
    for (int s = 1; s < k; ++s) {
      Real t1 = tp[s] * G1[s];
      Real t2 = G2[k - s] / tp[k - s];
      Real term = a(n - 1) * (t1 + eps * t2);
      sum[s] += term;
      absum[s] += abs(a(n - 1)) * (t1 + t2);
    }
  }

  Real round = (8 * k + 64) * two_pow(-static_cast<long>(current_bits()));
  Real coef_err = f.coefficient_relative_error();
  std::vector<LValue> out;
  for (int s = 1; s < k; ++s) {
    LValue v;
    v.s = s;
    v.value = sum[s];
    v.radius = bud.tail + (round + coef_err) * absum[s];
    v.method = "completed";
    out.push_back(v);
  }
  return out;
}

LValue lambda_completed(const Newform& f, int s, const PrecisionPolicy& pol, const Real& t) {
  if (s < 1 || s > f.weight() - 1) throw std::invalid_argument("s outside 1..k-1");
  return lambda_table(f, pol, t)[s - 1];
}

namespace {

std::vector<LValue> l_table_once(const Newform& f, const PrecisionPolicy& pol) {
  auto lam = lambda_table(f, pol);
  PrecisionGuard g(pol.working_bits);
  const Real base = 2 * pi_real() / sqrt(Real(f.level()));
  Real scale(1), gam(1);
  Real round = 16 * two_pow(-static_cast<long>(current_bits()));
  std::vector<LValue> out;
  for (auto& v : lam) {
    scale *= base;
    if (v.s > 1) gam *= (v.s - 1);
    LValue l;
    l.s = v.s;
    l.value = scale * v.value / gam;
    l.radius = scale * v.radius / gam + round * abs(l.value);
    l.method = "completed";
    out.push_back(l);
  }
  return out;
}

}  // namespace

bool radius_within_target(const LValue& v, const PrecisionPolicy& pol) {
  PrecisionGuard g(pol.working_bits);
  Real lim = two_pow(-static_cast<long>(pol.working_bits / 2));
  Real mag = abs(v.value) > 1 ? abs(v.value) : Real(1);
  return v.radius < lim * mag;
}

std::vector<LValue> l_value_table(const Newform& f, const PrecisionPolicy& pol) {
  auto out = l_table_once(f, pol);
  bool ok = std::all_of(out.begin(), out.end(), [&](const LValue& v) { return radius_within_target(v, pol); });
  if (ok) return out;
  auto up = pol.escalated();
  out = l_table_once(f, up);
  for (const auto& v : out)
    if (!radius_within_target(v, up))
      throw std::runtime_error("L-value radius above target after escalation for " + f.label());
  return out;
}

LValue l_value(const Newform& f, int s, const PrecisionPolicy& pol) {
  if (s < 1 || s > f.weight() - 1) throw std::invalid_argument("s outside 1..k-1");
  return l_value_table(f, pol)[s - 1];
}

Real divisor_tail(const Real& sigma, int M) {
  if (!(sigma > 1)) return infinity();
  const Real sm1 = sigma - 1;
  const Real zeta_bound = sigma / sm1;
  Real sum(0);
  for (int a = 1; a <= M; ++a) {
    Real b0(M / a + 1);
    sum += pow(Real(a), -sigma) * (pow(b0, -sigma) + pow(b0, -sm1) / sm1);
  }
  return sum + zeta_bound * pow(Real(M), -sm1) / sm1;
}

LValue l_value_direct(const Newform& f, int s, const PrecisionPolicy& pol, int max_terms) {
  pol.validate();
  const int k = f.weight();
  if (4 * s < 3 * k) throw std::invalid_argument("direct evaluation needs s >= 3k/4");
  PrecisionGuard g(pol.working_bits);
  int M = max_terms > 0 ? std::min(max_terms, f.count()) : f.count();
  RealVector a = f.coefficients(M);
  Real sum(0), absum(0);
  for (int n = 1; n <= M; ++n) {
    Real term = a(n - 1) / pow(Real(n), s);
    sum += term;
    absum += abs(term);
  }
  Real sigma = Real(s) - Real(k - 1) / 2;
  LValue v;
  v.s = s;
  v.value = sum;
  v.radius = divisor_tail(sigma, M) +
             (16 * two_pow(-static_cast<long>(current_bits())) + f.coefficient_relative_error()) * absum;
  v.method = "direct";
  return v;
}

SignCheck functional_equation_check(const Newform& f, const PrecisionPolicy& pol) {
  const Real t2 = Real(9) / 8;
  auto a = lambda_table(f, pol);
  auto b = lambda_table(f, pol, t2);
  PrecisionGuard g(pol.working_bits);
  SignCheck out;
  out.worst_discrepancy = 0;
  for (int s : {1, f.weight() / 2}) {
    const auto& x = a[s - 1];
    const auto& y = b[s - 1];
    Real d = abs(x.value - y.value);
    Real rad = x.radius + y.radius;
    Real q = rad > 0 ? d / rad : d;
    if (q > out.worst_discrepancy) out.worst_discrepancy = q;
  }
  out.consistent = out.worst_discrepancy <= 1;
  return out;
}

}  // namespace period_lens
