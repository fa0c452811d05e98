#include "period_lens/period_poly.hpp"

#include <stdexcept>

namespace period_lens {

std::string to_string(PolyKind k) {
  switch (k) {
    case PolyKind::full: return "full";
    case PolyKind::even: return "even";
    case PolyKind::odd: return "odd";
    case PolyKind::p_plus: return "p_plus";
    case PolyKind::p_minus: return "p_minus";
    case PolyKind::q_plus: return "q_plus";
    case PolyKind::q_minus: return "q_minus";
  }
  return "full";
}

std::string to_string(Parity p) { return p == Parity::plus ? "plus" : "minus"; }

Parity parse_parity(const std::string& s) {
  if (s == "plus" || s == "+" || s == "even") return Parity::plus;
  if (s == "minus" || s == "-" || s == "odd") return Parity::minus;
  throw std::invalid_argument("parity must be plus or minus");
}

namespace {

PeriodPolynomial blank(const Newform& f, PolyKind kind, int degree, unsigned bits) {
  PeriodPolynomial p;
  p.kind = kind;
  p.level = f.level();
  p.weight = f.weight();
  p.fricke_sign = f.fricke_sign();
  p.coefficients = ComplexVector::Constant(degree + 1, Complex(0, 0));
  p.radii = RealVector::Constant(degree + 1, Real(0));
  p.bits = bits;
  return p;
}

const LValue& at(const std::vector<LValue>& L, int s) {
  if (s < 1 || s > static_cast<int>(L.size())) throw std::out_of_range("L-value index");
  return L[s - 1];
}

// (2 pi)^n / n!
Real taylor_weight(int n) {
  Real r(1), tp = 2 * pi_real();
  for (int i = 1; i <= n; ++i) r = r * tp / i;
  return r;
}

void put(PeriodPolynomial& p, int deg, const Real& w, int sign, const LValue& l) {
  p.coefficients(deg) = Complex(sign * w * l.value, Real(0));
  p.radii(deg) = w * l.radius + 4 * two_pow(-static_cast<long>(current_bits())) * abs(w * l.value);
}

Real factorial(int n) {
  Real r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

PeriodPolynomial build_full(const Newform& f, const std::vector<LValue>& L, unsigned bits) {
  PrecisionGuard g(bits);
  const int k = f.weight(), w = k - 2;
  auto p = blank(f, PolyKind::full, w, bits);
  for (int n = 0; n <= w; ++n) {
    const LValue& l = at(L, k - 1 - n);
    Real tw = taylor_weight(n);
    Complex in(1, 0);
    switch (n % 4) {
      case 1: in = Complex(0, 1); break;
      case 2: in = Complex(-1, 0); break;
      case 3: in = Complex(0, -1); break;
      default: break;
    }
    p.coefficients(n) = in * (tw * l.value);
    p.radii(n) = tw * l.radius + 4 * two_pow(-static_cast<long>(current_bits())) * abs(tw * l.value);
  }
  // -(k-2)! / (2 pi i)^{k-1}
  Complex ipow(1, 0);
  for (int i = 0; i < k - 1; ++i) ipow *= Complex(0, 1);
  p.r_scale = Complex(-factorial(w) / pow(2 * pi_real(), k - 1), 0) / ipow;
  return p;
}

PeriodPolynomial build_even(const Newform& f, const std::vector<LValue>& L, unsigned bits) {
  PrecisionGuard g(bits);
  const int w = f.weight() - 2;
  auto p = blank(f, PolyKind::p_plus, w, bits);
  for (int n = 0; n <= w / 2; ++n) put(p, 2 * n, taylor_weight(2 * n), n % 2 ? -1 : 1, at(L, w - 2 * n + 1));
  int sg = (w / 2) % 2 ? -1 : 1;
  p.r_scale = Complex(sg * factorial(w) / pow(2 * pi_real(), w + 1), 0);
  return p;
}

PeriodPolynomial build_odd(const Newform& f, const std::vector<LValue>& L, unsigned bits) {
  PrecisionGuard g(bits);
  const int w = f.weight() - 2;
  auto p = blank(f, PolyKind::p_minus, w - 1, bits);
  for (int n = 0; n <= w / 2 - 1; ++n) put(p, 2 * n + 1, taylor_weight(2 * n + 1), n % 2 ? -1 : 1, at(L, w - 2 * n));
  int sg = (w / 2) % 2 ? 1 : -1;
  p.r_scale = Complex(sg * factorial(w) / pow(2 * pi_real(), w + 1), 0);
  return p;
}

PeriodPolynomial build_p(const Newform& f, Parity parity, const std::vector<LValue>& L, unsigned bits) {
  return parity == Parity::plus ? build_even(f, L, bits) : build_odd(f, L, bits);
}

PeriodPolynomial build_q(const Newform& f, Parity parity, const std::vector<LValue>& L, unsigned bits) {
  PrecisionGuard g(bits);
  const int k = f.weight(), w = k - 2;
  const bool k2 = k % 4 == 2;
  if (parity == Parity::plus) {
    int top = k2 ? w / 4 - 1 : (w - 2) / 4;
    int deg = k2 ? w / 2 : 2 * top;
    auto q = blank(f, PolyKind::q_plus, deg, bits);
    for (int n = 0; n <= top; ++n) put(q, 2 * n, taylor_weight(2 * n), n % 2 ? -1 : 1, at(L, w - 2 * n + 1));
    if (k2) {
      // central value, halved
      put(q, w / 2, taylor_weight(w / 2) / 2, (w / 4) % 2 ? -1 : 1, at(L, (w + 2) / 2));
    }
    q.r_scale = build_even(f, L, bits).r_scale;
    return q;
  }
  int top = k2 ? w / 4 - 1 : (w - 6) / 4;
  int deg = k2 ? 2 * top + 1 : w / 2;
  if (deg < 0) deg = 0;
  auto q = blank(f, PolyKind::q_minus, deg, bits);
  for (int n = 0; n <= top; ++n)
    put(q, 2 * n + 1, taylor_weight(2 * n + 1), n % 2 ? -1 : 1, at(L, w - 2 * n));
  if (!k2) put(q, w / 2, taylor_weight(w / 2) / 2, ((w - 2) / 4) % 2 ? -1 : 1, at(L, (w + 2) / 2));
  q.r_scale = build_odd(f, L, bits).r_scale;
  return q;
}

PeriodPolynomial build_full(const Newform& f, const PrecisionPolicy& pol) {
  return build_full(f, l_value_table(f, pol), pol.working_bits);
}
PeriodPolynomial build_even(const Newform& f, const PrecisionPolicy& pol) {
  return build_even(f, l_value_table(f, pol), pol.working_bits);
}
PeriodPolynomial build_odd(const Newform& f, const PrecisionPolicy& pol) {
  return build_odd(f, l_value_table(f, pol), pol.working_bits);
}
PeriodPolynomial build_q(const Newform& f, Parity parity, const PrecisionPolicy& pol) {
  return build_q(f, parity, l_value_table(f, pol), pol.working_bits);
}

PeriodPolynomial materialize_r(const PeriodPolynomial& p) {
  if (p.kind != PolyKind::p_plus && p.kind != PolyKind::p_minus)
    throw std::invalid_argument("materialize_r expects p_plus or p_minus");
  PrecisionGuard g(p.bits);
  PeriodPolynomial r = p;
  r.kind = p.kind == PolyKind::p_plus ? PolyKind::even : PolyKind::odd;
  for (int i = 0; i <= r.degree(); ++i) {
    r.coefficients(i) = p.coefficients(i) * p.r_scale;
    r.radii(i) = p.radii(i) * abs(p.r_scale);
  }
  r.r_scale = Complex(1, 0);
  return r;
}

Evaluation evaluate_derivative(const PeriodPolynomial& p, const Complex& x, int j) {
  PrecisionGuard g(p.bits);
  Complex acc(0, 0);
  Real rad(0), mag(0), ax = abs(x);
  for (int i = p.degree(); i >= j; --i) {
    Real fall(1);
    for (int t = 0; t < j; ++t) fall *= (i - t);
    acc = acc * x + p.coefficients(i) * fall;
    rad = rad * ax + p.radii(i) * fall;
    mag = mag * ax + abs(p.coefficients(i)) * fall;
  }
  Real round = 4 * (p.degree() + 2) * two_pow(-static_cast<long>(current_bits())) * mag;
  return {acc, rad + round};
}

Evaluation evaluate(const PeriodPolynomial& p, const Complex& x) { return evaluate_derivative(p, x, 0); }

namespace {

Complex horner(const PeriodPolynomial& p, const Complex& x) {
  Complex acc(0, 0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coefficients(i);
  return acc;
}

}  // namespace

Complex reconstruct_from_q(const PeriodPolynomial& q, Parity parity, const Complex& x) {
  PrecisionGuard g(q.bits);
  const int N = q.level, w = q.weight - 2;
  const Real rootN = sqrt(Real(N));
  Complex lead = pow(x * rootN, w);
  Complex inv = Complex(1, 0) / (x * Real(N));
  int sg = parity == Parity::plus ? -q.fricke_sign : q.fricke_sign;
  return horner(q, x) + Real(sg) * lead * horner(q, inv);
}

Real functional_equation_residual(const PeriodPolynomial& p, int samples) {
  PrecisionGuard g(p.bits);
  const int N = p.level, w = p.weight - 2;
  const Real rootN = sqrt(Real(N));
  Real scale(0);
  for (int i = 0; i <= p.degree(); ++i) scale += abs(p.coefficients(i)) * pow(rootN, -i);
  if (scale == 0) return Real(0);
  Real worst(0);
  const Real eps(p.fricke_sign);
  for (int j = 0; j < samples; ++j) {
    Real th = 2 * pi_real() * (Real(j) + Real(0.5)) / samples;
    Complex x = Complex(cos(th), sin(th)) / rootN;
    Complex lead = pow(x * rootN, w);
    Complex inv = Complex(1, 0) / (x * Real(N));
    Complex res;
    switch (p.kind) {
      case PolyKind::full:
      case PolyKind::even:
      case PolyKind::p_plus:
        res = horner(p, x) + eps * lead * horner(p, -inv);
        break;
      case PolyKind::odd:
      case PolyKind::p_minus:
        res = horner(p, x) - eps * lead * horner(p, inv);
        break;
      default:
        throw std::invalid_argument("no period relation for q polynomials");
    }
    Real r = abs(res) / scale;
    if (r > worst) worst = r;
  }
  return worst;
}

}  // namespace period_lens
