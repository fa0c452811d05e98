#include "period_lens/root_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace period_lens {

std::string to_string(RootClass c) {
  switch (c) {
    case RootClass::on_circle: return "on_circle";
    case RootClass::exceptional: return "exceptional";
    case RootClass::origin: return "origin";
  }
  return "exceptional";
}

namespace {

struct Horner {
  Complex p, dp;
  Real mag;  // sum |c_i| |z|^i
};

Horner horner(const std::vector<Complex>& c, const Complex& z) {
  Horner h{Complex(0, 0), Complex(0, 0), Real(0)};
  Real az = abs(z);
  for (std::size_t i = c.size(); i-- > 0;) {
    h.dp = h.dp * z + h.p;
    h.p = h.p * z + c[i];
    h.mag = h.mag * az + abs(c[i]);
  }
  return h;
}

// divide by (X - r) in place; remainder dropped
void deflate(std::vector<Complex>& c, const Complex& r) {
  std::vector<Complex> q(c.size() - 1);
  Complex carry(0, 0);
  for (std::size_t i = c.size(); i-- > 1;) {
    carry = carry * r + c[i];
    q[i - 1] = carry;
  }
  c.swap(q);
}

bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z, int max_iter, const Real& eps) {
  const std::size_t n = z.size();
  std::vector<char> done(n, 0);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Horner h = horner(c, z[i]);
      if (abs(h.p) <= eps * h.mag) {
        done[i] = 1;
        continue;
      }
      Complex ratio = h.p / h.dp;
      Complex s(0, 0);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += Complex(1, 0) / (z[i] - z[j]);
      Complex step = ratio / (Complex(1, 0) - ratio * s);
      z[i] -= step;
      if (abs(step) <= eps * (1 + abs(z[i])))
        done[i] = 1;
      else
        all = false;
    }
    if (all && std::all_of(done.begin(), done.end(), [](char d) { return d != 0; })) return true;
  }
  return false;
}

void pair_conjugates(std::vector<Root>& roots, const Real& tol) {
  for (auto& r : roots) r.pair = -1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].pair >= 0) continue;
    Complex target = conj(roots[i].value);
    Real best = -1;
    std::size_t arg = i;
    for (std::size_t j = i; j < roots.size(); ++j) {
      if (roots[j].pair >= 0) continue;
      if (j == i && abs(roots[i].value.imag()) > tol) continue;
      Real d = abs(roots[j].value - target);
      if (best < 0 || d < best) {
        best = d;
        arg = j;
      }
    }
    if (best >= 0 && best <= tol * (1 + abs(target))) {
      roots[i].pair = static_cast<int>(arg);
      roots[arg].pair = static_cast<int>(i);
    }
  }
}

RootSet solve(const ComplexVector& coeffs, const RealVector& radii, int level, unsigned bits, unsigned base_bits) {
  PrecisionGuard g(bits);
  RootSet rs;
  rs.level = level;
  rs.bits = bits;
  std::vector<Complex> c(coeffs.data(), coeffs.data() + coeffs.size());
  for (auto& x : c) x = Complex(Real(x.real()), Real(x.imag()));  // re-round at this precision
  while (!c.empty() && c.back() == Complex(0, 0)) c.pop_back();
  if (c.size() < 2) throw std::invalid_argument("polynomial has no roots (constant or identically zero)");

  const Real rootN = sqrt(Real(level));
  const Real eps = two_pow(-static_cast<long>(bits) + 8);

  // structural zeros at the origin
  std::size_t lead_zero = 0;
  while (c[lead_zero] == Complex(0, 0)) ++lead_zero;
  for (std::size_t i = 0; i < lead_zero; ++i) {
    Root r;
    r.value = Complex(0, 0);
    r.residual = 0;
    r.deflated = true;
    rs.roots.push_back(r);
  }
  c.erase(c.begin(), c.begin() + static_cast<long>(lead_zero));

  // endpoint roots, possibly repeated
  const Real near = two_pow(-static_cast<long>(base_bits) / 4);
  for (int sgn : {1, -1}) {
    Complex e(Real(sgn) / rootN, 0);
    while (c.size() > 1) {
      Horner h = horner(c, e);
      if (abs(h.p) >= near * h.mag) break;
      Root r;
      r.value = e;
      r.residual = abs(h.p) / h.mag;
      r.deflated = true;
      rs.roots.push_back(r);
      deflate(c, e);
    }
  }

  const std::size_t n = c.size() - 1;
  std::vector<Complex> z(n);
  if (n > 0) {
    // initial guesses on a circle of the geometric-mean root radius
    Real R = pow(abs(c[0]) / abs(c[n]), Real(1) / n);
    if (!(R > 0)) R = 1 / rootN;
    const Real tp = 2 * pi_real();
    for (std::size_t i = 0; i < n; ++i) {
      Real ang = tp * (Real(i) + Real(1) / 4) / n + Real(1) / 10;
      z[i] = Complex(R * cos(ang), R * sin(ang));
    }
    rs.converged = aberth(c, z, 800, eps);
  } else {
    rs.converged = true;
  }

  // residuals against the undeflated polynomial, Newton polish first
  std::vector<Complex> full(coeffs.data(), coeffs.data() + coeffs.size());
  while (!full.empty() && full.back() == Complex(0, 0)) full.pop_back();
  rs.max_residual = 0;
  for (auto& zi : z) {
    for (int it = 0; it < 3; ++it) {
      Horner h = horner(full, zi);
      if (h.dp == Complex(0, 0) || abs(h.p) <= eps * h.mag) break;
      zi -= h.p / h.dp;
    }
    Horner h = horner(full, zi);
    Root r;
    r.value = zi;
    r.residual = h.mag == 0 ? Real(0) : abs(h.p) / h.mag;
    if (r.residual > rs.max_residual) rs.max_residual = r.residual;
    rs.roots.push_back(r);
  }

  // tolerance: first-order root perturbation from the coefficient radii,
  // measured on the circle scale, floored at 1e-18
  Real tol = Real(1) / Real("1e18");
  for (auto& r : rs.roots) {
    if (r.deflated) continue;
    Horner h = horner(full, r.value);
    Real pert(0), az = abs(r.value);
    for (int i = static_cast<int>(radii.size()) - 1; i >= 0; --i) pert = pert * az + radii(i);
    if (h.dp == Complex(0, 0)) continue;
    Real t = pert / abs(h.dp) * rootN;
    if (t > tol) tol = t;
  }
  rs.tol = tol;
  classify(rs, tol);
  return rs;
}

}  // namespace

RootSet all_roots(const ComplexVector& coeffs, const RealVector& radii, int level, const PrecisionPolicy& pol) {
  pol.validate();
  // escalate on stagnation or an uncertified residual
  unsigned bits = pol.working_bits;
  for (int attempt = 0; attempt < 3; ++attempt, bits *= 2) {
    RootSet rs = solve(coeffs, radii, level, bits, pol.working_bits);
    PrecisionGuard g(bits);
    if (rs.converged && rs.max_residual < two_pow(-static_cast<long>(pol.working_bits) / 2)) return rs;
    if (attempt == 2) return rs;
  }
  return solve(coeffs, radii, level, bits, pol.working_bits);
}

RootSet all_roots(const PeriodPolynomial& p, const PrecisionPolicy& pol) {
  return all_roots(p.coefficients, p.radii, p.level, pol);
}

RootCounts classify(RootSet& rs, const Real& tol) {
  PrecisionGuard g(rs.bits);
  rs.tol = tol;
  const Real rootN = sqrt(Real(rs.level));
  for (auto& r : rs.roots) {
    Real az = abs(r.value);
    Real dev = abs(az * rootN - 1);
    r.borderline = false;
    if (az == 0 || az * rootN < tol) {
      r.cls = RootClass::origin;
    } else if (dev < tol) {
      r.cls = RootClass::on_circle;
      r.borderline = dev * 10 > tol;
    } else {
      r.cls = RootClass::exceptional;
      r.borderline = dev < 10 * tol;
    }
  }
  pair_conjugates(rs.roots, two_pow(-static_cast<long>(rs.bits) / 4));
  return counts(rs);
}

RootCounts counts(const RootSet& rs) {
  RootCounts c;
  for (const auto& r : rs.roots) {
    if (r.cls == RootClass::on_circle) ++c.on_circle;
    if (r.cls == RootClass::exceptional) ++c.exceptional;
    if (r.cls == RootClass::origin) ++c.origin;
    if (r.borderline) ++c.borderline;
  }
  return c;
}

VietaCheck vieta_check(const RootSet& rs, const ComplexVector& coeffs) {
  PrecisionGuard g(rs.bits);
  int n = static_cast<int>(coeffs.size()) - 1;
  while (n > 0 && coeffs(n) == Complex(0, 0)) --n;
  if (n != rs.degree()) throw std::invalid_argument("root count does not match degree");
  VietaCheck v;
  Complex sum(0, 0), prod(1, 0);
  Real scale(0);
  for (const auto& r : rs.roots) {
    sum += r.value;
    prod *= r.value;
    scale += abs(r.value);
  }
  Complex want_sum = -coeffs(n - 1) / coeffs(n);
  v.sum_error = abs(sum - want_sum) / (scale + abs(want_sum) + 1);
  v.product_error = 0;
  if (coeffs(0) != Complex(0, 0)) {
    Complex want_prod = coeffs(0) / coeffs(n);
    if (n % 2) want_prod = -want_prod;
    v.product_error = abs(prod - want_prod) / abs(want_prod);
  }
  return v;
}

Real inversion_distance(const RootSet& rs, int sign) {
  PrecisionGuard g(rs.bits);
  std::vector<Complex> pts;
  for (const auto& r : rs.roots)
    if (r.cls != RootClass::origin) pts.push_back(r.value);
  std::vector<char> used(pts.size(), 0);
  Real worst(0);
  const Real N(rs.level);
  for (const auto& z : pts) {
    Complex img = Complex(Real(sign), 0) / (z * N);
    Real best = -1;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (used[j]) continue;
      Real d = abs(pts[j] - img);
      if (best < 0 || d < best) {
        best = d;
        arg = j;
      }
    }
    if (best < 0) return Real(1);
    used[arg] = 1;
    if (best > worst) worst = best;
  }
  return worst;
}

}  // namespace period_lens
