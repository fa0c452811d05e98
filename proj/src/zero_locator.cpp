#include "period_lens/zero_locator.hpp"

#include "period_lens/error_bounds.hpp"
#include "period_lens/golden.hpp"
#include "period_lens/main_term.hpp"

#include <algorithm>
#include <stdexcept>

namespace period_lens {

std::string to_string(Route r) {
  switch (r) {
    case Route::main_term: return "main_term";
    case Route::oracle: return "oracle";
    case Route::both: return "both";
  }
  return "main_term";
}

Route parse_route(const std::string& s) {
  if (s == "main" || s == "main_term") return Route::main_term;
  if (s == "oracle") return Route::oracle;
  if (s == "both") return Route::both;
  throw std::invalid_argument("route must be main, oracle or both");
}

bool target_uses_imag(Parity parity, int fricke_sign) {
  return (parity == Parity::plus) == (fricke_sign == 1);
}

namespace {

Parity parity_of(const PeriodPolynomial& q) {
  if (q.kind == PolyKind::q_plus) return Parity::plus;
  if (q.kind == PolyKind::q_minus) return Parity::minus;
  throw std::invalid_argument("expected a q polynomial");
}

}  // namespace

TargetValue target_function(const PeriodPolynomial& q, const Real& theta) {
  const Parity parity = parity_of(q);
  PrecisionGuard g(q.bits);
  const int m = (q.weight - 2) / 2;
  const Real rootN = sqrt(Real(q.level));
  Complex xbar(cos(theta) / rootN, -sin(theta) / rootN);
  Evaluation ev = evaluate(q, xbar);
  Real mt = m * theta;
  Complex z = Complex(cos(mt), sin(mt)) * ev.value;
  TargetValue t;
  t.value = target_uses_imag(parity, q.fricke_sign) ? z.imag() : z.real();
  t.radius = ev.radius + 8 * two_pow(-static_cast<long>(q.bits)) * abs(z);
  return t;
}

EndpointMultiplicity endpoint_multiplicity(const PeriodPolynomial& p, const PeriodPolynomial* recheck) {
  if (p.kind != PolyKind::p_plus && p.kind != PolyKind::p_minus)
    throw std::invalid_argument("endpoint multiplicity expects a p polynomial");
  auto mult = [](const PeriodPolynomial& poly, int sgn, bool& conclusive) {
    PrecisionGuard g(poly.bits);
    const Real e = Real(sgn) / sqrt(Real(poly.level));
    const Real near = two_pow(-static_cast<long>(poly.bits) / 4);
    int count = 0;
    for (int j = 0; j <= poly.degree(); ++j) {
      Evaluation ev = evaluate_derivative(poly, Complex(e, 0), j);
      Real norm(0);
      for (int i = j; i <= poly.degree(); ++i) {
        Real fall(1);
        for (int t = 0; t < j; ++t) fall *= i - t;
        norm += abs(poly.coefficients(i)) * fall * pow(abs(e), i - j);
      }
      Real v = abs(ev.value);
      if (v <= ev.radius || v < near * norm) {
        ++count;
        continue;
      }
      break;
    }
    if (count > poly.degree()) conclusive = false;
    return count;
  };
  EndpointMultiplicity em;
  em.at_plus = mult(p, 1, em.conclusive);
  em.at_minus = mult(p, -1, em.conclusive);
  if (recheck && (em.at_plus > 0 || em.at_minus > 0)) {
    bool ok = true;
    int a = mult(*recheck, 1, ok), b = mult(*recheck, -1, ok);
    if (!ok || a != em.at_plus || b != em.at_minus) {
      em.conclusive = false;
      em.at_plus = a;
      em.at_minus = b;
    }
  }
  return em;
}

std::optional<int> predicted_count(int N, int k, int eps, Parity parity) {
  (void)eps;  // the published statements do not depend on the sign
  if (k < 4 || k % 2) return std::nullopt;
  const int m = (k - 2) / 2;
  if (parity == Parity::plus) {
    if (N >= 17) {
      auto d = golden::d_value(N, parity);
      auto kk = golden::k_value(N, parity);
      if (d && kk && k >= std::max(*d, *kk)) return 2 * m;
      return std::nullopt;
    }
    auto row = golden::exceptional_row(N, parity);
    if (row && k >= row->first) return 2 * m - row->second;
    return std::nullopt;
  }
  if (N >= 5) {
    auto d = golden::d_value(N, parity);
    auto kk = golden::k_value(N, parity);
    if (d && kk && k >= std::max(*d, *kk)) return 2 * m - 2;
    return std::nullopt;
  }
  auto row = golden::exceptional_row(N, parity);
  if (row && k >= row->first) return 2 * m - 1 - row->second;
  return std::nullopt;
}

std::vector<SignSample> sign_sequence(const PeriodPolynomial& q, int scan_points, bool with_lattice) {
  const Parity parity = parity_of(q);
  PrecisionGuard g(q.bits);
  const int m = (q.weight - 2) / 2;
  const Real pi = pi_real();
  const bool imag = target_uses_imag(parity, q.fricke_sign);
  std::vector<SignSample> out;

  if (with_lattice) {
    ArgumentFunction<Real> A(q.level, parity);
    const Real phi0 = A.phase(m, Real(0)), phi1 = A.phase(m, pi);
    const Real offset = imag ? pi / 2 : Real(0);
    const Real tol = two_pow(-60);
    const Real width = two_pow(-static_cast<long>(q.bits) / 4);
    auto solve = [&](const Real& target) {
      Real lo(0), hi(pi);
      while (hi - lo > width) {
        Real mid = (lo + hi) / 2;
        (A.phase(m, mid) < target ? lo : hi) = mid;
      }
      return (lo + hi) / 2;
    };
    std::vector<std::pair<Real, Real>> pts;  // (phase, theta)
    Real j0 = floor((phi0 - offset) / pi + tol) + 1;
    for (Real L = offset + j0 * pi; L < phi1 - tol; L += pi) pts.emplace_back(L, solve(L));
    auto on_lattice = [&](const Real& v) {
      Real t = (v - offset) / pi;
      return abs(t - round(t)) < tol;
    };
    // an endpoint on the lattice is a sign sample itself unless the radius
    // vanishes there; then the quarter point next to it stands in
    if (on_lattice(phi0))
      pts.insert(pts.begin(), A.singular_endpoints() ? std::make_pair(phi0 + pi / 4, solve(phi0 + pi / 4))
                                                     : std::make_pair(phi0, Real(0)));
    if (on_lattice(phi1))
      pts.push_back(A.singular_endpoints() ? std::make_pair(phi1 - pi / 4, solve(phi1 - pi / 4)) : std::make_pair(phi1, pi));
    for (const auto& [ph, th] : pts) {
      SignSample s;
      s.theta = th;
      s.phase = ph;
      s.lattice = true;
      out.push_back(s);
    }
  }
  for (int i = 1; i <= scan_points; ++i) {
    SignSample s;
    s.theta = pi * i / (scan_points + 1);
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const SignSample& a, const SignSample& b) { return a.theta < b.theta; });
  for (auto& s : out) {
    TargetValue t = target_function(q, s.theta);
    s.value = t.value;
    s.radius = t.radius;
    s.margin = abs(t.value) - t.radius;
    s.sign = s.margin > 0 ? (t.value > 0 ? 1 : -1) : 0;
  }
  return out;
}

ZeroVerdict count_on_circle(const Newform& f, Parity parity, const PrecisionPolicy& pol, const LocatorOptions& opt) {
  pol.validate();
  if (f.weight() < (parity == Parity::plus ? 4 : 6))
    throw std::invalid_argument("weight too small for this parity");
  ZeroVerdict v;
  v.label = f.label();
  v.parity = parity;
  v.route = opt.route;
  v.predicted = predicted_count(f.level(), f.weight(), f.fricke_sign(), parity);

  const auto L = l_value_table(f, pol);
  PrecisionGuard g(pol.working_bits);
  const PeriodPolynomial p = build_p(f, parity, L, pol.working_bits);
  const PeriodPolynomial q = build_q(f, parity, L, pol.working_bits);
  v.degree = p.degree();

  bool zero = true;
  for (int i = 0; i <= p.degree(); ++i)
    if (abs(p.coefficients(i)) > p.radii(i) + two_pow(-static_cast<long>(pol.working_bits) / 2)) zero = false;
  if (zero) {
    v.degenerate = true;
    v.note = "polynomial vanishes identically within its radii";
    v.exceptional_upper_bound = 0;
    v.on_circle_count = 0;
    v.degree = 0;
    return v;
  }

  EndpointMultiplicity em;
  {
    std::optional<PeriodPolynomial> hi;
    em = endpoint_multiplicity(p);
    if (opt.recheck_endpoints && (em.at_plus > 0 || em.at_minus > 0)) {
      PrecisionPolicy up = pol.escalated();
      hi = build_p(f, parity, l_value_table(f, up), up.working_bits);
      em = endpoint_multiplicity(p, &*hi);
    }
  }
  v.endpoint_plus = em.at_plus;
  v.endpoint_minus = em.at_minus;

  if (opt.route != Route::oracle) {
    const bool has_arg = !(f.level() == 1 && parity == Parity::minus);
    const bool lattice = has_arg && f.weight() >= d_threshold(f.level(), parity);
    auto samples = sign_sequence(q, opt.scan_points, lattice);
    int last = 0;
    bool alternating = true;
    std::optional<BoundReport> B;
    if (lattice) {
      BoundReport br = bound_B(f.level(), f.weight(), parity);
      if (br.applicable) B = br;
    }
    ArgumentFunction<Real> A(has_arg ? f.level() : 2, parity);
    const bool imag = target_uses_imag(parity, f.fricke_sign());
    for (const auto& s : samples) {
      if (s.sign != 0) {
        if (last != 0 && s.sign != last) ++v.sign_changes;
        last = s.sign;
      }
      if (!s.lattice) continue;
      ++v.lattice_points;
      Real trig = imag ? sin(s.phase) : cos(s.phase);
      Real main = trig * A.radius(s.theta);
      if (s.sign == 0 || (main > 0) != (s.sign > 0)) alternating = false;
      if (!v.min_margin || s.margin < *v.min_margin) v.min_margin = s.margin;
      if (B) {
        Real bm = abs(main) - B->B;
        if (!v.min_bound_margin || bm < *v.min_bound_margin) v.min_bound_margin = bm;
      }
    }
    v.on_circle_count = 2 * v.sign_changes + em.at_plus + em.at_minus;
    v.certified = lattice && alternating && em.conclusive && v.lattice_points > 0;
    if (!has_arg)
      v.note = "no argument function at level 1 for odd parity: dense scan only";
    else if (!lattice)
      v.note = "below the monotonicity threshold: dense scan only";
  }
  if (opt.route != Route::main_term) {
    RootSet rs = all_roots(p, pol);
    RootCounts c = counts(rs);
    v.oracle_on_circle = c.on_circle;
    if (opt.route == Route::oracle) {
      v.on_circle_count = c.on_circle;
      PrecisionGuard g2(rs.bits);
      v.certified = rs.converged && rs.max_residual < two_pow(-static_cast<long>(pol.working_bits) / 2) &&
                    c.borderline == 0 && em.conclusive;
      v.note.clear();
    }
  }
  if (v.on_circle_count > v.degree) throw std::logic_error("more zeros on the circle than the degree");
  v.exceptional_upper_bound = v.degree - v.on_circle_count;
  return v;
}

}  // namespace period_lens
