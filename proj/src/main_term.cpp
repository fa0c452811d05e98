#include "period_lens/main_term.hpp"

#include <sstream>

namespace period_lens {

namespace {

// golden-section maximisation of f on [lo, hi]
template <typename F>
Real golden_max(F&& f, Real lo, Real hi, int iters) {
  const Real g = (sqrt(Real(5)) - 1) / 2;
  Real x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  Real f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return (lo + hi) / 2;
}

}  // namespace

SupEnclosure derivative_sup(int level, Parity parity, unsigned bits) {
  PrecisionGuard guard(bits);
  ArgumentFunction<Real> a(level, parity);
  const Real pi = pi_real();
  const int grid = 4096;
  std::vector<Real> th(grid + 1), val(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    th[i] = pi * i / grid;
    val[i] = a.derivative(th[i]);
  }
  // refine around every local maximum among the top candidates
  std::vector<int> peaks;
  for (int i = 0; i <= grid; ++i) {
    bool left = i == 0 || val[i] >= val[i - 1];
    bool right = i == grid || val[i] >= val[i + 1];
    if (left && right) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return val[x] > val[y]; });
  if (peaks.size() > 6) peaks.resize(6);

  Real best = val[peaks.front()], best_th = th[peaks.front()];
  Real width = pi / grid;
  int iters = static_cast<int>(bits * 1.5) + 20;
  for (int i : peaks) {
    Real lo = i == 0 ? Real(0) : th[i - 1], hi = i == grid ? pi : th[i + 1];
    Real x = golden_max([&](const Real& t) { return a.derivative(t); }, lo, hi, iters);
    Real v = a.derivative(x);
    if (v > best) {
      best = v;
      best_th = x;
    }
  }
  // bracket width after golden section is about width * 0.618^iters; the
  // gap between sample and true max is quadratic in it
  Real bracket = 2 * width * pow(Real(0.62), iters);
  Real slack = Real(1e6) * bracket * bracket + 64 * two_pow(-static_cast<long>(bits)) * abs(best);
  return {best, best + slack, best_th};
}

int d_threshold(int level, Parity parity, unsigned bits) {
  SupEnclosure e = derivative_sup(level, parity, bits);
  PrecisionGuard guard(bits);
  for (int k = 4;; k += 2)
    if (Real(k - 2) / 2 > e.upper) return k;
}

MonotonicityReport radius_monotonicity_check(int level, Parity parity, int grid) {
  PrecisionGuard guard(128);
  ArgumentFunction<Real> a(level, parity);
  const Real half_pi = pi_real() / 2;
  MonotonicityReport rep;
  Real r0 = a.radius(Real(0));
  for (int i = 1; i < grid; ++i) {
    Real th = half_pi * i / grid;
    if (!(a.radius_derivative(th) > 0)) {
      rep.increasing = false;
      if (!rep.first_failure) rep.first_failure = th.convert_to<double>();
    }
    if (a.radius(th) < r0) {
      rep.above_endpoint = false;
      if (!rep.first_failure) rep.first_failure = th.convert_to<double>();
    }
  }
  Real h = two_pow(-30);
  rep.right_derivative_at_zero = ((a.radius(h) - r0) / h).convert_to<double>();
  return rep;
}

std::vector<ProfileSample> main_term_profile(int level, Parity parity, int points, unsigned bits) {
  PrecisionGuard guard(bits);
  ArgumentFunction<Real> a(level, parity);
  const Real pi = pi_real();
  std::vector<ProfileSample> out;
  for (int i = 0; i < points; ++i) {
    Real th = pi * i / (points - 1);
    out.push_back({th, a(th), a.radius(th)});
  }
  return out;
}

std::string profile_csv(const std::vector<ProfileSample>& prof, int digits) {
  std::ostringstream os;
  os << "theta,argument,radius\n";
  for (const auto& s : prof)
    os << to_decimal(s.theta, digits) << ',' << to_decimal(s.argument, digits) << ','
       << to_decimal(s.radius, digits) << '\n';
  return os.str();
}

}  // namespace period_lens
