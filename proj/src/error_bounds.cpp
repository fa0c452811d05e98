#include "period_lens/error_bounds.hpp"

#include <atomic>
#include <thread>
#include <stdexcept>

namespace period_lens {

int l_index(int weight, Parity parity) {
  auto floordiv = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  return parity == Parity::plus ? 2 * floordiv(weight - 4, 8) + 1 : 2 * floordiv(weight - 8, 8);
}

Real radius_floor(int level, Parity parity) {
  Real x = 2 * pi_real() / sqrt(Real(level));
  return parity == Parity::plus ? abs(cos(x)) : abs(sin(x));
}

namespace {

Real bound_value(int N, int k, int l) {
  const Real pi = pi_real();
  const Real rootN = sqrt(Real(N));
  const int m = (k - 2) / 2;
  const Real Nm = pow(Real(N), -Real(m) / 2);
  const Real x = 2 * pi / rootN;
  const Real q = exp(-pi / rootN);
  Real s1 = Real(37) / 10 * Real(k + 6) / (sqrt(Real(2)) * (k - 2)) * pow(Real(2), -Real(k) / 4) * Nm * exp(x);
  Real bracket = 4 * sqrt(Real(k)) * log(exp(Real(1)) * k) + 4 * q / (1 - q) * pow(sqrt(Real(2)) * q, k) + 1;
  Real tail = Real(l + 2) * pow(x * exp(Real(1)), l + 1) / (pow(Real(l + 1), l + 1) * (Real(l + 2) - x));
  return s1 + Nm * bracket * tail;
}

// evaluates at the current default precision; never touches it
BoundReport bound_at_current(int level, int weight, Parity parity) {
  BoundReport r;
  r.level = level;
  r.weight = weight;
  r.parity = parity;
  r.l = l_index(weight, parity);
  r.radius_floor = radius_floor(level, parity);
  const Real x = 2 * pi_real() / sqrt(Real(level));
  r.applicable = r.l >= 0 && Real(r.l + 2) - x > 0;
  if (!r.applicable) return r;
  r.B = bound_value(level, weight, r.l);
  r.holds = r.radius_floor > r.B;
  return r;
}

bool near_tight(const BoundReport& r) {
  return r.applicable && abs(r.radius_floor - r.B) < two_pow(-20) * r.radius_floor;
}

}  // namespace

BoundReport bound_B(int level, int weight, Parity parity, unsigned bits) {
  if (weight % 2 != 0 || weight < 4) throw std::invalid_argument("weight must be even and >= 4");
  if (level < 1) throw std::invalid_argument("level must be positive");
  PrecisionGuard g(bits);
  BoundReport r = bound_at_current(level, weight, parity);
  if (near_tight(r) && bits < 1024) return bound_B(level, weight, parity, bits * 2);
  return r;
}

namespace {

// nullopt when a comparison was too tight to trust at the current precision
std::optional<KCell> k_scan(int level, Parity parity, int horizon, bool escalate) {
  KCell cell;
  cell.level = level;
  if (radius_floor(level, parity) < two_pow(-static_cast<long>(current_bits()) / 2)) {
    cell.status = "none";
    return cell;
  }
  // walk down from the horizon; the threshold starts the final run of holds
  int start = -1;
  for (int k = horizon - (horizon % 2); k >= 4; k -= 2) {
    BoundReport b = escalate ? bound_B(level, k, parity, current_bits()) : bound_at_current(level, k, parity);
    if (!escalate && near_tight(b)) return std::nullopt;
    if (b.applicable && b.holds)
      start = k;
    else
      break;
  }
  if (start < 0) {
    cell.status = "horizon";
    return cell;
  }
  cell.k = start;
  cell.status = "ok";
  return cell;
}

}  // namespace

KCell k_threshold(int level, Parity parity, int horizon, unsigned bits) {
  PrecisionGuard g(bits);
  return *k_scan(level, parity, horizon, true);
}

std::vector<KCell> k_table(const std::vector<int>& levels, Parity parity, int jobs, int horizon) {
  std::vector<KCell> out(levels.size());
  std::vector<char> done(levels.size(), 0);
  {
    PrecisionGuard g(128);
    if (jobs > 1) {
      // workers share the fixed default precision and never change it
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        for (std::size_t i; (i = next++) < levels.size();) {
          auto c = k_scan(levels[i], parity, horizon, false);
          if (c) {
            out[i] = *c;
            done[i] = 1;
          }
        }
      };
      std::vector<std::thread> pool;
      for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
  }
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (!done[i]) out[i] = k_threshold(levels[i], parity, horizon);
  return out;
}

Complex error_term(const PeriodPolynomial& q, const Real& theta) {
  if (q.kind != PolyKind::q_plus && q.kind != PolyKind::q_minus)
    throw std::invalid_argument("error_term expects a q polynomial");
  PrecisionGuard g(q.bits);
  const int N = q.level, m = (q.weight - 2) / 2;
  const Real rootN = sqrt(Real(N));
  Complex X = Complex(cos(theta), sin(theta)) / rootN;
  Complex Y = Complex(1, 0) / (X * Real(N));
  Complex Xm = pow(X, m);
  Complex main = q.kind == PolyKind::q_plus ? ccos(Y * (2 * pi_real())) : csin(Y * (2 * pi_real()));
  return Xm * evaluate(q, Y).value - Xm * main;
}

SpecialFloor special_floor(int level, int weight, Parity parity, unsigned bits) {
  const bool n16 = level == 16 && parity == Parity::plus;
  const bool n4 = level == 4 && parity == Parity::minus;
  if (!n16 && !n4) throw std::invalid_argument("special floor only for N = 16 plus or N = 4 minus");
  if (n16 && weight < 12) throw std::invalid_argument("N = 16 special floor needs k >= 12");
  if (n4 && weight < 26) throw std::invalid_argument("N = 4 special floor needs k >= 26");
  PrecisionGuard g(bits);
  const int m = (weight - 2) / 2;
  const Real pi = pi_real();
  SpecialFloor s;
  if (n16) {
    Real a = pi / (2 * m - 1), b = sqrt(Real(2)) * pi / (8 * m - 4);
    s.floor = a < b ? a : b;
  } else {
    s.floor = sqrt(Real(2)) * pi / (4 * m - 2);
  }
  BoundReport br = bound_B(level, weight, parity, bits);
  s.B = br.B;
  s.holds = br.applicable && s.floor > s.B;
  return s;
}

Real growth_bound_near_one(int weight) {
  return Real(37) / 10 * Real(weight + 6) / (sqrt(Real(2)) * (weight - 2)) * pow(Real(2), -Real(weight) / 4);
}

Real growth_bound_strip(int level, int weight) {
  const Real q = exp(-pi_real() / sqrt(Real(level)));
  return 4 * sqrt(Real(weight)) * log(exp(Real(1)) * weight) + 4 * q / (1 - q) * pow(sqrt(Real(2)) * q, weight);
}

GrowthCheck growth_selfcheck(const Newform& f, int sigma, int part, const PrecisionPolicy& pol) {
  const int k = f.weight();
  GrowthCheck r;
  r.sigma = sigma;
  r.part = part;
  if (part == 1) {
    if (4 * sigma < 3 * k) throw std::invalid_argument("part 1 needs sigma >= 3k/4");
  } else if (part == 2) {
    if (2 * sigma < k) throw std::invalid_argument("part 2 needs sigma >= k/2");
  } else {
    throw std::invalid_argument("part must be 1 or 2");
  }
  LValue v = sigma <= k - 1 ? l_value(f, sigma, pol) : l_value_direct(f, sigma, pol);
  PrecisionGuard g(pol.working_bits);
  r.value = v.value;
  if (part == 1) {
    r.bound = growth_bound_near_one(k);
    r.holds = abs(v.value - 1) + v.radius < r.bound;
  } else {
    r.bound = growth_bound_strip(f.level(), k);
    r.holds = abs(v.value) + v.radius <= r.bound;
  }
  return r;
}

}  // namespace period_lens
