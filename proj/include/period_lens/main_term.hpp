#pragma once

#include "period_lens/period_poly.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace period_lens {

// Argument a(theta) and modulus r(theta) of g(theta), where g is cos (plus)
// or sin (minus) of (2 pi / sqrt N) e^{i theta}, theta in [0, pi].
template <typename T>
class ArgumentFunction {
 public:
  ArgumentFunction(int level, Parity parity) : level_(level), parity_(parity) {
    if (level < 1) throw std::invalid_argument("level must be positive");
    if (level == 1 && parity == Parity::minus)
      throw std::invalid_argument("no argument function for level 1, minus parity");
    using std::sqrt;
    pi_ = boost::math::constants::pi<T>();
    c_ = 2 * pi_ / sqrt(T(level));
    singular_ = (parity == Parity::plus && level == 16) || (parity == Parity::minus && level == 4);
    build_offsets();
  }

  int level() const { return level_; }
  Parity parity() const { return parity_; }
  bool singular_endpoints() const { return singular_; }
  const std::vector<T>& branch_points() const { return branch_; }

  // arctan(num / den), no branch correction
  T raw(const T& theta) const {
    using std::atan;
    T num, den;
    parts(theta, num, den);
    if (den == 0) return num > 0 ? pi_ / 2 : -pi_ / 2;
    return atan(num / den);
  }

  T operator()(const T& theta) const {
    if (singular_ && (theta == 0 || theta == pi_)) return theta == 0 ? anchor_ : anchor_ + shift_ * pi_;
    int seg = 0;
    while (seg < static_cast<int>(branch_.size()) && !(theta < branch_[seg])) ++seg;
    T num, den;
    parts(theta, num, den);
    // near a branch point trust the sign of the computed denominator
    const T tol = T(1e-9);
    if (seg > 0 && den != 0 && theta - branch_[seg - 1] < tol && (den > 0) != sign_[seg]) --seg;
    if (seg < static_cast<int>(branch_.size()) && den != 0 && branch_[seg] - theta < tol &&
        (den > 0) != sign_[seg])
      ++seg;
    if (den == 0) {
      // branch point hit exactly: right limit
      T n2, d2;
      parts(theta + T(1e-6), n2, d2);
      return (num * d2 > 0 ? pi_ / 2 : -pi_ / 2) + offset_[seg] * pi_;
    }
    return raw(theta) + offset_[seg] * pi_;
  }

  // a'(theta) in closed form
  T derivative(const T& theta) const {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    T u = c_ * cos(theta), v = c_ * sin(theta);
    T num, den;
    if (parity_ == Parity::plus) {
      num = v * sinh(2 * v) - u * sin(2 * u);
      den = cos(2 * u) + cosh(2 * v);
    } else {
      num = u * sin(2 * u) + v * sinh(2 * v);
      den = cosh(2 * v) - cos(2 * u);
    }
    if (singular_ && (theta == 0 || theta == pi_)) return T(1) / 2;
    return num / den;
  }

  T radius(const T& theta) const {
    using std::cos;
    using std::exp;
    using std::sin;
    using std::sqrt;
    T u = c_ * cos(theta), v = c_ * sin(theta);
    T sg = parity_ == Parity::plus ? T(2) : T(-2);
    T s = exp(2 * v) + exp(-2 * v) + sg * cos(2 * u);
    if (s < 0) s = 0;
    return sqrt(s) / 2;
  }

  // d r / d theta
  T radius_derivative(const T& theta) const {
    using std::cos;
    using std::sin;
    using std::sinh;
    T u = c_ * cos(theta), v = c_ * sin(theta);
    T r = radius(theta);
    T d2 = parity_ == Parity::plus ? sinh(2 * v) * c_ * cos(theta) + sin(2 * u) * c_ * sin(theta)
                                   : sinh(2 * v) * c_ * cos(theta) - sin(2 * u) * c_ * sin(theta);
    if (r == 0) return c_;  // one-sided limit at a simple zero
    return d2 / (2 * r);
  }

  T phase(int m, const T& theta) const { return T(m) * theta - (*this)(theta); }

 private:
  void parts(const T& theta, T& num, T& den) const {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    T u = c_ * cos(theta), v = c_ * sin(theta);
    if (parity_ == Parity::plus) {
      num = -sin(u) * sinh(v);
      den = cos(u) * cosh(v);
    } else {
      num = cos(u) * sinh(v);
      den = sin(u) * cosh(v);
    }
  }

  void build_offsets() {
    using std::acos;
    using std::cos;
    using std::sin;
    using std::sqrt;
    // denominator zeros: cos(theta) = (2j+1) sqrt N / 4 (plus), j sqrt N / 2 (minus)
    T rootN = sqrt(T(level_));
    std::vector<T> pts;
    for (int j = -8; j <= 8; ++j) {
      T x = parity_ == Parity::plus ? T(2 * j + 1) * rootN / 4 : T(j) * rootN / 2;
      if (x > -1 && x < 1) pts.push_back(acos(x));
    }
    std::sort(pts.begin(), pts.end());

    if (singular_) {
      anchor_ = -pi_ / 2;
    } else {
      T g0 = parity_ == Parity::plus ? cos(c_) : sin(c_);
      anchor_ = g0 < 0 ? pi_ : T(0);
    }
    // initial offset: a(0+) = raw(0+) + K pi
    T h = T(1e-8);
    T start = raw(singular_ ? h : T(0));
    offset_.push_back(static_cast<int>(std::lround(static_cast<double>((anchor_ - start) / pi_))));
    for (const T& b : pts) {
      T jump = raw(b + h) - raw(b - h);
      int j = static_cast<int>(std::lround(static_cast<double>(jump / pi_)));
      offset_.push_back(offset_.back() - j);
      branch_.push_back(b);
    }
    std::vector<T> edges{T(0)};
    edges.insert(edges.end(), branch_.begin(), branch_.end());
    edges.push_back(pi_);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      T num, den;
      parts((edges[i] + edges[i + 1]) / 2, num, den);
      sign_.push_back(den > 0);
    }
    T end = raw(pi_ - h) + offset_.back() * pi_;
    shift_ = static_cast<int>(std::lround(static_cast<double>((end - anchor_) / pi_)));
  }

  int level_;
  Parity parity_;
  bool singular_ = false;
  T pi_, c_, anchor_;
  int shift_ = 0;
  std::vector<T> branch_;
  std::vector<int> offset_;
  std::vector<bool> sign_;  // denominator sign per segment
};

// Continuous argument obtained by unwrapping Arg g(theta) along a fine grid;
// an independent route to the same function.
template <typename T>
std::vector<T> unwrapped_argument(int level, Parity parity, const std::vector<T>& thetas) {
  using std::atan2;
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  const T pi = boost::math::constants::pi<T>();
  const T c = 2 * pi / sqrt(T(level));
  auto arg_at = [&](const T& th) {
    T u = c * cos(th), v = c * sin(th);
    T re = parity == Parity::plus ? cos(u) * cosh(v) : sin(u) * cosh(v);
    T im = parity == Parity::plus ? -sin(u) * sinh(v) : cos(u) * sinh(v);
    return atan2(im, re);
  };
  std::vector<T> out;
  T prev{};
  T acc{};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    T a = arg_at(thetas[i]);
    if (i == 0) {
      acc = a;
    } else {
      T d = a - prev;
      while (d > pi) d -= 2 * pi;
      while (d < -pi) d += 2 * pi;
      acc += d;
    }
    prev = a;
    out.push_back(acc);
  }
  return out;
}

struct SupEnclosure {
  Real lower;
  Real upper;
  Real argmax;
};

SupEnclosure derivative_sup(int level, Parity parity, unsigned bits = 128);
// smallest even k >= 4 with (k-2)/2 > sup a'
int d_threshold(int level, Parity parity, unsigned bits = 128);

struct MonotonicityReport {
  bool increasing = true;        // r' > 0 on the open grid of (0, pi/2)
  bool above_endpoint = true;    // r(theta) >= r(0)
  std::optional<double> first_failure;
  double right_derivative_at_zero = 0;
};
MonotonicityReport radius_monotonicity_check(int level, Parity parity, int grid = 4096);

struct ProfileSample {
  Real theta;
  Real argument;
  Real radius;
};
std::vector<ProfileSample> main_term_profile(int level, Parity parity, int points, unsigned bits = 128);
std::string profile_csv(const std::vector<ProfileSample>& prof, int digits = 20);

}  // namespace period_lens
