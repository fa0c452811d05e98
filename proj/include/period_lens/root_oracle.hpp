#pragma once

#include "period_lens/period_poly.hpp"

#include <optional>
#include <vector>

namespace period_lens {

enum class RootClass { on_circle, exceptional, origin };
std::string to_string(RootClass c);

struct Root {
  Complex value;
  Real residual;  // |p(z)| / sum |c_i| |z|^i
  RootClass cls = RootClass::exceptional;
  bool borderline = false;
  bool deflated = false;  // removed before iteration (origin or endpoint)
  int pair = -1;          // index of the conjugate partner
};

struct RootSet {
  int level = 1;
  std::vector<Root> roots;
  Real tol;           // classification tolerance on | |z| sqrt N - 1 |
  Real max_residual;  // over iterated roots
  unsigned bits = 0;
  bool converged = false;

  int degree() const { return static_cast<int>(roots.size()); }
};

struct RootCounts {
  int on_circle = 0;
  int exceptional = 0;
  int origin = 0;
  int borderline = 0;
};

// Roots of sum c_i X^i.  Exact zeros at the origin and numerically vanishing
// values at +-1/sqrt(level) are deflated first; the rest are found together
// by Aberth iteration.  `radii` feeds the classification tolerance.
RootSet all_roots(const ComplexVector& coeffs, const RealVector& radii, int level, const PrecisionPolicy& pol);
RootSet all_roots(const PeriodPolynomial& p, const PrecisionPolicy& pol);

// re-partition with the given tolerance; borderline means within 10 tol of the boundary
RootCounts classify(RootSet& rs, const Real& tol);
RootCounts counts(const RootSet& rs);

struct VietaCheck {
  Real sum_error;      // relative
  Real product_error;  // relative, 0 when the constant term vanishes
};
VietaCheck vieta_check(const RootSet& rs, const ComplexVector& coeffs);

// multiset distance between the roots and their images under
// X -> sign / (N X), ignoring roots at the origin
Real inversion_distance(const RootSet& rs, int sign);

}  // namespace period_lens
