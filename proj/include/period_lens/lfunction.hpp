#pragma once

#include "period_lens/newform.hpp"

#include <vector>

namespace period_lens {

struct LValue {
  int s = 0;
  Real value;
  Real radius;
  std::string method;  // "completed" or "direct"
};

struct CoefficientBudget {
  int required = 0;
  unsigned bits = 0;
  Real tail;
};

// Bound on sum_{n>M} of the absolute completed-sum terms, uniform over
// 1 <= s <= k-1, for splitting parameter t (t = 1 is the symmetric split).
Real truncation_tail(int level, int weight, int M, const Real& t = Real(1));
CoefficientBudget coefficient_budget(int level, int weight, unsigned bits, const Real& t = Real(1));

// Lambda(s) = (sqrt N / 2 pi)^s Gamma(s) L(f, s), 1 <= s <= k-1
LValue lambda_completed(const Newform& f, int s, const PrecisionPolicy& pol, const Real& t = Real(1));
std::vector<LValue> lambda_table(const Newform& f, const PrecisionPolicy& pol, const Real& t = Real(1));

LValue l_value(const Newform& f, int s, const PrecisionPolicy& pol);
// L(f, s) for s = 1..k-1; entry s-1.  Escalates once if a radius is too wide.
std::vector<LValue> l_value_table(const Newform& f, const PrecisionPolicy& pol);

// Partial Dirichlet sum; requires 4s >= 3k.  Uses all stored coefficients
// unless max_terms > 0.
LValue l_value_direct(const Newform& f, int s, const PrecisionPolicy& pol, int max_terms = 0);
// Bound on sum_{n>M} d(n) n^{-sigma}, sigma > 1
Real divisor_tail(const Real& sigma, int M);

// true when Lambda agrees for two splitting parameters at s = 1 and s = k/2;
// fails for the wrong Fricke sign
struct SignCheck {
  bool consistent = false;
  Real worst_discrepancy;  // in units of the combined radius
};
SignCheck functional_equation_check(const Newform& f, const PrecisionPolicy& pol);

bool radius_within_target(const LValue& v, const PrecisionPolicy& pol);

}  // namespace period_lens
