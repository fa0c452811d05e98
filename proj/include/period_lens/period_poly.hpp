#pragma once

#include "period_lens/lfunction.hpp"

namespace period_lens {

enum class PolyKind { full, even, odd, p_plus, p_minus, q_plus, q_minus };
enum class Parity { plus, minus };

std::string to_string(PolyKind k);
std::string to_string(Parity p);
Parity parse_parity(const std::string& s);

// The stored polynomial is sum c_i X^i; the unnormalised object it stands
// for is r_scale times that.  r_scale is metadata and never multiplied in.
struct PeriodPolynomial {
  PolyKind kind = PolyKind::full;
  int level = 0;
  int weight = 0;
  int fricke_sign = 0;
  ComplexVector coefficients;  // index = degree
  RealVector radii;            // |error| bound per coefficient
  Complex r_scale;
  unsigned bits = 0;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool real_coefficients() const { return kind != PolyKind::full; }
};

struct Evaluation {
  Complex value;
  Real radius;
};

// L-values may be passed in to avoid recomputation; entry s-1 holds L(f,s).
PeriodPolynomial build_full(const Newform& f, const std::vector<LValue>& L, unsigned bits);
PeriodPolynomial build_even(const Newform& f, const std::vector<LValue>& L, unsigned bits);  // p+
PeriodPolynomial build_odd(const Newform& f, const std::vector<LValue>& L, unsigned bits);   // p-
PeriodPolynomial build_q(const Newform& f, Parity parity, const std::vector<LValue>& L, unsigned bits);
PeriodPolynomial build_p(const Newform& f, Parity parity, const std::vector<LValue>& L, unsigned bits);

PeriodPolynomial build_full(const Newform& f, const PrecisionPolicy& pol);
PeriodPolynomial build_even(const Newform& f, const PrecisionPolicy& pol);
PeriodPolynomial build_odd(const Newform& f, const PrecisionPolicy& pol);
PeriodPolynomial build_q(const Newform& f, Parity parity, const PrecisionPolicy& pol);

// r_scale multiplied into the coefficients (kinds even / odd)
PeriodPolynomial materialize_r(const PeriodPolynomial& p);

Evaluation evaluate(const PeriodPolynomial& p, const Complex& x);
// j-th derivative
Evaluation evaluate_derivative(const PeriodPolynomial& p, const Complex& x, int j);

// sup over `samples` points of the circle |X| = 1/sqrt N of the residual of
// the matching period relation, divided by sum |c_i| N^{-i/2}
Real functional_equation_residual(const PeriodPolynomial& p, int samples = 64);

// q reconstructed into p: q(X) -/+ eps (sqrt N X)^w q(1/(NX)) at X
Complex reconstruct_from_q(const PeriodPolynomial& q, Parity parity, const Complex& x);

}  // namespace period_lens
