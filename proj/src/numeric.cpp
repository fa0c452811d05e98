#include "period_lens/numeric.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace period_lens {

void PrecisionPolicy::validate() const {
  if (working_bits < target_bits + 64)
    throw std::invalid_argument("working precision must exceed target by at least 64 bits");
}

PrecisionPolicy PrecisionPolicy::escalated() const {
  return {working_bits * 2, target_bits * 2};
}

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

unsigned current_bits() {
  Real probe;
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_digits_); }

Real pi_real() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real two_pow(long e) {
  Real r(1);
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

std::string to_decimal(const Real& x, int digits) {
  if (x == 0) return "0";
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << x;
  return os.str();
}

Real parse_real(const std::string& s) {
  Real r;
  if (mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("not a decimal number: " + s);
  return r;
}

Complex cx(const Real& re, const Real& im) { return Complex(re, im); }

Complex csin(const Complex& z) {
  return Complex(sin(z.real()) * cosh(z.imag()), cos(z.real()) * sinh(z.imag()));
}

Complex ccos(const Complex& z) {
  return Complex(cos(z.real()) * cosh(z.imag()), -sin(z.real()) * sinh(z.imag()));
}

}  // namespace period_lens
