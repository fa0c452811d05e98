#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Core>

#include <complex>
#include <string>

namespace period_lens {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealVector = Vector<Real>;
using ComplexVector = Vector<Complex>;

struct PrecisionPolicy {
  unsigned working_bits = 256;
  unsigned target_bits = 128;

  // throws std::invalid_argument unless working >= target + 64
  void validate() const;
  PrecisionPolicy escalated() const;
};

unsigned bits_to_digits10(unsigned bits);
unsigned current_bits();

// Sets the global mpfr default precision for the lifetime of the guard.
// Not thread safe: Boost keeps the default in a process-wide static.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits_;
};

Real pi_real();
Real two_pow(long e);  // exact 2^e

// scientific notation with `digits` significant digits, deterministic
std::string to_decimal(const Real& x, int digits);
Real parse_real(const std::string& s);

Complex cx(const Real& re, const Real& im = Real(0));

// complex trigonometry built from real functions
Complex csin(const Complex& z);
Complex ccos(const Complex& z);

}  // namespace period_lens
