#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <string>
#include <vector>

namespace cantor {

using cplx = std::complex<double>;
using BigFloat = boost::multiprecision::mpfr_float;

// Complex number over mpfr floats; only the operations the dynamics needs.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  BigComplex() : re(0), im(0) {}
  BigComplex(const BigFloat& r, const BigFloat& i) : re(r), im(i) {}
  explicit BigComplex(cplx z) : re(z.real()), im(z.imag()) {}

  cplx to_cplx() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigFloat norm(const BigComplex& a);
BigFloat abs(const BigComplex& a);

// Sets the default mpfr precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

unsigned bits_for_digits(unsigned digits);
unsigned default_bits();

// Parses a decimal string at the current default precision.
BigFloat parse_big(const std::string& text);

// Evaluates ascending-coefficient polynomials.
BigComplex horner(const std::vector<BigComplex>& coeffs, const BigComplex& z);
cplx horner(const std::vector<cplx>& coeffs, cplx z);

// Formats with 12 significant digits so reports are byte-stable.
std::string fmt12(double x);

}  // namespace cantor
