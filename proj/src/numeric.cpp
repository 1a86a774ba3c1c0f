#include "cantor/numeric.hpp"

#include <cmath>
#include <cstdio>

#include "cantor/error.hpp"

namespace cantor {

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

BigFloat norm(const BigComplex& a) { return a.re * a.re + a.im * a.im; }

BigFloat abs(const BigComplex& a) { return boost::multiprecision::sqrt(norm(a)); }

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_(BigFloat::default_precision()) {
  // mpfr_float precision is expressed in decimal digits.
  BigFloat::default_precision(bits * 30103u / 100000u + 2u);
}

PrecisionGuard::~PrecisionGuard() { BigFloat::default_precision(saved_); }

unsigned bits_for_digits(unsigned digits) { return digits * 100000u / 30103u + 8u; }

unsigned default_bits() { return BigFloat::default_precision() * 100000u / 30103u; }

BigFloat parse_big(const std::string& text) {
  try {
    return BigFloat(text);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "not a decimal number: " + text);
  }
}

BigComplex horner(const std::vector<BigComplex>& coeffs, const BigComplex& z) {
  BigComplex acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::string fmt12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace cantor
