#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantor/numeric.hpp"
#include "cantor/polynomial.hpp"

namespace cantor {

// A point of the Riemann sphere.
struct ExtPoint {
  cplx z{0.0, 0.0};
  bool infinite = false;

  static ExtPoint at(cplx w) { return {w, false}; }
  static ExtPoint inf() { return {cplx(0.0), true}; }
};

struct CoefficientText {
  std::string re = "0";
  std::string im = "0";
};

class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(std::string label, std::vector<CoefficientText> numerator,
              std::vector<CoefficientText> denominator, std::string notes = {});
  RationalMap(std::string label, const Poly& numerator, const Poly& denominator);

  const std::string& label() const { return label_; }
  const std::string& notes() const { return notes_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  const std::vector<CoefficientText>& numerator_text() const { return num_text_; }
  const std::vector<CoefficientText>& denominator_text() const { return den_text_; }
  int degree() const { return degree_; }
  bool is_polynomial() const { return cantor::degree(den_) == 0; }
  // Decimal digits carried by the coefficient text; bounds useful precision.
  unsigned coefficient_digits() const { return digits_; }

  bool assume_cantor = false;

  ExtPoint operator()(const ExtPoint& p) const;
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;

  // Polynomial coefficients (numerator divided by the constant denominator)
  // parsed from the text at the current default mpfr precision.
  std::vector<BigComplex> big_coefficients() const;
  Poly poly() const;

 private:
  void finish();

  std::string label_;
  std::string notes_;
  std::vector<CoefficientText> num_text_;
  std::vector<CoefficientText> den_text_;
  Poly num_;
  Poly den_;
  int degree_ = 0;
  unsigned digits_ = 17;
};

RationalMap parse_map_json(const std::string& text);
RationalMap load_map(const std::string& path);
std::string map_to_json(const RationalMap& map);

ExtPoint iterate(const RationalMap& map, ExtPoint p, int iterates);

struct CriticalPoint {
  ExtPoint point;
  int local_degree = 2;
};

std::vector<CriticalPoint> critical_points(const RationalMap& map);

// Newton-polishes a finite critical point of a polynomial at the current precision.
BigComplex big_critical_point(const RationalMap& map, const CriticalPoint& c);

// Derivatives of the polynomial at z: out[k] = f^(k)(z) / k!.
std::vector<BigComplex> big_taylor(const std::vector<BigComplex>& coeffs, const BigComplex& z);

enum class FixedPointClass { Superattracting, Attracting, Indifferent, Repelling };
const char* fixed_point_class_name(FixedPointClass c);

struct FixedPoint {
  ExtPoint point;
  cplx multiplier{0.0, 0.0};
  FixedPointClass kind = FixedPointClass::Repelling;
};

std::vector<FixedPoint> fixed_points(const RationalMap& map);

// Conjugates by w = 1/(z - p) so that the finite fixed point p moves to infinity.
RationalMap conjugate_to_infinity(const RationalMap& map, cplx p);

// Radius outside which every orbit escapes monotonically.
double escape_radius(const RationalMap& map);

// First k <= cap with |f^k z| > R, or nullopt when the orbit stays bounded.
std::optional<int> escape_time(const RationalMap& map, cplx z, int cap);

struct BasinCertificate {
  bool conjugated = false;      // a finite attracting point was moved to infinity
  cplx moved_point{0.0, 0.0};
  RationalMap normalized;       // the map with the attracting point at infinity
  double radius = 0.0;
  std::vector<CriticalPoint> escaping;
  std::vector<CriticalPoint> bounded;
  std::string cantor_status;    // "certified", "asserted" or "unverified"
};

BasinCertificate basin_certificate(const RationalMap& map, int cap = 500);

}  // namespace cantor
