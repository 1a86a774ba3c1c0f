#include "cantor/map_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cantor/error.hpp"

namespace cantor {

namespace {

unsigned significant_digits(const std::string& s) {
  unsigned count = 0;
  bool leading = true;
  for (char ch : s) {
    if (ch == 'e' || ch == 'E') break;
    if (ch < '0' || ch > '9') continue;
    if (leading && ch == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

double parse_double(const std::string& s) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "coefficient is not a number: '" + s + "'");
  }
  while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
  if (used != s.size()) fail(ErrorCode::Parse, "coefficient is not a number: '" + s + "'");
  if (!std::isfinite(v)) fail(ErrorCode::Parse, "coefficient is not finite: '" + s + "'");
  return v;
}

std::string text_of(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<CoefficientText> text_of(const Poly& p) {
  std::vector<CoefficientText> out;
  for (auto c : p) out.push_back({text_of(c.real()), text_of(c.imag())});
  return out;
}

Poly values_of(const std::vector<CoefficientText>& t) {
  Poly p;
  for (const auto& c : t) p.emplace_back(parse_double(c.re), parse_double(c.im));
  return p;
}

}  // namespace

RationalMap::RationalMap(std::string label, std::vector<CoefficientText> numerator,
                         std::vector<CoefficientText> denominator, std::string notes)
    : label_(std::move(label)),
      notes_(std::move(notes)),
      num_text_(std::move(numerator)),
      den_text_(std::move(denominator)) {
  num_ = values_of(num_text_);
  den_ = values_of(den_text_);
  digits_ = 17;
  for (const auto* t : {&num_text_, &den_text_})
    for (const auto& c : *t)
      digits_ = std::max({digits_, significant_digits(c.re), significant_digits(c.im)});
  finish();
}

RationalMap::RationalMap(std::string label, const Poly& numerator, const Poly& denominator)
    : label_(std::move(label)),
      num_text_(text_of(numerator)),
      den_text_(text_of(denominator)),
      num_(numerator),
      den_(denominator) {
  for (auto c : num_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorCode::Parse, "coefficient is not finite");
  finish();
}

void RationalMap::finish() {
  num_ = trim(num_);
  den_ = trim(den_);
  if (den_.empty()) fail(ErrorCode::Degenerate, "denominator is identically zero");
  if (num_.empty()) fail(ErrorCode::Degenerate, "map is constant zero");
  bool reduced = false;
  if (cantor::degree(den_) > 0 && cantor::degree(num_) > 0) {
    for (auto r : simple_roots(den_)) {
      double scale_num = 0.0;
      for (auto c : num_) scale_num = std::max(scale_num, std::abs(c));
      double tol = 1e-10 * scale_num * std::pow(std::max(1.0, std::abs(r)), cantor::degree(num_));
      if (cantor::degree(num_) > 0 && std::abs(horner(num_, r)) < tol) {
        num_ = trim(deflate(num_, r));
        den_ = trim(deflate(den_, r));
        reduced = true;
      }
    }
  }
  if (reduced) {
    num_text_ = text_of(num_);
    den_text_ = text_of(den_);
    digits_ = 17;
  } else {
    num_text_.resize(num_.size());
    den_text_.resize(den_.size());
  }
  degree_ = std::max(cantor::degree(num_), cantor::degree(den_));
  if (degree_ < 2) fail(ErrorCode::Degenerate, "map has degree " + std::to_string(degree_) + " < 2");
}

cplx RationalMap::operator()(cplx z) const {
  cplx q = horner(den_, z);
  if (q == cplx(0.0)) return {INFINITY, INFINITY};
  return horner(num_, z) / q;
}

ExtPoint RationalMap::operator()(const ExtPoint& p) const {
  int dp = cantor::degree(num_), dq = cantor::degree(den_);
  if (p.infinite) {
    if (dp > dq) return ExtPoint::inf();
    if (dp == dq) return ExtPoint::at(num_[dp] / den_[dq]);
    return ExtPoint::at(0.0);
  }
  cplx q = horner(den_, p.z);
  cplx n = horner(num_, p.z);
  double qs = 0.0;
  for (size_t i = 0; i < den_.size(); ++i) qs += std::abs(den_[i]) * std::pow(std::abs(p.z), i);
  if (std::abs(q) <= 1e-15 * qs) return ExtPoint::inf();
  cplx w = n / q;
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return ExtPoint::inf();
  return ExtPoint::at(w);
}

cplx RationalMap::derivative(cplx z) const {
  cplx p = horner(num_, z), q = horner(den_, z);
  cplx dp = horner(cantor::derivative(num_), z), dq = horner(cantor::derivative(den_), z);
  return (dp * q - p * dq) / (q * q);
}

std::vector<BigComplex> RationalMap::big_coefficients() const {
  if (!is_polynomial()) fail(ErrorCode::Unsupported, "high-precision evaluation needs a polynomial");
  BigComplex lead(parse_big(den_text_[0].re), parse_big(den_text_[0].im));
  std::vector<BigComplex> out;
  for (const auto& c : num_text_) out.push_back(BigComplex(parse_big(c.re), parse_big(c.im)) / lead);
  return out;
}

Poly RationalMap::poly() const {
  if (!is_polynomial()) fail(ErrorCode::Unsupported, "map is not a polynomial");
  return scale(num_, 1.0 / den_[0]);
}

ExtPoint iterate(const RationalMap& map, ExtPoint p, int iterates) {
  if (iterates < 0) fail(ErrorCode::Domain, "negative iterate count");
  for (int i = 0; i < iterates; ++i) p = map(p);
  return p;
}

std::vector<CriticalPoint> critical_points(const RationalMap& map) {
  const Poly& p = map.numerator();
  const Poly& q = map.denominator();
  Poly w = trim(subtract(multiply(q, derivative(p)), multiply(p, derivative(q))), 1e-14);
  std::vector<CriticalPoint> out;
  if (!w.empty())
    for (const auto& r : roots(w, 1e-5)) out.push_back({ExtPoint::at(r.z), r.multiplicity + 1});
  int at_inf = 2 * map.degree() - 2 - degree(w);
  if (at_inf > 0) out.push_back({ExtPoint::inf(), at_inf + 1});
  return out;
}

std::vector<BigComplex> big_taylor(const std::vector<BigComplex>& coeffs, const BigComplex& z) {
  std::vector<BigComplex> q = coeffs;
  int n = static_cast<int>(q.size());
  for (int k = 0; k < n; ++k)
    for (int i = n - 2; i >= k; --i) q[i] = q[i] + z * q[i + 1];
  return q;
}

BigComplex big_critical_point(const RationalMap& map, const CriticalPoint& c) {
  if (c.point.infinite) fail(ErrorCode::Domain, "critical point at infinity has no finite value");
  auto coeffs = map.big_coefficients();
  int m = c.local_degree;
  // The critical point is a simple root of the (m-1)-th derivative of f'.
  std::vector<BigComplex> target = coeffs;
  for (int k = 0; k < m - 1; ++k) {
    std::vector<BigComplex> next;
    for (size_t i = 1; i < target.size(); ++i)
      next.push_back(target[i] * BigComplex(BigFloat(static_cast<int>(i)), BigFloat(0)));
    target = next;
  }
  std::vector<BigComplex> dtarget;
  for (size_t i = 1; i < target.size(); ++i)
    dtarget.push_back(target[i] * BigComplex(BigFloat(static_cast<int>(i)), BigFloat(0)));
  BigComplex z(c.point.z);
  BigFloat eps = boost::multiprecision::pow(BigFloat(2), -static_cast<int>(default_bits()) + 8);
  for (int it = 0; it < 200; ++it) {
    BigComplex step = horner(target, z) / horner(dtarget, z);
    z = z - step;
    if (abs(step) <= eps * (BigFloat(1) + abs(z))) break;
  }
  return z;
}

const char* fixed_point_class_name(FixedPointClass c) {
  switch (c) {
    case FixedPointClass::Superattracting: return "superattracting";
    case FixedPointClass::Attracting: return "attracting";
    case FixedPointClass::Indifferent: return "indifferent";
    case FixedPointClass::Repelling: return "repelling";
  }
  return "unknown";
}

namespace {

FixedPointClass classify_multiplier(cplx m) {
  double a = std::abs(m);
  if (a < 1e-9) return FixedPointClass::Superattracting;
  if (a < 1.0 - 1e-6) return FixedPointClass::Attracting;
  if (a <= 1.0 + 1e-6) return FixedPointClass::Indifferent;
  return FixedPointClass::Repelling;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const RationalMap& map) {
  const Poly& p = map.numerator();
  const Poly& q = map.denominator();
  Poly g = trim(subtract(p, multiply({0.0, 1.0}, q)), 1e-14);
  std::vector<FixedPoint> out;
  for (const auto& r : roots(g, 1e-5)) {
    cplx m = map.derivative(r.z);
    out.push_back({ExtPoint::at(r.z), m, classify_multiplier(m)});
  }
  int dp = degree(p), dq = degree(q);
  if (dp > dq) {
    cplx m = dp >= dq + 2 ? cplx(0.0) : q[dq] / p[dp];
    out.push_back({ExtPoint::inf(), m, classify_multiplier(m)});
  }
  return out;
}

RationalMap conjugate_to_infinity(const RationalMap& map, cplx p) {
  int d = map.degree();
  Poly bp = taylor_shift(map.numerator(), p);
  Poly bq = taylor_shift(map.denominator(), p);
  Poly np(d + 1, 0.0), nq(d + 1, 0.0);
  for (size_t k = 0; k < bp.size(); ++k) np[d - k] = bp[k];
  for (size_t k = 0; k < bq.size(); ++k) nq[d - k] = bq[k];
  // f~(w) = 1 / (f(p + 1/w) - p) = nq / (np - p nq)
  Poly den = subtract(np, scale(nq, p));
  return RationalMap(map.label() + " (conjugated)", nq, den);
}

double escape_radius(const RationalMap& map) {
  if (map.is_polynomial()) {
    Poly a = map.poly();
    int d = degree(a);
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += std::abs(a[i] / a[d]);
    return s + std::max(1.0, 1.0 / std::abs(a[d]));
  }
  bool inf_attracting = false;
  for (const auto& fp : fixed_points(map))
    if (fp.point.infinite && fp.kind != FixedPointClass::Repelling &&
        fp.kind != FixedPointClass::Indifferent)
      inf_attracting = true;
  if (!inf_attracting) fail(ErrorCode::Precondition, "infinity is not an attracting fixed point");
  for (double r = 1.0; r < 1e9; r *= 2.0) {
    bool ok = true;
    for (double scale_r : {1.0, 2.0, 4.0}) {
      for (int k = 0; k < 720 && ok; ++k) {
        cplx z = std::polar(r * scale_r, 2.0 * M_PI * k / 720.0);
        ExtPoint w = map(ExtPoint::at(z));
        if (!w.infinite && std::abs(w.z) <= std::abs(z)) ok = false;
      }
    }
    if (ok) return r;
  }
  fail(ErrorCode::Numeric, "no escape radius found up to 1e9");
}

std::optional<int> escape_time(const RationalMap& map, cplx z, int cap) {
  if (cap < 0) fail(ErrorCode::Domain, "negative iteration cap");
  double r = escape_radius(map);
  ExtPoint p = ExtPoint::at(z);
  for (int k = 0; k <= cap; ++k) {
    if (p.infinite || std::abs(p.z) > r) return k;
    if (k < cap) p = map(p);
  }
  return std::nullopt;
}

BasinCertificate basin_certificate(const RationalMap& map, int cap) {
  BasinCertificate cert;
  const FixedPoint* best = nullptr;
  auto fps = fixed_points(map);
  bool inf_ok = false;
  for (const auto& fp : fps) {
    if (fp.kind != FixedPointClass::Superattracting && fp.kind != FixedPointClass::Attracting) continue;
    if (fp.point.infinite) inf_ok = true;
    else if (!best || std::abs(fp.multiplier) < std::abs(best->multiplier)) best = &fp;
  }
  if (inf_ok) {
    cert.normalized = map;
  } else if (best) {
    cert.conjugated = true;
    cert.moved_point = best->point.z;
    cert.normalized = conjugate_to_infinity(map, best->point.z);
  } else {
    bool indifferent = std::any_of(fps.begin(), fps.end(), [](const FixedPoint& f) {
      return f.kind == FixedPointClass::Indifferent;
    });
    fail(ErrorCode::Unsupported, indifferent ? "no attracting fixed point (indifferent fixed point present)"
                                             : "no attracting fixed point");
  }
  const RationalMap& g = cert.normalized;
  cert.radius = escape_radius(g);
  unsigned bits = std::max(128u, bits_for_digits(g.coefficient_digits()) + 64u);
  PrecisionGuard guard(bits);
  std::vector<BigComplex> coeffs;
  if (g.is_polynomial()) coeffs = g.big_coefficients();
  BigFloat r2 = BigFloat(cert.radius) * BigFloat(cert.radius);
  for (const auto& c : critical_points(g)) {
    if (c.point.infinite) continue;
    bool escaped = false;
    if (g.is_polynomial()) {
      BigComplex z = big_critical_point(g, c);
      for (int k = 0; k <= cap && !escaped; ++k) {
        if (norm(z) > r2) escaped = true;
        else z = horner(coeffs, z);
      }
    } else {
      escaped = escape_time(g, c.point.z, cap).has_value();
    }
    (escaped ? cert.escaping : cert.bounded).push_back(c);
  }
  if (cert.bounded.empty()) cert.cantor_status = "certified";
  else if (map.assume_cantor) cert.cantor_status = "asserted";
  else cert.cantor_status = "unverified";
  return cert;
}

}  // namespace cantor

namespace cantor {

namespace {

std::string number_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return text_of(v.get<double>());
  fail(ErrorCode::Parse, "coefficient component must be a number or decimal string");
}

std::vector<CoefficientText> coefficients_from(const nlohmann::json& arr, const char* name) {
  if (!arr.is_array() || arr.empty()) fail(ErrorCode::Parse, std::string(name) + " must be a non-empty array");
  std::vector<CoefficientText> out;
  for (const auto& c : arr) {
    if (c.is_array()) {
      if (c.size() != 2) fail(ErrorCode::Parse, std::string(name) + " entries must be [re, im] pairs");
      out.push_back({number_text(c[0]), number_text(c[1])});
    } else {
      out.push_back({number_text(c), "0"});
    }
  }
  return out;
}

nlohmann::json coefficient_json(const std::string& t) {
  if (significant_digits(t) <= 17) {
    double v = parse_double(t);
    if (v == std::floor(v) && std::abs(v) < 1e15) return static_cast<long long>(v);
    return v;
  }
  return t;
}

}  // namespace

RationalMap parse_map_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::Parse, "map spec must be a JSON object");
  if (!j.contains("numerator")) fail(ErrorCode::Parse, "map spec lacks 'numerator'");
  auto num = coefficients_from(j["numerator"], "numerator");
  std::vector<CoefficientText> den{{"1", "0"}};
  if (j.contains("denominator")) den = coefficients_from(j["denominator"], "denominator");
  std::string label = j.value("label", std::string("unnamed"));
  std::string notes = j.value("notes", std::string());
  RationalMap map(label, num, den, notes);
  map.assume_cantor = j.value("assume_cantor", false);
  return map;
}

RationalMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open map file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_map_json(ss.str());
}

std::string map_to_json(const RationalMap& map) {
  nlohmann::ordered_json j;
  j["label"] = map.label();
  auto arr = [](const std::vector<CoefficientText>& t) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& c : t) a.push_back({coefficient_json(c.re), coefficient_json(c.im)});
    return a;
  };
  j["numerator"] = arr(map.numerator_text());
  j["denominator"] = arr(map.denominator_text());
  j["notes"] = map.notes();
  if (map.assume_cantor) j["assume_cantor"] = true;
  return j.dump(2);
}

}  // namespace cantor
