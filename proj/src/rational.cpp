#include "ncert/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ncert {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& q) {
  const mp::cpp_int num = mp::numerator(q);
  const mp::cpp_int den = mp::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

mp::cpp_int parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  mp::cpp_int v(std::string(text.substr(i)));
  return text[0] == '-' ? mp::cpp_int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = parse_integer(text.substr(0, slash), text);
    const auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    const bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part == "-" || int_part == "+" || int_part.empty()) int_part = "0";
    mp::cpp_int whole = parse_integer(int_part, text);
    if (whole < 0) whole = -whole;
    mp::cpp_int scale = 1;
    mp::cpp_int frac = 0;
    if (!frac_part.empty()) {
      frac = parse_integer(frac_part, text);
      if (frac < 0 || frac_part[0] == '+') throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
      for (std::size_t k = 0; k < frac_part.size(); ++k) scale *= 10;
    }
    Rational value = Rational(whole) + Rational(frac, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text, text));
}

Rational rational_from_double(double x, double tol, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value cannot be made rational");
  // Continued-fraction convergents.
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return Rational(h1, k1);
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return Rational(x);
}

}  // namespace ncert
