#include "delone/rational.hpp"

#include "delone/error.hpp"

#include <cctype>

namespace delone {

Integer floor(const Rational& q) {
  const Integer n = numerator_of(q);
  const Integer d = denominator_of(q);
  if (n >= 0) return n / d;
  return -((-n + d - 1) / d);
}

Integer ceil(const Rational& q) { return -floor(-q); }

Integer floor_sqrt(const Rational& q) {
  if (q < 0) throw InvalidArgument("floor_sqrt of a negative value");
  Integer s = boost::multiprecision::sqrt(floor(q));
  while (Rational((s + 1) * (s + 1)) <= q) ++s;
  return s;
}

Integer ceil_sqrt(const Rational& q) {
  Integer s = floor_sqrt(q);
  if (Rational(s * s) < q) ++s;
  return s;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("bad number '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("bad number '" + std::string(whole) + "'");
  }
  return Integer(std::string(text[0] == '+' ? text.substr(1) : text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(text.substr(0, slash), text);
    const Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    const bool negative = !int_part.empty() && int_part[0] == '-';
    if (int_part.empty() || int_part == "-" || int_part == "+") int_part = "0";
    const Integer whole = parse_integer(int_part, text);
    Rational frac = 0;
    if (!frac_part.empty()) {
      if (!std::isdigit(static_cast<unsigned char>(frac_part[0])))
        throw ParseError("bad number '" + std::string(text) + "'");
      Integer scale = 1;
      for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
      frac = Rational(parse_integer(frac_part, text), scale);
    }
    Rational value = Rational(boost::multiprecision::abs(whole)) + frac;
    return negative ? -value : value;
  }
  return Rational(parse_integer(text, text));
}

std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace delone
