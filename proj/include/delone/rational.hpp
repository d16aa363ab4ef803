#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace delone {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Smallest non-negative integer n with n*n >= q. Requires q >= 0.
Integer ceil_sqrt(const Rational& q);
/// Largest non-negative integer n with n*n <= q. Requires q >= 0.
Integer floor_sqrt(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);
bool is_integer(const Rational& q);

/// Accepts "p/q", "p", or a finite decimal such as "0.125".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

}  // namespace delone
