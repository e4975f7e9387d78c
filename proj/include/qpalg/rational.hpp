#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qpalg {

/// Exact rational scalar. Expression templates are off so that `auto` and
/// Eigen expressions behave like plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (parse errors, unknown labels, shape mismatches).
class InputError : public Error {
public:
  using Error::Error;
};

/// The input is well formed but the requested computation is refused on
/// mathematical grounds (truncated certificate, unmet hypothesis, ...).
class RefusalError : public Error {
public:
  using Error::Error;
};

/// Canonical text form: "p" for integers, "p/q" otherwise, q > 0, gcd(p, q) = 1.
std::string to_string(const Rational& r);

/// Parses `-?[0-9]+(/[0-9]+)?`. Throws InputError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& r) { return r.is_zero(); }

} // namespace qpalg
