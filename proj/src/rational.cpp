#include "qpalg/rational.hpp"

#include <cctype>

namespace qpalg {

std::string to_string(const Rational& r) {
  const Integer num = numerator(r);
  const Integer den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return InputError("malformed rational literal '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-') {
    negative = true;
    pos = 1;
  }
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    return true;
  };
  const std::size_t slash = text.find('/');
  const std::size_t numEnd = slash == std::string_view::npos ? text.size() : slash;
  if (!digits(pos, numEnd)) throw bad();
  Integer num(std::string(text.substr(pos, numEnd - pos)));
  Integer den(1);
  if (slash != std::string_view::npos) {
    if (!digits(slash + 1, text.size())) throw bad();
    den = Integer(std::string(text.substr(slash + 1)));
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

} // namespace qpalg
