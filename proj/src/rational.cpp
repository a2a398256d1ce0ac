#include "icc/rational.hpp"

#include <cctype>
#include <charconv>

namespace icc {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error::parse("bad rational '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw Error::parse("empty rational");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t num = parse_int(std::string_view(text).substr(0, slash), text);
    const std::int64_t den = parse_int(std::string_view(text).substr(slash + 1), text);
    if (den == 0) throw Error::parse("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_int(text, text), 1);

  // Decimal: digits over a power of ten, exact.
  const bool negative = text[0] == '-';
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (negative) digits.erase(0, 1);
  const std::size_t frac_digits = text.size() - dot - 1;
  if (digits.empty() || frac_digits == 0 || frac_digits > 17)
    throw Error::parse("bad decimal '" + text + "'");
  for (const char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error::parse("bad decimal '" + text + "'");
  std::int64_t num = parse_int(digits, text);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_digits; ++i) {
    if (den > (1LL << 59)) throw Error::parse("decimal too long '" + text + "'");
    den *= 10;
  }
  return Rational(negative ? -num : num, den);
}

}  // namespace icc
