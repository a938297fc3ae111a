#include "core/rational.hpp"

#include <algorithm>
#include <cctype>

namespace topotwin {

std::optional<Rational> rational_from_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string int_digits;
  std::string frac_digits;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
    int_digits.push_back(text[i++]);
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      frac_digits.push_back(text[i++]);
  }
  if (i != text.size()) return std::nullopt;
  if (int_digits.empty() && frac_digits.empty()) return std::nullopt;

  BigInt num = int_digits.empty() ? BigInt(0) : BigInt(int_digits);
  BigInt den = 1;
  for (char d : frac_digits) {
    num = num * 10 + (d - '0');
    den *= 10;
  }
  Rational r(num, den);
  if (negative) r = -r;
  return r;
}

std::optional<std::string> rational_to_decimal(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();

  // den = 2^a * 5^b, or the value has no finite decimal expansion.
  BigInt rest = den;
  unsigned a = 0;
  unsigned b = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++a;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++b;
  }
  if (rest != 1) return std::nullopt;

  const unsigned k = std::max(a, b);
  BigInt pow10 = 1;
  for (unsigned i = 0; i < k; ++i) pow10 *= 10;
  BigInt scaled = num * pow10 / den;  // exact by construction

  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  BigInt whole = scaled / pow10;
  BigInt frac = scaled % pow10;

  std::string frac_str = frac.str();
  frac_str.insert(frac_str.begin(), k - frac_str.size(), '0');
  // k is minimal (denominator is reduced), so the last digit is nonzero.
  std::string out;
  if (negative) out.push_back('-');
  out += whole.str();
  out.push_back('.');
  out += frac_str;
  return out;
}

}  // namespace topotwin
