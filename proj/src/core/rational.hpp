#ifndef TOPOTWIN_CORE_RATIONAL_HPP
#define TOPOTWIN_CORE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace topotwin {

// Exact coordinate domain. cpp_rational keeps the invariants we need:
// denominator > 0, gcd(|num|, den) = 1 after every operation, and a total
// order consistent with the reals. No floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline int sign_of(const Rational& r) { return r.sign(); }

// Parses an integer or plain decimal literal ("42", "-3", "0.2", ".5", "2.")
// into an exact rational. Scientific notation is rejected.
std::optional<Rational> rational_from_decimal(std::string_view text);

// Renders r as the shortest exact decimal. Fails (returns nullopt) when the
// reduced denominator has a prime factor other than 2 or 5; such a value has
// no finite decimal form and indicates a transform outside the integer
// matrix policy.
std::optional<std::string> rational_to_decimal(const Rational& r);

}  // namespace topotwin

#endif
