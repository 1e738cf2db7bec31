#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "schedsim/time.hpp"

namespace schedsim {

// Exact rational arithmetic for job values and metric averages. Comparisons
// and aggregation must be free of floating-point round-off, so everything
// value-like is kept as an arbitrary-precision rational until formatted.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(ticks_t n) { return Rat(BigInt(n)); }
inline Rat rat(TimeDelta d) { return rat(d.count()); }

// Accepts "12", "1.5", "-0.25" and the fraction form "7/3".
// Returns nullopt on anything else.
std::optional<Rat> parse_rational(std::string_view s);

// Decimal rendering with at most max_frac_digits fractional digits; exact
// when the expansion terminates within the limit, otherwise rounded half-up.
// Trailing zeros and a trailing '.' are trimmed.
std::string format_rational(const Rat& r, unsigned max_frac_digits = 9);

// Exact decimal expansion, or nullopt when the value does not terminate
// within max_frac_digits digits.
std::optional<std::string> exact_decimal(const Rat& r, unsigned max_frac_digits = 18);

// Lossless text form: exact decimal when one exists, else "num/den".
std::string lossless_string(const Rat& r);

}  // namespace schedsim
