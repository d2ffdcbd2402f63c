#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cm {

using Rational = mpq_class;

// Accepts "a" or "a/b" with an optional leading minus; no whitespace.
Rational parse_rational(std::string_view text);

// Comma separated list of rationals, e.g. "1/2,-3,0".
std::vector<Rational> parse_rational_list(std::string_view text);

// Canonical form: "a/b" in lowest terms, or "a" for integers.
std::string to_string(const Rational& r);

std::string format_double(double x);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// Size of numerator plus denominator in bits; pivot selection heuristic.
std::size_t bit_size(const Rational& r);

}  // namespace cm
