// Exact arithmetic helpers.  All trace weights are kept as arbitrary-precision
// rationals so that order comparisons and marginal checks never see rounding.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace om {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Renders "p/q" in lowest terms, or just "p" when q == 1.
std::string rat_to_string(const Rat& r);

// Accepts "p", "-p", "p/q" (optionally signed); throws errc::schema_violation
// on anything else (including q == 0).
Rat rat_from_string(const std::string& text);

// Least common multiple of all denominators (>= 1).
BigInt common_denominator(const std::vector<Rat>& values);

// r * scale, which must be an exact integer; throws otherwise.
BigInt scale_to_integer(const Rat& r, const BigInt& scale);

double rat_to_double(const Rat& r);

} // namespace om
