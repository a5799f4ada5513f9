#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace posetlab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational, always normalized (gcd(|num|, den) = 1, den > 0).
using ExactRational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

/// Small-range binomial in 64 bits; valid for n <= 62.
std::uint64_t binomial_u64(unsigned n, unsigned k);

/// `"a/b"`, `"a"` or a finite decimal such as `"0.3"`.
ExactRational parse_rational(const std::string& text);
std::string to_string(const BigInt& value);
/// `"num/den"`, or just `"num"` when the denominator is 1.
std::string to_string(const ExactRational& value);

/// floor(sqrt(value)) for non-negative value.
BigInt isqrt(const BigInt& value);

/// Exact comparison of an integer against n^(a/b): returns sign(value^b - n^a).
int compare_with_power(const BigInt& value, unsigned n, unsigned a, unsigned b);

}  // namespace posetlab
