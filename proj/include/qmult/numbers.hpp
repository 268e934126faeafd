#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qmult {

// Exact arithmetic only: arbitrary-precision integers and rationals in
// lowest terms with positive denominator (canonical zero is 0/1).
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rational_num(const Rational& q) { return numerator(q); }
inline Int rational_den(const Rational& q) { return denominator(q); }
inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Renders "n" for integers, "n/d" otherwise.
std::string rational_str(const Rational& q);

// Accepts "n" or "n/d"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

// Smallest M >= 0 with M*M*den >= num (num >= 0, den > 0),
// i.e. ceil(sqrt(num/den)) computed without floating point.
Int ceil_sqrt_ratio(const Int& num, const Int& den);

bool is_prime(const Int& n);

// Primes <= n by a plain sieve.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

}  // namespace qmult
