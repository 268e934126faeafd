#include "qmult/numbers.hpp"

#include <boost/multiprecision/integer.hpp>

namespace qmult {

std::string rational_str(const Rational& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor of negative value");
    if (n == 0) return 0;
    return boost::multiprecision::sqrt(n);
}

Int ceil_sqrt_ratio(const Int& num, const Int& den) {
    if (den <= 0) throw std::invalid_argument("ceil_sqrt_ratio requires positive denominator");
    if (num <= 0) return 0;
    // Start from floor(sqrt(num/den)) and adjust upward.
    Int m = isqrt_floor(num / den);
    while (m * m * den < num) ++m;
    while (m > 0 && (m - 1) * (m - 1) * den >= num) --m;
    return m;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (Int d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        if (p > n / p) continue;
        for (std::uint64_t q = p * p; q <= n; q += p) composite[q] = true;
    }
    return out;
}

}  // namespace qmult
