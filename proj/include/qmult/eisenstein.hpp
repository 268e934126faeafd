#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qmult/numbers.hpp"

namespace qmult {

// u + v*omega with omega = (-1 + sqrt(-3))/2, so omega^2 = -omega - 1.
// The norm u^2 - uv + v^2 is multiplicative and vanishes only at 0.
struct EisensteinInteger {
    Int u, v;
    bool operator==(const EisensteinInteger& o) const = default;
};

Int norm(const EisensteinInteger& z);
EisensteinInteger mul(const EisensteinInteger& a, const EisensteinInteger& b);
EisensteinInteger conj(const EisensteinInteger& z);
std::string str(const EisensteinInteger& z);

enum class SplitType { Inert, Split, Ramified };

struct PrimeClassification {
    SplitType type;
    // For split primes, an element of norm p found by bounded search.
    std::optional<EisensteinInteger> witness;
};

// How a rational prime behaves in Z[omega]: 3 ramifies, p = 1 mod 3 splits,
// p = 2 mod 3 stays inert. Throws on composite input.
PrimeClassification classify_prime(const Int& p);

// A pair (x,y) with x^2 - xy + y^2 = n, or nothing. With positive_domain the
// search runs over x,y >= 1; otherwise over all integers within the norm bound.
std::optional<std::pair<Int, Int>> representable_as_norm(const Int& n, bool positive_domain);

struct DivisibilityOutcome {
    bool pass = true;
    Int x, y;
};

// For all 1 <= x,y <= bound with p | x^2 - xy + y^2, checks that p divides
// both x and y; reports the first (x,y) where that fails. Meaningful for
// inert p (it holds); for split/ramified p it produces a counterexample.
DivisibilityOutcome inert_divisibility_check(const Int& p, const Int& bound);

}  // namespace qmult
