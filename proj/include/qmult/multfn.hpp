#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmult/numbers.hpp"
#include "qmult/polynomial.hpp"

namespace qmult {

struct PrimePower {
    Int value;  // prime^exp
    Int prime;
    unsigned exp;
};

// Canonical factorization, primes ascending; factorize(1) is empty.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// True iff n = p^k for a prime p and k >= 1; fills *out when given.
bool is_prime_power(const Int& n, PrimePower* out = nullptr);

// A multiplicative function known only partially: one slot per prime power
// <= limit, each either a fixed rational or a free variable. Values at
// composites are never stored; they are products of prime-power slots, and
// f(1) = 1 always.
class PartialMultiplicativeFunction {
public:
    explicit PartialMultiplicativeFunction(const Int& limit);

    const Int& limit() const { return limit_; }

    // Prime powers ordered by (prime, exponent); index = variable id.
    const std::vector<PrimePower>& prime_powers() const { return powers_; }
    VarId var_of(const Int& prime_power) const;
    const PrimePower& power_of(VarId v) const { return powers_.at(v); }
    std::string var_name(VarId v) const { return "f(" + powers_.at(v).value.str() + ")"; }

    bool is_determined(VarId v) const { return values_[v].has_value(); }
    const std::optional<Rational>& value_of(VarId v) const { return values_[v]; }

    enum class AssignResult { Ok, Contradiction };
    // Throws if the argument is not a prime power <= limit.
    AssignResult assign(const Int& prime_power, const Rational& value);
    AssignResult assign(VarId v, const Rational& value);

    // f(n) as a polynomial in the undetermined prime-power slots of n:
    // a rational constant times a (possibly empty) monomial.
    Polynomial value_at(const Int& n) const;

    // {"f(p^k)": "value" | "free"} with prime powers ascending by value.
    nlohmann::ordered_json to_json() const;

private:
    Int limit_;
    std::vector<PrimePower> powers_;            // (prime, exp) ascending
    std::vector<std::optional<Rational>> values_;
    std::vector<std::pair<Int, VarId>> by_value_;  // sorted by prime-power value
};

}  // namespace qmult
