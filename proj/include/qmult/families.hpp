#pragma once

#include <functional>
#include <optional>
#include <string>

#include "qmult/forms.hpp"
#include "qmult/numbers.hpp"

namespace qmult {

// The candidate solution families: n -> n, n -> 1, and the indicator of
// integers coprime to a fixed prime p (0 on multiples of p, 1 elsewhere).
class Family {
public:
    enum class Kind { Identity, ConstantOne, PrimeIndicator };

    static Family identity() { return Family(Kind::Identity, 0); }
    static Family constant_one() { return Family(Kind::ConstantOne, 0); }
    // Throws unless p is prime.
    static Family prime_indicator(const Int& p);

    Kind kind() const { return kind_; }
    const Int& prime() const { return p_; }

    Rational value(const Int& n) const;

    // "identity" | "const1" | "fp:<p>"
    std::string spec_string() const;
    static Family parse(const std::string& text);

    bool operator==(const Family& o) const = default;

private:
    Family(Kind kind, Int p) : kind_(kind), p_(std::move(p)) {}
    Kind kind_;
    Int p_;
};

struct Witness {
    Int first, second;
};

struct CheckOutcome {
    bool pass = true;
    std::optional<Witness> witness;
};

// Exhaustive check of f(Q(x,y)) = Q(f(x),f(y)) over 1 <= x,y <= bound;
// reports the lexicographically first failing pair.
CheckOutcome verify_family(const Family& family, const BinaryQuadraticForm& form, const Int& bound);

// f(mn) = f(m) f(n) for all coprime m,n <= bound; first failing (m,n).
CheckOutcome multiplicativity_check(const Family& family, const Int& bound);
CheckOutcome multiplicativity_check(const std::function<Rational(const Int&)>& f, const Int& bound);

}  // namespace qmult
