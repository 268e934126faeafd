#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmult/numbers.hpp"

namespace qmult {

using VarId = std::uint32_t;

// Product of variable powers, factors sorted by variable id, exponents > 0.
class Monomial {
public:
    using Factor = std::pair<VarId, std::uint32_t>;

    Monomial() = default;
    static Monomial variable(VarId v, std::uint32_t exp = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    unsigned total_degree() const;
    unsigned degree_in(VarId v) const;
    bool contains(VarId v) const { return degree_in(v) > 0; }

    Monomial times(const Monomial& other) const;
    Monomial without(VarId v) const;

    // Graded lexicographic three-way compare: total degree first, then the
    // first differing variable (smaller id = more significant) with the
    // larger exponent winning. Returns <0, 0, >0 for a < b, a == b, a > b.
    static int compare(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }

private:
    std::vector<Factor> factors_;
};

struct PolyCaps {
    unsigned degree = 16;  // total degree cap
    unsigned vars = 3;     // distinct variable cap
};

// Sparse multivariate polynomial over the rationals, terms kept in
// descending graded-lex order so the leading term is first.
class Polynomial {
public:
    struct TermOrder {
        bool operator()(const Monomial& a, const Monomial& b) const {
            return Monomial::compare(a, b) > 0;
        }
    };
    using TermMap = std::map<Monomial, Rational, TermOrder>;

    Polynomial() = default;  // zero
    static Polynomial constant(const Rational& c);
    static Polynomial constant(long c) { return constant(Rational(c)); }
    static Polynomial variable(VarId v);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Preserves exactness: zero polynomial evaluates to 0.
    Rational constant_value() const;

    unsigned total_degree() const;
    unsigned degree_in(VarId v) const;
    std::vector<VarId> variables() const;
    std::optional<VarId> sole_variable() const;
    bool exceeds(const PolyCaps& caps) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned e) const;

    Polynomial substituted(VarId v, const Rational& value) const;
    Polynomial substituted(VarId v, const Polynomial& value) const;
    Rational evaluate(const std::function<Rational(VarId)>& assignment) const;

    // Coefficients of v^0, v^1, ... ; throws if a variable other than v occurs.
    std::vector<Rational> univariate_coefficients(VarId v) const;
    // Coefficients of v^0, v^1, ... as polynomials in the remaining variables.
    std::vector<Polynomial> coefficients_in(VarId v) const;

    // Primitive integer-coefficient scalar multiple with positive leading
    // coefficient; canonical representative of the equation p = 0.
    Polynomial normalized() const;
    // Leading coefficient scaled to 1 (nonzero input).
    Polynomial monic() const;

    std::string str(const std::function<std::string(VarId)>& namer) const;
    std::string str() const;  // variables rendered x<N>

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }
    bool operator<(const Polynomial& o) const;  // arbitrary total order for sets

private:
    void add_term(const Monomial& m, const Rational& c);
    TermMap terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

// Multiplication that reports cap overflow instead of producing an
// oversized result; std::nullopt means "defer this computation".
std::optional<Polynomial> capped_mul(const Polynomial& p, const Polynomial& q, const PolyCaps& caps);

// Monic gcd over Q[v]; arguments must be univariate in the same variable
// (constants allowed), not both zero.
Polynomial univariate_gcd(const Polynomial& p, const Polynomial& q);

// All rational roots of a nonzero univariate polynomial, ascending, each
// listed once, found via the rational root theorem on the primitive form.
std::vector<Rational> rational_roots(const Polynomial& p);

// Resultant with respect to v via the Sylvester matrix (division-free
// determinant). Both arguments must have positive degree in v.
Polynomial resultant(const Polynomial& p, const Polynomial& q, VarId v);

// Exact division of a univariate p by (v - root); throws if root is not a
// root of p.
Polynomial deflate(const Polynomial& p, VarId v, const Rational& root);

}  // namespace qmult
