#pragma once

#include <map>
#include <string>
#include <vector>

#include "qmult/numbers.hpp"
#include "qmult/polynomial.hpp"

namespace qmult {

// Q(x,y) = a*x^2 + b*x*y + c*y^2 with integer coefficients.
struct BinaryQuadraticForm {
    Int a, b, c;

    Int evaluate(const Int& x, const Int& y) const;
    Polynomial evaluate(const Polynomial& x, const Polynomial& y) const;
    Int discriminant() const { return b * b - 4 * a * c; }
    bool is_positive_definite() const { return a > 0 && discriminant() < 0; }

    // "a,b,c", e.g. "1,-1,1"; throws std::invalid_argument on bad input.
    static BinaryQuadraticForm parse(const std::string& text);
    std::string str() const;

    bool operator==(const BinaryQuadraticForm& o) const = default;
};

// One solution of Q(x,y) = n over positive integers.
struct Representation {
    Int n, x, y;
    bool operator==(const Representation& o) const = default;
};

// All (x,y) with x,y >= 1 and Q(x,y) = n, in lexicographic order.
// Complete: positive definiteness gives Q(x,y) >= lambda * max(x,y)^2 with
// lambda = (4ac - b^2) / (4*max(a,c)), bounding the search rectangle.
// Throws on non-positive-definite forms or n < 1.
std::vector<Representation> representations(const BinaryQuadraticForm& form, const Int& n);

// Search bound: every representation of n has max(x,y) <= this value.
Int representation_bound(const BinaryQuadraticForm& form, const Int& n);

// Representations of every n <= N in one table; immutable once built.
class RepresentationTable {
public:
    RepresentationTable(const BinaryQuadraticForm& form, const Int& limit);

    const BinaryQuadraticForm& form() const { return form_; }
    const Int& limit() const { return limit_; }
    // Empty list when n has no representation.
    const std::vector<Representation>& of(const Int& n) const;
    const std::map<Int, std::vector<Representation>>& entries() const { return table_; }

private:
    BinaryQuadraticForm form_;
    Int limit_;
    std::map<Int, std::vector<Representation>> table_;
    std::vector<Representation> empty_;
};

}  // namespace qmult
