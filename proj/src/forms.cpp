#include "qmult/forms.hpp"

#include <algorithm>
#include <sstream>

namespace qmult {

Int BinaryQuadraticForm::evaluate(const Int& x, const Int& y) const {
    return a * x * x + b * x * y + c * y * y;
}

Polynomial BinaryQuadraticForm::evaluate(const Polynomial& x, const Polynomial& y) const {
    return Polynomial::constant(Rational(a)) * x * x + Polynomial::constant(Rational(b)) * x * y +
           Polynomial::constant(Rational(c)) * y * y;
}

BinaryQuadraticForm BinaryQuadraticForm::parse(const std::string& text) {
    std::vector<Int> parts;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ',')) {
        try {
            parts.emplace_back(piece);
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("malformed form coefficient: " + piece);
        }
    }
    if (parts.size() != 3) throw std::invalid_argument("form must be three comma-separated integers: " + text);
    return {parts[0], parts[1], parts[2]};
}

std::string BinaryQuadraticForm::str() const {
    return a.str() + "," + b.str() + "," + c.str();
}

Int representation_bound(const BinaryQuadraticForm& form, const Int& n) {
    // Completing the square: Q(x,y) >= (4ac-b^2)/(4a) * y^2 and symmetrically
    // for x, so Q >= (4ac-b^2)/(4*max(a,c)) * max(x,y)^2.
    const Int d = 4 * form.a * form.c - form.b * form.b;
    return ceil_sqrt_ratio(4 * n * std::max(form.a, form.c), d);
}

std::vector<Representation> representations(const BinaryQuadraticForm& form, const Int& n) {
    if (!form.is_positive_definite())
        throw std::invalid_argument("representation enumeration requires a positive definite form");
    if (n < 1) throw std::invalid_argument("representations require n >= 1");
    std::vector<Representation> out;
    const Int bound = representation_bound(form, n);
    for (Int x = 1; x <= bound; ++x)
        for (Int y = 1; y <= bound; ++y)
            if (form.evaluate(x, y) == n) out.push_back({n, x, y});
    return out;
}

RepresentationTable::RepresentationTable(const BinaryQuadraticForm& form, const Int& limit)
    : form_(form), limit_(limit) {
    if (!form.is_positive_definite())
        throw std::invalid_argument("representation table requires a positive definite form");
    if (limit < 1) throw std::invalid_argument("representation table requires limit >= 1");
    const Int bound = representation_bound(form, limit);
    for (Int x = 1; x <= bound; ++x) {
        for (Int y = 1; y <= bound; ++y) {
            const Int n = form.evaluate(x, y);
            if (n >= 1 && n <= limit) table_[n].push_back({n, x, y});
        }
    }
    // The scan order already yields lexicographic (x,y) per n.
}

const std::vector<Representation>& RepresentationTable::of(const Int& n) const {
    auto it = table_.find(n);
    return it == table_.end() ? empty_ : it->second;
}

}  // namespace qmult
