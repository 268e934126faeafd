#include "qmult/identities.hpp"

#include "qmult/forms.hpp"

namespace qmult {

namespace {

constexpr VarId kVarK = 0;  // induction index k
constexpr VarId kVarT = 1;  // unknown function value

const BinaryQuadraticForm kPlusForm{1, 1, 1};

Polynomial rhs_poly(const IdentityPair& pair) {
    return kPlusForm.evaluate(pair.s.to_poly(kVarK), pair.t.to_poly(kVarK));
}

}  // namespace

Polynomial LinearPoly::to_poly(VarId k) const {
    return Polynomial::constant(Rational(slope)) * Polynomial::variable(k) +
           Polynomial::constant(Rational(offset));
}

std::string LinearPoly::str() const {
    if (slope == 0) return offset.str();
    std::string out = (slope == 1 ? "" : slope == -1 ? "-" : slope.str() + "*") + std::string("k");
    if (offset > 0) out += "+" + offset.str();
    if (offset < 0) out += offset.str();
    return out;
}

const std::array<IdentityPair, 4>& induction_identities() {
    static const std::array<IdentityPair, 4> pairs = {{
        {"odd/shift-3", {2, 1}, {1, -3}, {2, -3}, {1, 2}, 3},
        {"odd/shift-10", {2, 1}, {1, -10}, {2, -11}, {1, 5}, 10},
        {"even/shift-7", {2, 0}, {1, -7}, {2, -8}, {1, 3}, 7},
        {"even/shift-14", {2, 0}, {1, -14}, {2, -16}, {1, 6}, 14},
    }};
    return pairs;
}

IdentityCheck check_identity(const IdentityPair& pair) {
    const Polynomial lhs = kPlusForm.evaluate(pair.u.to_poly(kVarK), pair.v.to_poly(kVarK));
    const Polynomial diff = lhs - rhs_poly(pair);
    if (!diff.is_zero()) return {false, diff};
    // Positivity past the threshold: all entries are linear with positive
    // slope, so checking k0 + 1 suffices.
    for (const LinearPoly* entry : {&pair.u, &pair.v, &pair.s, &pair.t}) {
        if (entry->slope <= 0 || entry->at(pair.k0 + 1) < 1)
            return {false, Polynomial::constant(1)};
    }
    return {};
}

VietaRoots vieta_roots(const IdentityPair& pair) {
    const auto checked = check_identity(pair);
    if (!checked.pass) throw std::invalid_argument("vieta_roots on a failing identity pair: " + pair.name);

    // Quadratic t^2 + v t + (v^2 - R) where R = Q(s,t) = Q(u,v).
    const Polynomial v = pair.v.to_poly(kVarK);
    const Polynomial t = Polynomial::variable(kVarT);
    const Polynomial quadratic = t * t + v * t + v * v - rhs_poly(pair);

    const LinearPoly r1 = pair.u;
    const LinearPoly r2{-pair.v.slope - pair.u.slope, -pair.v.offset - pair.u.offset};

    // Vieta: r1 + r2 = -v and r1*r2 = v^2 - R, i.e. (t - r1)(t - r2) equals
    // the quadratic as a polynomial in k and t.
    const Polynomial split = (t - r1.to_poly(kVarK)) * (t - r2.to_poly(kVarK));
    if (!(split - quadratic).is_zero())
        throw std::logic_error("quadratic does not split into the claimed integer roots: " + pair.name);
    return {r1, r2};
}

CommonRootCheck common_root_unique(const IdentityPair& a, const IdentityPair& b, const Int& k_min,
                                   const Int& k_max) {
    const VietaRoots ra = vieta_roots(a);
    const VietaRoots rb = vieta_roots(b);

    // Both pairs must target the same main root u(k).
    if (!(ra.r1 == rb.r1)) return {false, std::nullopt};
    // The spurious roots differ as polynomials (their difference is a nonzero
    // constant for the shipped pairs) and never collide with u(k) in range.
    if (ra.r2 == rb.r2) return {false, std::nullopt};

    const auto linear_hits_in_range = [&](const LinearPoly& lhs, const LinearPoly& rhs) {
        // lhs(k) == rhs(k) for an integer k in [k_min, k_max]?
        const Int ds = lhs.slope - rhs.slope;
        const Int doff = rhs.offset - lhs.offset;
        if (ds == 0) return doff == 0;
        if (doff % ds != 0) return false;
        const Int k = doff / ds;
        return k >= k_min && k <= k_max;
    };
    if (linear_hits_in_range(ra.r2, ra.r1) || linear_hits_in_range(rb.r2, rb.r1) ||
        linear_hits_in_range(ra.r2, rb.r2))
        return {false, std::nullopt};

    for (Int k = k_min; k <= k_max; ++k) {
        const Int main = ra.r1.at(k);
        const Int spur_a = ra.r2.at(k);
        const Int spur_b = rb.r2.at(k);
        // Intersection of {main, spur_a} and {main, spur_b} must be {main}.
        if (spur_a == spur_b || spur_a == main || spur_b == main) return {false, k};
    }
    return {};
}

}  // namespace qmult
