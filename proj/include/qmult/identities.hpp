#pragma once

#include <array>
#include <optional>
#include <string>

#include "qmult/numbers.hpp"
#include "qmult/polynomial.hpp"

namespace qmult {

// slope*k + offset over the integers.
struct LinearPoly {
    Int slope, offset;

    Int at(const Int& k) const { return slope * k + offset; }
    Polynomial to_poly(VarId k) const;
    std::string str() const;
    bool operator==(const LinearPoly& o) const = default;
};

// Two argument pairs (u,v) and (s,t) with Q(u(k), v(k)) = Q(s(k), t(k)) as
// polynomials in k for Q = x^2 + xy + y^2, all four entries positive once
// k > k0. Equating f at both sides under an induction hypothesis turns the
// left pair into a monic quadratic in the unknown f(u(k)).
struct IdentityPair {
    std::string name;
    LinearPoly u, v, s, t;
    Int k0;
};

// The two odd-argument and two even-argument pairs used in the induction.
const std::array<IdentityPair, 4>& induction_identities();

struct IdentityCheck {
    bool pass = true;
    Polynomial difference;  // Q(u,v) - Q(s,t), zero iff pass
};

// Expands both sides over Z[k] and compares exactly; also checks that all
// four entries are >= 1 for every k > k0.
IdentityCheck check_identity(const IdentityPair& pair);

struct VietaRoots {
    LinearPoly r1, r2;
};

// Roots of t^2 + v(k) t + (v(k)^2 - Q(s(k),t(k))) = 0 as integer linear
// polynomials, verified symbolically via Vieta (sum and product). Throws if
// the quadratic does not split this way.
VietaRoots vieta_roots(const IdentityPair& pair);

struct CommonRootCheck {
    bool pass = true;
    std::optional<Int> failed_k;
};

// For every integer k in [k_min, k_max], the root sets of the two pairs must
// intersect exactly in {u(k)}; also verifies symbolically that the spurious
// roots differ from each other and from u(k) throughout the range.
CommonRootCheck common_root_unique(const IdentityPair& a, const IdentityPair& b, const Int& k_min,
                                   const Int& k_max);

}  // namespace qmult
