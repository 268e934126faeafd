#include "qmult/eisenstein.hpp"

#include "qmult/forms.hpp"

namespace qmult {

Int norm(const EisensteinInteger& z) { return z.u * z.u - z.u * z.v + z.v * z.v; }

EisensteinInteger mul(const EisensteinInteger& a, const EisensteinInteger& b) {
    // (a.u + a.v w)(b.u + b.v w) with w^2 = -w - 1.
    return {a.u * b.u - a.v * b.v, a.u * b.v + a.v * b.u - a.v * b.v};
}

EisensteinInteger conj(const EisensteinInteger& z) {
    // conj(w) = -1 - w, so conj(u + v w) = (u - v) - v w.
    return {z.u - z.v, -z.v};
}

std::string str(const EisensteinInteger& z) {
    return z.u.str() + (z.v < 0 ? "" : "+") + z.v.str() + "w";
}

PrimeClassification classify_prime(const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("classify_prime requires a prime, got " + p.str());
    if (p == 3) return {SplitType::Ramified, EisensteinInteger{1, -1}};  // norm(1 - w) = 3
    if (p % 3 == 2) return {SplitType::Inert, std::nullopt};
    // p = 1 mod 3: find an element of norm p; |u|,|v| <= sqrt(4p/3) suffices.
    const Int bound = ceil_sqrt_ratio(4 * p, 3);
    for (Int u = 0; u <= bound; ++u) {
        for (Int v = -bound; v <= bound; ++v) {
            const EisensteinInteger z{u, v};
            if (norm(z) == p) return {SplitType::Split, z};
        }
    }
    throw std::logic_error("no norm witness found for split prime " + p.str());
}

std::optional<std::pair<Int, Int>> representable_as_norm(const Int& n, bool positive_domain) {
    if (n < 1) throw std::invalid_argument("representable_as_norm requires n >= 1");
    if (positive_domain) {
        const BinaryQuadraticForm minus{1, -1, 1};
        const auto reps = representations(minus, n);
        if (reps.empty()) return std::nullopt;
        return std::make_pair(reps.front().x, reps.front().y);
    }
    const Int bound = ceil_sqrt_ratio(4 * n, 3);
    for (Int u = 0; u <= bound; ++u) {
        for (Int v = 0; v <= bound; ++v)
            if (u * u - u * v + v * v == n) return std::make_pair(u, v);
        for (Int v = -1; v >= -bound; --v)
            if (u * u - u * v + v * v == n) return std::make_pair(u, v);
    }
    return std::nullopt;
}

DivisibilityOutcome inert_divisibility_check(const Int& p, const Int& bound) {
    if (p < 2 || bound < 1) throw std::invalid_argument("inert_divisibility_check needs p >= 2, bound >= 1");
    for (Int x = 1; x <= bound; ++x) {
        for (Int y = 1; y <= bound; ++y) {
            const Int n = x * x - x * y + y * y;
            if (n % p != 0) continue;
            if (x % p != 0 || y % p != 0) return {false, x, y};
        }
    }
    return {};
}

}  // namespace qmult
