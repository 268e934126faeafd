#include "qmult/families.hpp"

namespace qmult {

Family Family::prime_indicator(const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("prime indicator requires a prime, got " + p.str());
    return Family(Kind::PrimeIndicator, p);
}

Rational Family::value(const Int& n) const {
    if (n < 1) throw std::invalid_argument("family values are defined on positive integers");
    switch (kind_) {
        case Kind::Identity: return Rational(n);
        case Kind::ConstantOne: return 1;
        case Kind::PrimeIndicator: return n % p_ == 0 ? 0 : 1;
    }
    throw std::logic_error("unreachable");
}

std::string Family::spec_string() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::ConstantOne: return "const1";
        case Kind::PrimeIndicator: return "fp:" + p_.str();
    }
    throw std::logic_error("unreachable");
}

Family Family::parse(const std::string& text) {
    if (text == "identity") return identity();
    if (text == "const1") return constant_one();
    if (text.rfind("fp:", 0) == 0) {
        Int p;
        try {
            p = Int(text.substr(3));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("malformed family: " + text);
        }
        return prime_indicator(p);
    }
    throw std::invalid_argument("unknown family (expected identity, const1 or fp:<p>): " + text);
}

CheckOutcome verify_family(const Family& family, const BinaryQuadraticForm& form, const Int& bound) {
    if (bound < 1) throw std::invalid_argument("verify_family requires bound >= 1");
    for (Int x = 1; x <= bound; ++x) {
        for (Int y = 1; y <= bound; ++y) {
            const Int n = form.evaluate(x, y);
            if (n < 1) return {false, Witness{x, y}};  // escaped the positive domain
            const Rational fx = family.value(x);
            const Rational fy = family.value(y);
            const Rational rhs = Rational(form.a) * fx * fx + Rational(form.b) * fx * fy + Rational(form.c) * fy * fy;
            if (family.value(n) != rhs) return {false, Witness{x, y}};
        }
    }
    return {};
}

CheckOutcome multiplicativity_check(const std::function<Rational(const Int&)>& f, const Int& bound) {
    if (bound < 1) throw std::invalid_argument("multiplicativity_check requires bound >= 1");
    for (Int m = 1; m <= bound; ++m) {
        for (Int n = m; n <= bound; ++n) {
            if (gcd(m, n) != 1) continue;
            if (f(m * n) != f(m) * f(n)) return {false, Witness{m, n}};
        }
    }
    return {};
}

CheckOutcome multiplicativity_check(const Family& family, const Int& bound) {
    return multiplicativity_check([&](const Int& n) { return family.value(n); }, bound);
}

}  // namespace qmult
