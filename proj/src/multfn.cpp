#include "qmult/multfn.hpp"

#include <algorithm>

namespace qmult {

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
    std::vector<std::pair<Int, unsigned>> out;
    Int m = n;
    const auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (Int d = 5; d * d <= m; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (m > 1) out.push_back({m, 1});
    return out;
}

bool is_prime_power(const Int& n, PrimePower* out) {
    if (n < 2) return false;
    const auto factors = factorize(n);
    if (factors.size() != 1) return false;
    if (out) *out = {n, factors[0].first, factors[0].second};
    return true;
}

PartialMultiplicativeFunction::PartialMultiplicativeFunction(const Int& limit) : limit_(limit) {
    if (limit < 1) throw std::invalid_argument("limit must be >= 1");
    if (limit > 10'000'000) throw std::invalid_argument("limit too large for the prime-power table");
    const auto primes = primes_up_to(static_cast<std::uint64_t>(limit));
    for (const auto p : primes) {
        Int power = p;
        unsigned e = 1;
        while (power <= limit_) {
            powers_.push_back({power, Int(p), e});
            power *= p;
            ++e;
        }
    }
    values_.resize(powers_.size());
    for (VarId v = 0; v < powers_.size(); ++v) by_value_.push_back({powers_[v].value, v});
    std::sort(by_value_.begin(), by_value_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

VarId PartialMultiplicativeFunction::var_of(const Int& prime_power) const {
    const auto it = std::lower_bound(by_value_.begin(), by_value_.end(), prime_power,
                                     [](const auto& e, const Int& v) { return e.first < v; });
    if (it == by_value_.end() || it->first != prime_power)
        throw std::invalid_argument("not a prime power within the limit: " + prime_power.str());
    return it->second;
}

PartialMultiplicativeFunction::AssignResult PartialMultiplicativeFunction::assign(const Int& prime_power,
                                                                                  const Rational& value) {
    if (prime_power > limit_ || !is_prime_power(prime_power))
        throw std::invalid_argument("assign requires a prime power <= limit, got " + prime_power.str());
    return assign(var_of(prime_power), value);
}

PartialMultiplicativeFunction::AssignResult PartialMultiplicativeFunction::assign(VarId v, const Rational& value) {
    auto& slot = values_.at(v);
    if (slot.has_value()) return *slot == value ? AssignResult::Ok : AssignResult::Contradiction;
    slot = value;
    return AssignResult::Ok;
}

Polynomial PartialMultiplicativeFunction::value_at(const Int& n) const {
    if (n < 1 || n > limit_) throw std::invalid_argument("value_at requires 1 <= n <= limit");
    Polynomial out = Polynomial::constant(1);
    for (const auto& [p, e] : factorize(n)) {
        Int pe = 1;
        for (unsigned i = 0; i < e; ++i) pe *= p;
        const VarId v = var_of(pe);
        if (values_[v].has_value()) {
            out = out.scaled(*values_[v]);
        } else {
            out *= Polynomial::variable(v);
        }
    }
    return out;
}

nlohmann::ordered_json PartialMultiplicativeFunction::to_json() const {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [value, v] : by_value_) {
        const std::string key = "f(" + value.str() + ")";
        if (values_[v].has_value()) {
            out[key] = rational_str(*values_[v]);
        } else {
            out[key] = "free";
        }
    }
    return out;
}

}  // namespace qmult
