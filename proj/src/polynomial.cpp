#include "qmult/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qmult {

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

Monomial Monomial::variable(VarId v, std::uint32_t exp) {
    Monomial m;
    if (exp > 0) m.factors_.push_back({v, exp});
    return m;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (const auto& [v, e] : factors_) d += e;
    return d;
}

unsigned Monomial::degree_in(VarId v) const {
    for (const auto& [var, e] : factors_)
        if (var == v) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out;
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            out.factors_.push_back({a->first, a->second + b->second});
            ++a, ++b;
        }
    }
    return out;
}

Monomial Monomial::without(VarId v) const {
    Monomial out;
    for (const auto& f : factors_)
        if (f.first != v) out.factors_.push_back(f);
    return out;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    const unsigned da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    auto ia = a.factors_.begin();
    auto ib = b.factors_.begin();
    while (ia != a.factors_.end() && ib != b.factors_.end()) {
        if (ia->first != ib->first) {
            // The monomial holding a positive power of the earlier variable
            // is lexicographically larger.
            return ia->first < ib->first ? 1 : -1;
        }
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia, ++ib;
    }
    if (ia != a.factors_.end()) return 1;
    if (ib != b.factors_.end()) return -1;
    return 0;
}

// ---------------------------------------------------------------------------
// Polynomial basics
// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms_[Monomial()] = c;
    return p;
}

Polynomial Polynomial::variable(VarId v) {
    Polynomial p;
    p.terms_[Monomial::variable(v)] = 1;
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->first.total_degree();  // leading term has max degree
}

unsigned Polynomial::degree_in(VarId v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
    return d;
}

std::vector<VarId> Polynomial::variables() const {
    std::set<VarId> vars;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors()) vars.insert(v);
    return {vars.begin(), vars.end()};
}

std::optional<VarId> Polynomial::sole_variable() const {
    auto vars = variables();
    if (vars.size() == 1) return vars.front();
    return std::nullopt;
}

bool Polynomial::exceeds(const PolyCaps& caps) const {
    return total_degree() > caps.degree || variables().size() > caps.vars;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    out += o;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial out = *this;
    out -= o;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out;
    if (c == 0) return out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
    return out;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p.scaled(c); }

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial out = constant(1);
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) out *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return out;
}

std::optional<Polynomial> capped_mul(const Polynomial& p, const Polynomial& q, const PolyCaps& caps) {
    Polynomial r = p * q;
    if (r.exceeds(caps)) return std::nullopt;
    return r;
}

// ---------------------------------------------------------------------------
// Substitution and evaluation
// ---------------------------------------------------------------------------

Polynomial Polynomial::substituted(VarId v, const Rational& value) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.degree_in(v);
        if (e == 0) {
            out.add_term(m, c);
        } else {
            Rational scale = c;
            for (unsigned i = 0; i < e; ++i) scale *= value;
            out.add_term(m.without(v), scale);
        }
    }
    return out;
}

std::vector<Polynomial> Polynomial::coefficients_in(VarId v) const {
    std::vector<Polynomial> coeffs(degree_in(v) + 1);
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.degree_in(v);
        coeffs[e].add_term(m.without(v), c);
    }
    return coeffs;
}

Polynomial Polynomial::substituted(VarId v, const Polynomial& value) const {
    const auto coeffs = coefficients_in(v);
    // Horner in v.
    Polynomial out;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) out = out * value + *it;
    return out;
}

Rational Polynomial::evaluate(const std::function<Rational(VarId)>& assignment) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (const auto& [v, e] : m.factors()) {
            const Rational val = assignment(v);
            for (unsigned i = 0; i < e; ++i) term *= val;
        }
        total += term;
    }
    return total;
}

std::vector<Rational> Polynomial::univariate_coefficients(VarId v) const {
    std::vector<Rational> coeffs(degree_in(v) + 1, Rational(0));
    for (const auto& [m, c] : terms_) {
        const unsigned e = m.degree_in(v);
        if (m.without(v).total_degree() != 0)
            throw std::invalid_argument("polynomial is not univariate in the requested variable");
        coeffs[e] = c;
    }
    return coeffs;
}

// ---------------------------------------------------------------------------
// Normal forms and rendering
// ---------------------------------------------------------------------------

Polynomial Polynomial::normalized() const {
    if (terms_.empty()) return Polynomial();
    Int den_lcm = 1;
    for (const auto& [m, c] : terms_) {
        const Int d = rational_den(c);
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    Int num_gcd = 0;
    for (const auto& [m, c] : terms_) num_gcd = gcd(num_gcd, rational_num(c) * (den_lcm / rational_den(c)));
    Rational scale(den_lcm, num_gcd);
    if (terms_.begin()->second < 0) scale = -scale;
    return scaled(scale);
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) throw std::invalid_argument("monic of zero polynomial");
    return scaled(Rational(1) / terms_.begin()->second);
}

bool Polynomial::operator<(const Polynomial& o) const {
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        const int cmp = Monomial::compare(a->first, b->first);
        if (cmp != 0) return cmp < 0;
        if (a->second != b->second) return a->second < b->second;
        ++a, ++b;
    }
    return a == terms_.end() && b != o.terms_.end();
}

std::string Polynomial::str(const std::function<std::string(VarId)>& namer) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational coeff = c;
        if (first) {
            if (coeff < 0) {
                out << "-";
                coeff = -coeff;
            }
        } else {
            out << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        const bool unit_monomial = m.is_unit();
        if (coeff != 1 || unit_monomial) {
            out << rational_str(coeff);
            if (!unit_monomial) out << "*";
        }
        bool first_factor = true;
        for (const auto& [v, e] : m.factors()) {
            if (!first_factor) out << "*";
            first_factor = false;
            out << namer(v);
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

std::string Polynomial::str() const {
    return str([](VarId v) { return "x" + std::to_string(v); });
}

// ---------------------------------------------------------------------------
// Univariate algebra
// ---------------------------------------------------------------------------

namespace {

// Dense ascending coefficient vectors over Q, trailing zeros trimmed.
using Coeffs = std::vector<Rational>;

void trim(Coeffs& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Coeffs remainder(Coeffs a, const Coeffs& b) {
    while (a.size() >= b.size() && !a.empty()) {
        const Rational q = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        trim(a);
    }
    return a;
}

Polynomial from_coeffs(const Coeffs& c, VarId v) {
    Polynomial out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        out += Polynomial::constant(c[i]) * Polynomial::variable(v).pow(static_cast<unsigned>(i));
    }
    return out;
}

// Positive divisors of |n| (n != 0) by trial division.
std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> small, large;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

Polynomial univariate_gcd(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
    VarId v;
    const auto vp = p.sole_variable();
    const auto vq = q.sole_variable();
    if (vp && vq && *vp != *vq)
        throw std::invalid_argument("gcd arguments use different variables");
    if (vp) {
        v = *vp;
    } else if (vq) {
        v = *vq;
    } else {
        // Both constant: gcd is 1 unless one side is zero.
        if (!p.is_zero() && !q.is_zero()) return Polynomial::constant(1);
        return (p.is_zero() ? q : p).monic();
    }
    Coeffs a = p.is_zero() ? Coeffs{} : p.univariate_coefficients(v);
    Coeffs b = q.is_zero() ? Coeffs{} : q.univariate_coefficients(v);
    trim(a), trim(b);
    while (!b.empty()) {
        Coeffs r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return from_coeffs(a, v).monic();
}

std::vector<Rational> rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots of zero polynomial");
    if (p.is_constant()) return {};
    const auto vars = p.variables();
    if (vars.size() != 1) throw std::invalid_argument("rational_roots requires a univariate polynomial");
    const VarId v = vars.front();
    Coeffs coeffs = p.normalized().univariate_coefficients(v);

    std::vector<Rational> roots;
    std::size_t low = 0;
    while (low < coeffs.size() && coeffs[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low + 1 >= coeffs.size()) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    const Int a0 = rational_num(coeffs[low]);
    const Int an = rational_num(coeffs.back());
    const auto eval = [&](const Rational& x) {
        Rational acc = 0;
        for (std::size_t i = coeffs.size(); i-- > low;) acc = acc * x + coeffs[i];
        return acc;
    };
    for (const Int& num : positive_divisors(a0)) {
        for (const Int& den : positive_divisors(an)) {
            if (gcd(num, den) != 1) continue;
            const Rational cand(num, den);
            if (eval(cand) == 0) roots.push_back(cand);
            if (eval(-cand) == 0) roots.push_back(-cand);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

Polynomial resultant(const Polynomial& p, const Polynomial& q, VarId v) {
    const unsigned m = p.degree_in(v);
    const unsigned n = q.degree_in(v);
    if (m == 0 || n == 0)
        throw std::invalid_argument("resultant requires positive degree in the eliminated variable");
    const auto pc = p.coefficients_in(v);
    const auto qc = q.coefficients_in(v);
    const unsigned size = m + n;
    if (size > 16) throw std::invalid_argument("resultant matrix too large");

    // Sylvester matrix: n rows of p's coefficients, m rows of q's, descending.
    std::vector<std::vector<Polynomial>> mat(size, std::vector<Polynomial>(size));
    for (unsigned r = 0; r < n; ++r)
        for (unsigned j = 0; j <= m; ++j) mat[r][r + j] = pc[m - j];
    for (unsigned r = 0; r < m; ++r)
        for (unsigned j = 0; j <= n; ++j) mat[n + r][r + j] = qc[n - j];

    // Division-free determinant: D[mask] is the determinant of the first
    // popcount(mask) rows restricted to the columns in mask.
    std::vector<Polynomial> det(std::size_t(1) << size);
    det[0] = Polynomial::constant(1);
    for (std::uint32_t mask = 1; mask < det.size(); ++mask) {
        const unsigned row = static_cast<unsigned>(__builtin_popcount(mask)) - 1;
        Polynomial acc;
        unsigned pos = 0;
        for (unsigned col = 0; col < size; ++col) {
            if (!(mask >> col & 1)) continue;
            if (!mat[row][col].is_zero()) {
                Polynomial contrib = mat[row][col] * det[mask ^ (1u << col)];
                if (pos % 2 == 1) contrib = -contrib;
                acc += contrib;
            }
            ++pos;
        }
        det[mask] = std::move(acc);
    }
    return det[det.size() - 1];
}

Polynomial deflate(const Polynomial& p, VarId v, const Rational& root) {
    Coeffs coeffs = p.univariate_coefficients(v);
    if (coeffs.size() < 2) throw std::invalid_argument("deflate of constant polynomial");
    // Synthetic division by (v - root).
    Coeffs out(coeffs.size() - 1);
    Rational carry = 0;
    for (std::size_t i = coeffs.size(); i-- > 1;) {
        carry = coeffs[i] + carry * root;
        out[i - 1] = carry;
    }
    if (coeffs[0] + carry * root != 0) throw std::invalid_argument("deflate: value is not a root");
    return from_coeffs(out, v);
}

}  // namespace qmult
