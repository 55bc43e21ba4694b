#include <hahn/polynomial.hpp>

#include <algorithm>

#include <hahn/errors.hpp>

namespace hahn
{

namespace
{

void trim(Monomial &m)
{
    while (!m.empty() && m.back() == 0) {
        m.pop_back();
    }
}

Monomial mul_monomials(const Monomial &a, const Monomial &b)
{
    Monomial r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] += b[i];
    }
    return r;
}

// a / b if b divides a.
bool div_monomials(const Monomial &a, const Monomial &b, Monomial &out)
{
    if (b.size() > a.size()) {
        return false;
    }
    out = a;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] > a[i]) {
            return false;
        }
        out[i] -= b[i];
    }
    trim(out);
    return true;
}

std::uint32_t degree_of(const Monomial &m, unsigned var)
{
    return var - 1 < m.size() ? m[var - 1] : 0;
}

} // namespace

unsigned total_degree(const Monomial &m)
{
    unsigned d = 0;
    for (auto e : m) {
        d += e;
    }
    return d;
}

bool GradedLexGreater::operator()(const Monomial &a, const Monomial &b) const
{
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) {
        return da > db;
    }
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t ea = i < a.size() ? a[i] : 0;
        const std::uint32_t eb = i < b.size() ? b[i] : 0;
        if (ea != eb) {
            return ea > eb;
        }
    }
    return false;
}

Polynomial::Polynomial(const Rational &c)
{
    if (c != 0) {
        terms_.emplace(Monomial{}, c);
    }
}

Polynomial Polynomial::variable(unsigned var)
{
    if (var == 0) {
        throw PreconditionError("transcendental indices start at 1");
    }
    Monomial m(var, 0);
    m[var - 1] = 1;
    return monomial(std::move(m), 1);
}

Polynomial Polynomial::monomial(Monomial m, const Rational &c)
{
    trim(m);
    Polynomial p;
    if (c != 0) {
        p.terms_.emplace(std::move(m), c);
    }
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_value() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial &Polynomial::leading_monomial() const
{
    if (terms_.empty()) {
        throw PreconditionError("leading monomial of the zero polynomial");
    }
    return terms_.begin()->first;
}

const Rational &Polynomial::leading_coefficient() const
{
    if (terms_.empty()) {
        throw PreconditionError("leading coefficient of the zero polynomial");
    }
    return terms_.begin()->second;
}

unsigned Polynomial::degree_in(unsigned var) const
{
    unsigned d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max<unsigned>(d, degree_of(m, var));
    }
    return d;
}

unsigned Polynomial::total_degree() const
{
    return terms_.empty() ? 0 : hahn::total_degree(terms_.begin()->first);
}

unsigned Polynomial::low_degree() const
{
    if (terms_.empty()) {
        return 0;
    }
    return hahn::total_degree(terms_.rbegin()->first);
}

std::set<unsigned> Polynomial::variables() const
{
    std::set<unsigned> vs;
    for (const auto &[m, c] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] != 0) {
                vs.insert(static_cast<unsigned>(i + 1));
            }
        }
    }
    return vs;
}

unsigned Polynomial::main_variable() const
{
    std::size_t v = 0;
    for (const auto &[m, c] : terms_) {
        v = std::max(v, m.size());
    }
    return static_cast<unsigned>(v);
}

void Polynomial::add_term(const Monomial &m, const Rational &c)
{
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
    for (const auto &[m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    Polynomial r;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            Monomial m = mul_monomials(ma, mb);
            trim(m);
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial &Polynomial::operator*=(const Polynomial &o)
{
    *this = *this * o;
    return *this;
}

Polynomial &Polynomial::operator*=(const Rational &q)
{
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, c] : terms_) {
        c *= q;
    }
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto &[m, c] : r.terms_) {
        c = -c;
    }
    return r;
}

Polynomial Polynomial::pow(unsigned n) const
{
    Polynomial result(1), base = *this;
    while (n != 0) {
        if (n & 1u) {
            result *= base;
        }
        n >>= 1u;
        if (n != 0) {
            base *= base;
        }
    }
    return result;
}

Polynomial Polynomial::substitute(unsigned var, const Rational &q) const
{
    Polynomial r;
    for (const auto &[m, c] : terms_) {
        const std::uint32_t d = degree_of(m, var);
        if (d == 0) {
            r.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        rest[var - 1] = 0;
        trim(rest);
        Rational factor;
        mpz_pow_ui(factor.get_num_mpz_t(), q.get_num_mpz_t(), d);
        mpz_pow_ui(factor.get_den_mpz_t(), q.get_den_mpz_t(), d);
        r.add_term(rest, c * factor);
    }
    return r;
}

std::vector<Polynomial> Polynomial::coefficients_in(unsigned var) const
{
    std::vector<Polynomial> out(degree_in(var) + 1);
    for (const auto &[m, c] : terms_) {
        const std::uint32_t d = degree_of(m, var);
        Monomial rest = m;
        if (d != 0) {
            rest[var - 1] = 0;
            trim(rest);
        }
        out[d].add_term(rest, c);
    }
    return out;
}

Polynomial Polynomial::from_coefficients(unsigned var, const std::vector<Polynomial> &cs)
{
    Polynomial r;
    const Polynomial x = variable(var);
    Polynomial power(1);
    for (const auto &c : cs) {
        r += c * power;
        power *= x;
    }
    return r;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first) {
            if (negative) {
                s += "-";
            }
        } else {
            s += negative ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += "a" + std::to_string(i + 1);
            if (m[i] != 1) {
                mono += "^" + std::to_string(m[i]);
            }
        }
        if (mono.empty()) {
            s += hahn::to_string(mag);
        } else if (mag == 1) {
            s += mono;
        } else {
            s += hahn::to_string(mag) + "*" + mono;
        }
    }
    return s;
}

bool try_divide(const Polynomial &a, const Polynomial &b, Polynomial &quotient)
{
    if (b.is_zero()) {
        throw DivisionByZero("polynomial division by zero");
    }
    quotient = Polynomial();
    if (b.is_constant()) {
        quotient = a * (1 / b.constant_value());
        return true;
    }
    Polynomial r = a;
    const Monomial &lb = b.leading_monomial();
    const Rational &cb = b.leading_coefficient();
    while (!r.is_zero()) {
        Monomial m;
        if (!div_monomials(r.leading_monomial(), lb, m)) {
            return false;
        }
        const Polynomial t = Polynomial::monomial(m, r.leading_coefficient() / cb);
        quotient += t;
        r -= t * b;
    }
    return true;
}

Polynomial divide_exact(const Polynomial &a, const Polynomial &b)
{
    Polynomial q;
    if (!try_divide(a, b, q)) {
        throw PreconditionError("inexact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
    }
    return q;
}

Polynomial pseudo_remainder(const Polynomial &a, const Polynomial &b, unsigned var)
{
    const auto bc = b.coefficients_in(var);
    const unsigned db = static_cast<unsigned>(bc.size() - 1);
    const Polynomial &lb = bc.back();
    const Polynomial x = Polynomial::variable(var);
    Polynomial r = a;
    while (!r.is_zero()) {
        const unsigned dr = r.degree_in(var);
        if (dr < db) {
            break;
        }
        const Polynomial lr = r.coefficients_in(var).back();
        r = r * lb - lr * x.pow(dr - db) * b;
    }
    return r;
}

Polynomial make_monic(const Polynomial &p)
{
    if (p.is_zero()) {
        return p;
    }
    return p * (1 / p.leading_coefficient());
}

Polynomial content_in(const Polynomial &p, unsigned var)
{
    Polynomial g;
    for (const auto &c : p.coefficients_in(var)) {
        if (c.is_zero()) {
            continue;
        }
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) {
            break;
        }
    }
    return g;
}

namespace
{

// Scale to coprime integer coefficients; keeps PRS coefficients from growing.
Polynomial integer_primitive(const Polynomial &p)
{
    mpz_class num, den = 1;
    for (const auto &[m, c] : p.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (num == 0) {
        return p;
    }
    Rational scale(den, num);
    scale.canonicalize();
    return p * scale;
}

Polynomial primitive_part(const Polynomial &p, unsigned var)
{
    return integer_primitive(divide_exact(p, content_in(p, var)));
}

using UniPoly = std::vector<Rational>;

void trim_uni(UniPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

// Degree of gcd over Q of two nonzero univariate polynomials.
std::size_t uni_gcd_degree(UniPoly a, UniPoly b)
{
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    while (!b.empty()) {
        while (a.size() >= b.size()) {
            const Rational f = a.back() / b.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[shift + i] -= f * b[i];
            }
            a.pop_back();
            trim_uni(a);
            if (a.empty()) {
                break;
            }
        }
        std::swap(a, b);
    }
    return a.size() - 1;
}

UniPoly image_in(const Polynomial &p, unsigned var, const std::set<unsigned> &others, int attempt)
{
    Polynomial q = p;
    for (unsigned u : others) {
        q = q.substitute(u, Rational(static_cast<long>((u * 7 + static_cast<unsigned>(attempt) * 13) % 31) + 2));
    }
    UniPoly out;
    for (const auto &c : q.coefficients_in(var)) {
        out.push_back(c.is_zero() ? Rational(0) : c.constant_value());
    }
    trim_uni(out);
    return out;
}

// True when gcd(a, b) provably does not involve a_var: some specialization
// of the other variables keeps both degrees in a_var and has coprime images.
bool coprime_in(const Polynomial &a, const Polynomial &b, unsigned var)
{
    std::set<unsigned> others = a.variables();
    const auto bv = b.variables();
    others.insert(bv.begin(), bv.end());
    others.erase(var);
    const std::size_t da = a.degree_in(var), db = b.degree_in(var);
    for (int attempt = 0; attempt < 3; ++attempt) {
        const UniPoly ia = image_in(a, var, others, attempt), ib = image_in(b, var, others, attempt);
        if (ia.size() != da + 1 || ib.size() != db + 1) {
            continue;
        }
        return uni_gcd_degree(ia, ib) == 0;
    }
    return false;
}

// Monic gcd over Q; remainders are kept monic so coefficients stay small.
UniPoly uni_gcd(UniPoly a, UniPoly b)
{
    const auto monic = [](UniPoly &p) {
        const Rational lc = p.back();
        for (auto &c : p) {
            c /= lc;
        }
    };
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    monic(b);
    while (!b.empty()) {
        while (a.size() >= b.size()) {
            const Rational f = a.back();
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                a[shift + i] -= f * b[i];
            }
            a.pop_back();
            trim_uni(a);
            if (a.empty()) {
                break;
            }
        }
        if (!a.empty()) {
            monic(a);
        }
        std::swap(a, b);
    }
    return a;
}

UniPoly to_uni(const Polynomial &p, unsigned var)
{
    UniPoly out;
    for (const auto &c : p.coefficients_in(var)) {
        out.push_back(c.is_zero() ? Rational(0) : c.constant_value());
    }
    trim_uni(out);
    return out;
}

} // namespace

Polynomial gcd(const Polynomial &a, const Polynomial &b)
{
    if (a.is_zero()) {
        return make_monic(b);
    }
    if (b.is_zero()) {
        return make_monic(a);
    }
    if (a.is_constant() || b.is_constant()) {
        return Polynomial(1);
    }
    Polynomial q;
    if (b.size() <= a.size() && try_divide(a, b, q)) {
        return make_monic(b);
    }
    if (a.size() <= b.size() && try_divide(b, a, q)) {
        return make_monic(a);
    }
    std::set<unsigned> vars = a.variables();
    const auto bv = b.variables();
    vars.insert(bv.begin(), bv.end());
    if (vars.size() == 1) {
        const unsigned v = *vars.begin();
        std::vector<Polynomial> cs;
        for (const auto &c : uni_gcd(to_uni(a, v), to_uni(b, v))) {
            cs.emplace_back(c);
        }
        return Polynomial::from_coefficients(v, cs);
    }
    for (unsigned u : vars) {
        // The gcd is free of a_u, so it divides the contents in a_u.
        const bool in_a = a.degree_in(u) > 0, in_b = b.degree_in(u) > 0;
        if (!in_a || !in_b || coprime_in(a, b, u)) {
            return gcd(in_a ? content_in(a, u) : a, in_b ? content_in(b, u) : b);
        }
    }
    const unsigned v = std::max(a.main_variable(), b.main_variable());
    if (a.degree_in(v) == 0) {
        return gcd(a, content_in(b, v));
    }
    if (b.degree_in(v) == 0) {
        return gcd(content_in(a, v), b);
    }
    const Polynomial ca = content_in(a, v), cb = content_in(b, v);
    const Polynomial c = gcd(ca, cb);
    Polynomial p = integer_primitive(divide_exact(a, ca)), r = integer_primitive(divide_exact(b, cb));
    if (p.degree_in(v) < r.degree_in(v)) {
        std::swap(p, r);
    }
    bool trivial = false;
    while (!r.is_zero()) {
        if (r.degree_in(v) == 0) {
            trivial = true;
            break;
        }
        Polynomial rem = pseudo_remainder(p, r, v);
        p = std::move(r);
        r = rem.is_zero() ? Polynomial() : primitive_part(rem, v);
    }
    if (trivial) {
        return make_monic(c);
    }
    return make_monic(primitive_part(p, v) * c);
}

bool try_sqrt(const Polynomial &p, Polynomial &root)
{
    root = Polynomial();
    if (p.is_zero()) {
        return true;
    }
    const Monomial &lm = p.leading_monomial();
    const Rational &lc = p.leading_coefficient();
    if (!is_perfect_square(lc)) {
        return false;
    }
    Monomial half(lm.size());
    for (std::size_t i = 0; i < lm.size(); ++i) {
        if (lm[i] % 2 != 0) {
            return false;
        }
        half[i] = lm[i] / 2;
    }
    const Polynomial lead = Polynomial::monomial(half, exact_sqrt(lc));
    const unsigned floor_degree = (p.low_degree() + 1) / 2;
    root = lead;
    const Polynomial twice_lead = lead * Rational(2);
    while (true) {
        const Polynomial r = p - root * root;
        if (r.is_zero()) {
            return true;
        }
        Monomial m;
        if (!div_monomials(r.leading_monomial(), twice_lead.leading_monomial(), m)) {
            return false;
        }
        if (hahn::total_degree(m) < floor_degree) {
            return false;
        }
        if (!GradedLexGreater{}(root.terms().rbegin()->first, m)) {
            return false;
        }
        root += Polynomial::monomial(m, r.leading_coefficient() / twice_lead.leading_coefficient());
    }
}

} // namespace hahn
