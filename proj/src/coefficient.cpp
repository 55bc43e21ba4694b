#include <hahn/coefficient.hpp>

#include <hahn/errors.hpp>

namespace hahn
{

namespace
{

// Scale so that den has leading coefficient 1.
void normalize_sign(Polynomial &num, Polynomial &den)
{
    const Rational lc = den.leading_coefficient();
    if (lc != 1) {
        const Rational inv = 1 / lc;
        num *= inv;
        den *= inv;
    }
}

} // namespace

Coefficient Coefficient::variable(unsigned var)
{
    return Coefficient(Polynomial::variable(var));
}

Coefficient Coefficient::fraction(const Polynomial &num, const Polynomial &den)
{
    if (den.is_zero()) {
        throw DivisionByZero("coefficient with zero denominator");
    }
    Coefficient c;
    if (num.is_zero()) {
        return c;
    }
    if (den.is_constant()) {
        c.num_ = num * (1 / den.constant_value());
        c.den_ = Polynomial(1);
        return c;
    }
    const Polynomial g = gcd(num, den);
    c.num_ = divide_exact(num, g);
    c.den_ = divide_exact(den, g);
    normalize_sign(c.num_, c.den_);
    return c;
}

Rational Coefficient::as_rational() const
{
    if (!is_rational()) {
        throw UnsupportedError("coefficient " + to_string() + " is not a rational constant");
    }
    return num_.constant_value() / den_.constant_value();
}

std::set<unsigned> Coefficient::variables() const
{
    auto vs = num_.variables();
    auto dv = den_.variables();
    vs.insert(dv.begin(), dv.end());
    return vs;
}

Coefficient &Coefficient::operator+=(const Coefficient &o)
{
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return *this = o;
    }
    if (den_ == o.den_) {
        Polynomial num = num_ + o.num_;
        if (den_.is_constant()) {
            num_ = std::move(num);
            return *this;
        }
        return *this = fraction(num, den_);
    }
    const Polynomial g = gcd(den_, o.den_);
    const Polynomial ca = divide_exact(o.den_, g);
    const Polynomial cb = divide_exact(den_, g);
    return *this = fraction(num_ * ca + o.num_ * cb, den_ * ca);
}

Coefficient &Coefficient::operator-=(const Coefficient &o)
{
    return *this += -o;
}

Coefficient &Coefficient::operator*=(const Coefficient &o)
{
    if (is_zero() || o.is_zero()) {
        return *this = Coefficient();
    }
    if (den_.is_constant() && o.den_.is_constant()) {
        num_ *= o.num_;
        return *this;
    }
    const Polynomial g1 = gcd(num_, o.den_);
    const Polynomial g2 = gcd(o.num_, den_);
    Polynomial num = divide_exact(num_, g1) * divide_exact(o.num_, g2);
    Polynomial den = divide_exact(den_, g2) * divide_exact(o.den_, g1);
    normalize_sign(num, den);
    num_ = std::move(num);
    den_ = std::move(den);
    return *this;
}

Coefficient Coefficient::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero("inverse of the zero coefficient");
    }
    Coefficient c;
    c.num_ = den_;
    c.den_ = num_;
    normalize_sign(c.num_, c.den_);
    return c;
}

Coefficient &Coefficient::operator/=(const Coefficient &o)
{
    if (o.is_zero()) {
        throw DivisionByZero("coefficient division by zero");
    }
    return *this *= o.inverse();
}

Coefficient Coefficient::operator-() const
{
    Coefficient c = *this;
    c.num_ = -c.num_;
    return c;
}

Coefficient Coefficient::pow(long n) const
{
    if (n < 0) {
        return inverse().pow(-n);
    }
    Coefficient c;
    c.num_ = num_.pow(static_cast<unsigned>(n));
    c.den_ = den_.pow(static_cast<unsigned>(n));
    return c;
}

std::string Coefficient::to_string() const
{
    if (den_.is_constant()) {
        return num_.to_string();
    }
    auto wrap = [](const Polynomial &p) {
        const std::string s = p.to_string();
        return p.size() > 1 || s.find_first_of("*/") != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(num_) + "/" + wrap(den_);
}

bool Coefficient::is_atomic() const
{
    if (!den_.is_constant()) {
        return false;
    }
    if (num_.size() > 1) {
        return false;
    }
    return true;
}

bool Coefficient::has_negative_lead() const
{
    return !num_.is_zero() && num_.leading_coefficient() < 0;
}

std::set<unsigned> variables_of(const Coefficient &c)
{
    return c.variables();
}

std::optional<Coefficient> coefficient_sqrt(const Coefficient &c)
{
    Polynomial n, d;
    if (!try_sqrt(c.numerator(), n) || !try_sqrt(c.denominator(), d)) {
        return std::nullopt;
    }
    return Coefficient::fraction(n, d);
}

std::string to_string(const Place &p)
{
    return "a" + std::to_string(p.var) + "->" + to_string(p.target);
}

std::optional<Coefficient> apply_place(const Coefficient &c, const Place &p)
{
    const Polynomial den = c.denominator().substitute(p.var, p.target);
    if (den.is_zero()) {
        return std::nullopt;
    }
    return Coefficient::fraction(c.numerator().substitute(p.var, p.target), den);
}

PlaceCandidates::PlaceCandidates() = default;

PlaceCandidates PlaceCandidates::list(std::vector<Rational> values)
{
    PlaceCandidates c;
    c.kind_ = Kind::list;
    c.values_ = std::move(values);
    return c;
}

PlaceCandidates PlaceCandidates::seeded(std::uint64_t seed)
{
    PlaceCandidates c;
    c.kind_ = Kind::seeded;
    c.rng_.seed(seed);
    return c;
}

std::optional<Rational> PlaceCandidates::next()
{
    switch (kind_) {
    case Kind::enumeration: {
        const std::size_t i = index_++;
        // 0, 1, -1, 2, -2, ...
        const long mag = static_cast<long>((i + 1) / 2);
        return Rational(i % 2 == 1 ? mag : -mag);
    }
    case Kind::list:
        if (index_ >= values_.size()) {
            return std::nullopt;
        }
        return values_[index_++];
    case Kind::seeded: {
        std::uniform_int_distribution<long> num(-9, 8);
        std::uniform_int_distribution<long> den(1, 4);
        long p = num(rng_);
        if (p >= 0) {
            ++p;
        }
        Rational q(p, den(rng_));
        q.canonicalize();
        return q;
    }
    }
    return std::nullopt;
}

Place finite_place_for(std::span<const Coefficient> cs, unsigned var, PlaceCandidates candidates,
                       std::size_t max_candidates)
{
    for (std::size_t tried = 0; tried < max_candidates; ++tried) {
        auto q = candidates.next();
        if (!q) {
            throw BudgetExceeded("candidate list exhausted before finding a finite place for a" + std::to_string(var));
        }
        if (*q == 0) {
            continue;
        }
        const Place p{var, *q};
        bool finite = true;
        for (const auto &c : cs) {
            if (c.denominator().substitute(var, *q).is_zero()) {
                finite = false;
                break;
            }
        }
        if (finite) {
            return p;
        }
    }
    throw BudgetExceeded("no finite place for a" + std::to_string(var) + " within the candidate budget");
}

} // namespace hahn
