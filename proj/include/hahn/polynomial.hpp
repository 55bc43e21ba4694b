#ifndef HAHN_POLYNOMIAL_HPP
#define HAHN_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <hahn/rational.hpp>

namespace hahn
{

// Exponent vector of a monomial in a1, a2, ...; entry i is the degree of
// a_{i+1}. Trailing zeros are always trimmed so equal monomials compare equal.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial &m);

// Graded-lex order, largest first: total degree, then lexicographic with a1
// most significant.
struct GradedLexGreater {
    bool operator()(const Monomial &a, const Monomial &b) const;
};

// Sparse multivariate polynomial over Q in the transcendentals a1..am.
// Variable indices in the public interface are 1-based, matching "a1".
class Polynomial
{
public:
    using TermMap = std::map<Monomial, Rational, GradedLexGreater>;

    Polynomial() = default;
    Polynomial(const Rational &c);
    Polynomial(long c) : Polynomial(Rational(c)) {}

    static Polynomial variable(unsigned var);
    static Polynomial monomial(Monomial m, const Rational &c);

    const TermMap &terms() const noexcept
    {
        return terms_;
    }
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }
    bool is_constant() const;
    // Constant term if is_constant(), otherwise undefined.
    Rational constant_value() const;
    std::size_t size() const noexcept
    {
        return terms_.size();
    }

    const Monomial &leading_monomial() const;
    const Rational &leading_coefficient() const;

    unsigned degree_in(unsigned var) const;
    unsigned total_degree() const;
    // Smallest total degree of a term (0 for the zero polynomial).
    unsigned low_degree() const;
    std::set<unsigned> variables() const;
    // Largest variable index occurring, 0 for constants.
    unsigned main_variable() const;

    Polynomial &operator+=(const Polynomial &o);
    Polynomial &operator-=(const Polynomial &o);
    Polynomial &operator*=(const Polynomial &o);
    Polynomial &operator*=(const Rational &q);

    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        return a += b;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        return a -= b;
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
    friend Polynomial operator*(Polynomial a, const Rational &q)
    {
        return a *= q;
    }
    Polynomial operator-() const;

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned n) const;

    // Substitute a_var := q.
    Polynomial substitute(unsigned var, const Rational &q) const;

    // Coefficients with respect to a_var: result[d] is the coefficient of a_var^d.
    std::vector<Polynomial> coefficients_in(unsigned var) const;
    static Polynomial from_coefficients(unsigned var, const std::vector<Polynomial> &cs);

    std::string to_string() const;

private:
    void add_term(const Monomial &m, const Rational &c);

    TermMap terms_;
};

// Exact quotient a / b; throws PreconditionError when b does not divide a.
Polynomial divide_exact(const Polynomial &a, const Polynomial &b);

// Whether b divides a, storing the quotient on success.
bool try_divide(const Polynomial &a, const Polynomial &b, Polynomial &quotient);

// Pseudo-remainder of a by b with respect to a_var.
Polynomial pseudo_remainder(const Polynomial &a, const Polynomial &b, unsigned var);

// Greatest common divisor, normalized to leading coefficient 1 (zero only
// when both inputs are zero).
Polynomial gcd(const Polynomial &a, const Polynomial &b);

// gcd of the coefficients with respect to a_var.
Polynomial content_in(const Polynomial &p, unsigned var);

Polynomial make_monic(const Polynomial &p);

// Square root if p is the square of a polynomial over Q.
bool try_sqrt(const Polynomial &p, Polynomial &root);

} // namespace hahn

#endif
