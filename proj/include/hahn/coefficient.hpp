#ifndef HAHN_COEFFICIENT_HPP
#define HAHN_COEFFICIENT_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <hahn/polynomial.hpp>
#include <hahn/rational.hpp>

namespace hahn
{

// Element of Q(a1, ..., am), kept in canonical form: numerator and
// denominator coprime, denominator with leading coefficient 1 (graded lex).
// Equal field elements therefore have identical representations.
class Coefficient
{
public:
    Coefficient() : den_(1) {}
    Coefficient(const Rational &q) : num_(q), den_(1) {}
    Coefficient(long q) : Coefficient(Rational(q)) {}
    Coefficient(const Polynomial &p) : num_(p), den_(1) {}

    // a_var
    static Coefficient variable(unsigned var);
    // num / den in canonical form; throws DivisionByZero for den = 0.
    static Coefficient fraction(const Polynomial &num, const Polynomial &den);

    const Polynomial &numerator() const noexcept
    {
        return num_;
    }
    const Polynomial &denominator() const noexcept
    {
        return den_;
    }

    bool is_zero() const noexcept
    {
        return num_.is_zero();
    }
    bool is_rational() const
    {
        return num_.is_constant() && den_.is_constant();
    }
    // Value of a rational constant; throws UnsupportedError otherwise.
    Rational as_rational() const;
    bool is_polynomial() const
    {
        return den_.is_constant();
    }

    std::set<unsigned> variables() const;

    Coefficient &operator+=(const Coefficient &o);
    Coefficient &operator-=(const Coefficient &o);
    Coefficient &operator*=(const Coefficient &o);
    Coefficient &operator/=(const Coefficient &o);

    friend Coefficient operator+(Coefficient a, const Coefficient &b)
    {
        return a += b;
    }
    friend Coefficient operator-(Coefficient a, const Coefficient &b)
    {
        return a -= b;
    }
    friend Coefficient operator*(Coefficient a, const Coefficient &b)
    {
        return a *= b;
    }
    friend Coefficient operator/(Coefficient a, const Coefficient &b)
    {
        return a /= b;
    }
    Coefficient operator-() const;

    Coefficient inverse() const;
    Coefficient pow(long n) const;

    friend bool operator==(const Coefficient &a, const Coefficient &b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // "3/2", "a1^2 + a2", "(a1 + 1)/(a1 - 2)".
    std::string to_string() const;
    // True when to_string() can be used as a factor without parentheses.
    bool is_atomic() const;
    // True when the printed form starts with a minus sign that can be
    // factored out, i.e. the leading term of the numerator is negative.
    bool has_negative_lead() const;

private:
    Polynomial num_;
    Polynomial den_;
};

std::set<unsigned> variables_of(const Coefficient &c);

// Square root in Q(a1..am) when c is a square of a canonical fraction.
std::optional<Coefficient> coefficient_sqrt(const Coefficient &c);

// The (a_var - target)-adic place of Q(a1..am): a_var := target.
struct Place {
    unsigned var = 1;
    Rational target;

    friend bool operator==(const Place &, const Place &) = default;
};

std::string to_string(const Place &p);

// Image of c under the place; nullopt means infinity (c has a pole at target).
std::optional<Coefficient> apply_place(const Coefficient &c, const Place &p);

// Stream of candidate targets for a place. The default order is
// 0, 1, -1, 2, -2, ...; an explicit list is finite; a seeded stream draws
// small random nonzero rationals reproducibly.
class PlaceCandidates
{
public:
    PlaceCandidates();
    static PlaceCandidates list(std::vector<Rational> values);
    static PlaceCandidates seeded(std::uint64_t seed);

    // Next candidate, or nullopt when an explicit list is exhausted.
    std::optional<Rational> next();

private:
    enum class Kind { enumeration, list, seeded };
    Kind kind_ = Kind::enumeration;
    std::vector<Rational> values_;
    std::size_t index_ = 0;
    std::mt19937_64 rng_;
};

// First nonzero candidate q whose place a_var := q is finite on every element
// of cs. q = 0 is skipped so that a_var and its inverse both stay finite.
// Throws BudgetExceeded if max_candidates are examined without success or an
// explicit candidate list runs out.
Place finite_place_for(std::span<const Coefficient> cs, unsigned var, PlaceCandidates candidates = {},
                       std::size_t max_candidates = 100000);

} // namespace hahn

#endif
