#ifndef HAHN_RATIONAL_HPP
#define HAHN_RATIONAL_HPP

#include <set>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hahn
{

using Integer = mpz_class;
using Rational = mpq_class;

// "3/2", "-1", "0".
std::string to_string(const Rational &q);

// Accepts an optionally signed integer or p/q; throws ParseError.
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);

// Generalized binomial coefficient a(a-1)...(a-k+1)/k!.
Rational binomial(const Rational &a, unsigned k);

// Prime divisors of |n| (empty for 0 and +-1).
std::set<Integer> prime_factors(const Integer &n);

bool is_perfect_square(const Rational &q);

// Square root of a perfect square rational; undefined otherwise.
Rational exact_sqrt(const Rational &q);

} // namespace hahn

#endif
