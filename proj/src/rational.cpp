#include <hahn/rational.hpp>

#include <cctype>

#include <hahn/errors.hpp>

namespace hahn
{

std::string to_string(const Rational &q)
{
    return q.get_str();
}

Rational parse_rational(std::string_view text)
{
    std::size_t i = 0;
    auto fail = [&](const std::string &msg) { throw ParseError(msg + " in rational '" + std::string(text) + "'", 1, i + 1); };
    std::string num;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        if (text[i] == '-') {
            num.push_back('-');
        }
        ++i;
    }
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        num.push_back(text[i++]);
        ++digits;
    }
    if (digits == 0) {
        fail("expected digits");
    }
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
        ++i;
        den.clear();
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            den.push_back(text[i++]);
        }
        if (den.empty()) {
            fail("expected denominator");
        }
    }
    if (i != text.size()) {
        fail("unexpected character");
    }
    Integer d(den);
    if (d == 0) {
        throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
    }
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

Rational factorial(unsigned n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return Rational(r);
}

Rational binomial(const Rational &a, unsigned k)
{
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (a - i);
        r /= (i + 1);
    }
    return r;
}

namespace
{

Integer pollard_rho(const Integer &n)
{
    if (n % 2 == 0) {
        return 2;
    }
    for (unsigned long c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        auto f = [&](const Integer &v) {
            Integer r = v * v + c;
            return Integer(r % n);
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Integer diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) {
            return d;
        }
    }
}

void factor_into(Integer n, std::set<Integer> &out)
{
    if (n <= 1) {
        return;
    }
    for (unsigned long p = 2; p < 1000; ++p) {
        if (n % p == 0) {
            out.insert(Integer(p));
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n == 1) {
        return;
    }
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
        out.insert(n);
        return;
    }
    Integer d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::set<Integer> prime_factors(const Integer &n)
{
    std::set<Integer> out;
    factor_into(abs(n), out);
    return out;
}

bool is_perfect_square(const Rational &q)
{
    if (q < 0) {
        return false;
    }
    return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Rational exact_sqrt(const Rational &q)
{
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    return Rational(n, d);
}

} // namespace hahn
