#ifndef HAHN_SERIES_HPP
#define HAHN_SERIES_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <hahn/coefficient.hpp>
#include <hahn/exponent.hpp>

namespace hahn
{

// Truncation bound of a series; nullopt means the series is exact.
using Precision = std::optional<Exponent>;

Precision min_precision(const Precision &a, const Precision &b);
bool precision_less(const Precision &a, const Precision &b);
std::string to_string(const Precision &p);

// Value of v_min: a finite exponent, "at least prec" for a series that is
// zero to its precision, or infinity for the exact zero.
class Valuation
{
public:
    enum class Kind { finite, at_least, infinite };

    static Valuation finite(Exponent e)
    {
        return Valuation(Kind::finite, std::move(e));
    }
    static Valuation at_least(Exponent e)
    {
        return Valuation(Kind::at_least, std::move(e));
    }
    static Valuation infinite()
    {
        return Valuation(Kind::infinite, Exponent());
    }

    Kind kind() const noexcept
    {
        return kind_;
    }
    bool is_finite() const noexcept
    {
        return kind_ == Kind::finite;
    }
    // The exponent for finite / at_least values.
    const Exponent &value() const;

    // Whether the true valuation is certainly > x, resp. >= x.
    bool certainly_greater(const Exponent &x) const;
    bool certainly_at_least(const Exponent &x) const;

    // "2", ">= 3 (unknown)", "inf".
    std::string to_string() const;

    friend bool operator==(const Valuation &a, const Valuation &b);

private:
    Valuation(Kind k, Exponent e) : kind_(k), value_(std::move(e)) {}

    Kind kind_;
    Exponent value_;
};

// A generalized power series sum c_g t^g known modulo t^prec. Keys are
// strictly below prec, coefficients are nonzero, support is finite.
class TruncatedSeries
{
public:
    using TermMap = std::map<Exponent, Coefficient>;

    // Zero of the given rank and precision (nullopt: exact zero).
    explicit TruncatedSeries(std::size_t rank = 1, Precision prec = std::nullopt);

    static TruncatedSeries constant(const Coefficient &c, std::size_t rank = 1, Precision prec = std::nullopt);
    static TruncatedSeries monomial(const Coefficient &c, const Exponent &e, Precision prec = std::nullopt);

    std::size_t rank() const noexcept
    {
        return rank_;
    }
    const TermMap &terms() const noexcept
    {
        return terms_;
    }
    const Precision &precision() const noexcept
    {
        return prec_;
    }
    bool is_exact() const noexcept
    {
        return !prec_.has_value();
    }
    // No stored terms (zero to precision, or exactly zero).
    bool is_zero() const noexcept
    {
        return terms_.empty();
    }

    Coefficient coefficient(const Exponent &e) const;

    // Adds c t^e; terms at or beyond the precision are discarded.
    TruncatedSeries &add_term(const Exponent &e, const Coefficient &c);

    // Lower the precision to min(prec, p), dropping terms >= p.
    TruncatedSeries truncated(const Precision &p) const;
    // Same terms with the precision forgotten.
    TruncatedSeries as_exact() const;

    TruncatedSeries &operator+=(const TruncatedSeries &o);
    TruncatedSeries &operator-=(const TruncatedSeries &o);
    TruncatedSeries &operator*=(const Coefficient &c);

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a += b;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b)
    {
        return a -= b;
    }
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b);
    friend TruncatedSeries operator*(TruncatedSeries a, const Coefficient &c)
    {
        return a *= c;
    }
    friend TruncatedSeries operator*(const Coefficient &c, TruncatedSeries a)
    {
        return a *= c;
    }
    TruncatedSeries operator-() const;

    // Structural equality: same terms and same precision.
    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b);

    // Multiply by t^e (shifts every exponent and the precision).
    TruncatedSeries shifted(const Exponent &e) const;

    TruncatedSeries pow(unsigned n) const;

private:
    void check_rank(const TruncatedSeries &o) const;

    std::size_t rank_;
    TermMap terms_;
    Precision prec_;
};

// Equality of all terms below min(prec_a, prec_b).
bool equal_to_precision(const TruncatedSeries &a, const TruncatedSeries &b);

Valuation v_min(const TruncatedSeries &f);

// Multiplicative inverse. f = c t^v (1 + e) is inverted through the geometric
// series in e; the result has precision prec_f - 2v, so that f * inv(f) = 1
// holds to precision prec_f - v. Exact non-monomial input needs a cap.
TruncatedSeries inverse(const TruncatedSeries &f, const Precision &cap = std::nullopt);

// Coefficientwise image under a place; throws NotInValuationRing if some
// coefficient has a pole.
TruncatedSeries phi(const TruncatedSeries &f, const Place &p);

// Terms with negative exponent, and the rest.
std::pair<TruncatedSeries, TruncatedSeries> split_neg(const TruncatedSeries &f);

// Coefficient at exponent 0; throws NotInValuationRing if v_min(f) < 0.
Coefficient residue(const TruncatedSeries &f);

// Polynomial in an unknown y whose coefficients are series; coeffs[i] is the
// coefficient of y^i. Trailing coefficients that are zero are removed.
class SeriesPolynomial
{
public:
    SeriesPolynomial() = default;
    explicit SeriesPolynomial(std::vector<TruncatedSeries> coeffs);

    const std::vector<TruncatedSeries> &coefficients() const noexcept
    {
        return coeffs_;
    }
    // -1 for the zero polynomial.
    int degree() const noexcept
    {
        return static_cast<int>(coeffs_.size()) - 1;
    }
    std::size_t rank() const;
    // min precision over all coefficients.
    Precision precision() const;

    SeriesPolynomial derivative() const;
    // Coefficients of Q(s + y) as a polynomial in y.
    SeriesPolynomial taylor_shift(const TruncatedSeries &s) const;

    friend bool operator==(const SeriesPolynomial &a, const SeriesPolynomial &b) = default;

private:
    std::vector<TruncatedSeries> coeffs_;
};

// Horner evaluation Q(f).
TruncatedSeries eval_poly(const SeriesPolynomial &q, const TruncatedSeries &f);

SeriesPolynomial phi(const SeriesPolynomial &q, const Place &p);

// "3/2*t^(1/2) + a1*t^2 + O(t^5)"; exact series have no O term.
std::string to_string(const TruncatedSeries &f);
// Descending powers of y with a single trailing O term; when precisions differ
// each inexact coefficient carries its own.
std::string to_string(const SeriesPolynomial &q);

} // namespace hahn

#endif
