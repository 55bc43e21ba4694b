#ifndef HAHN_ANALYTIC_HPP
#define HAHN_ANALYTIC_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <hahn/series.hpp>

namespace hahn
{

// A 1-unit 1 + e with v_min(e) > 0.
class OneUnit
{
public:
    // Throws PreconditionError unless series - 1 has positive valuation.
    explicit OneUnit(TruncatedSeries series);

    static OneUnit one(std::size_t rank = 1, Precision prec = std::nullopt);

    const TruncatedSeries &series() const noexcept
    {
        return series_;
    }
    // w(u) = v_min(1 - u).
    Valuation w() const;

    friend bool operator==(const OneUnit &, const OneUnit &) = default;

private:
    TruncatedSeries series_;
};

// Sum of e^i / i! over the i with i * v_min(e) below the precision. The
// precision is prec(e), lowered to target when given; exact input needs a
// target. Throws PreconditionError if v_min(e) <= 0 or if no multiple of
// v_min(e) reaches the precision (possible in lex groups of rank > 1).
OneUnit exp(const TruncatedSeries &e, const Precision &target = std::nullopt);

// sum (-1)^(i+1) e^i / i for u = 1 + e, under the same truncation rule.
TruncatedSeries log(const OneUnit &u, const Precision &target = std::nullopt);

// u^q = exp(q log u).
OneUnit unit_pow(const OneUnit &u, const Rational &q, const Precision &target = std::nullopt);

enum class HenselVariant {
    // x -> x - Q(x)/Q'(r), fixed slope, linear convergence.
    contraction,
    // x -> x - Q(x)/Q'(x), quadratic convergence.
    newton,
};

struct HenselOptions {
    Precision target;
    HenselVariant variant = HenselVariant::contraction;
    std::size_t max_iterations = 10000;
};

struct HenselRun {
    SeriesPolynomial poly;
    TruncatedSeries start;
    TruncatedSeries root;
    // v_min(Q(x_k)) for x_0 = start, x_1, ..., x_final.
    std::vector<Valuation> residuals;
    // Leading coefficient of Q'(start).
    Coefficient derivative_lead;
    Exponent precision;
};

// Lifts an approximate root r with v(Q(r)) > 0 and v(Q'(r)) = 0 to a root
// of Q to the precision of Q's coefficients (or options.target).
HenselRun hensel_lift(const SeriesPolynomial &q, const TruncatedSeries &r, const HenselOptions &options = {});

struct DenominatorReport {
    // Primes dividing a coefficient denominator of the lifted root.
    std::set<Integer> root_primes;
    // Primes of c = Q'(r)(0) and of every input coefficient denominator.
    std::set<Integer> allowed_primes;

    bool contained() const;
};

// Requires rational constant coefficients in Q and r (UnsupportedError).
DenominatorReport track_denominators(const HenselRun &run);

struct PuiseuxOptions {
    // 0 means all branches.
    std::size_t branch_count = 0;
    std::size_t max_steps = 100000;
};

// Fractional-exponent roots of q, each known below prec (or below the
// smaller precision the coefficients of q allow). Initial forms must have
// roots in Q(a1..am): linear ones, quadratics with square discriminant, and
// rational roots of constant forms are solved; anything else throws
// UnsupportedError naming the unsolved polynomial. Roots that do not
// separate below prec throw PreconditionError (non-squarefree input).
std::vector<TruncatedSeries> newton_puiseux(const SeriesPolynomial &q, const Exponent &prec,
                                            const PuiseuxOptions &options = {});

struct RationalReconstruction {
    // Exact polynomials in t^(1/grid); the denominator has lowest coefficient 1.
    TruncatedSeries numerator;
    TruncatedSeries denominator;
    // n with support in (1/n)Z.
    Integer grid;
};

// num/den with deg num <= deg_num and deg den <= deg_den (degrees in
// t^(1/grid)) and f * den = num to the precision of f (exactly for exact f),
// or nullopt. Rank 1
// only. Throws PreconditionError when prec(f) does not exceed
// deg_num + deg_den + v_min(f) on the rescaled grid.
std::optional<RationalReconstruction> rational_reconstruct(const TruncatedSeries &f, unsigned deg_num,
                                                           unsigned deg_den);

// v_min(Q(f)); the root holds to precision iff the result is not finite.
Valuation verify_root(const SeriesPolynomial &q, const TruncatedSeries &f);

} // namespace hahn

#endif
