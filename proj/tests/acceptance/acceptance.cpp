// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <hahn/analytic.hpp>
#include <hahn/errors.hpp>
#include <hahn/parser.hpp>
#include <hahn/valuation_spaces.hpp>

#include "cli.hpp"
#include "fuzz.hpp"
#include "generators.hpp"

using namespace hahn;
using hahn::testing::Gen;

namespace
{

// First failure wins; later checks only count.
struct Outcome {
    bool ok = true;
    std::string detail;
    std::size_t checks = 0;

    void check(bool cond, const std::string &what)
    {
        ++checks;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

TruncatedSeries S(const std::string &text)
{
    return parse_series(text);
}

SeriesPolynomial P(const std::string &text)
{
    return parse_polynomial(text);
}

TruncatedSeries one()
{
    return TruncatedSeries::constant(Coefficient(1));
}

// Oracles, independent of the library's exp/log/hensel code.
std::vector<Rational> half_binomials(int n)
{
    std::vector<Rational> out{1};
    for (int i = 0; i + 1 < n; ++i) {
        out.push_back(out.back() * (Rational(1, 2) - i) / (i + 1));
    }
    return out;
}

std::vector<Integer> catalan(int n)
{
    std::vector<Integer> c{1};
    for (int k = 0; k + 1 < n; ++k) {
        Integer next = 0;
        for (int i = 0; i <= k; ++i) {
            next += c[i] * c[k - i];
        }
        c.push_back(next);
    }
    return c;
}

std::vector<Coefficient> coefficients_of(std::initializer_list<const TruncatedSeries *> fs)
{
    std::vector<Coefficient> cs;
    for (const auto *f : fs) {
        for (const auto &[e, c] : f->terms()) {
            cs.push_back(c);
        }
    }
    return cs;
}

TruncatedSeries combine(const std::vector<TruncatedSeries> &vs, const std::vector<Coefficient> &r)
{
    TruncatedSeries acc(vs.front().rank());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        acc += vs[i] * r[i];
    }
    return acc;
}

// w(x) >= w(y) for distances x = v(h - f), y = v(b - f).
bool at_least_as_close(const Valuation &x, const Valuation &y)
{
    if (!x.is_finite()) {
        return true;
    }
    if (!y.is_finite()) {
        return false;
    }
    return x.value() >= y.value();
}

// 1. exp/log formulas.
Outcome exp_log_formulas()
{
    Outcome o;
    const auto start = Clock::now();
    const Exponent p(20);
    TruncatedSeries want_exp(1, p), want_log(1, p);
    Rational fact = 1;
    for (int i = 0; i < 20; ++i) {
        if (i > 0) {
            fact *= i;
            want_log.add_term(Exponent(i), Coefficient(Rational(i % 2 ? 1 : -1, i)));
        }
        want_exp.add_term(Exponent(i), Coefficient(1 / fact));
    }
    o.check(exp(S("t"), p).series() == want_exp, "exp(t) at prec 20 differs from sum t^i/i!");
    o.check(log(OneUnit(S("1 + t")), p) == want_log, "log(1+t) at prec 20 differs from sum (-1)^(i+1) t^i/i");

    Gen g(101);
    for (int i = 0; i < 100; ++i) {
        const auto eps = g.positive_series(8, {1}, static_cast<long>(g.integer(1, 3)));
        o.check(equal_to_precision(log(exp(eps)), eps), "log(exp(e)) != e for e = " + to_string(eps));
    }
    const double secs = seconds_since(start);
    o.check(secs < 1.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

// 2. w-compatibility.
Outcome w_compatibility()
{
    Outcome o;
    Gen g(202);
    for (int i = 0; i < 500; ++i) {
        const auto eps = g.positive_series(6, {1, 2}, static_cast<long>(g.integer(1, 3)));
        o.check(v_min(one() - exp(eps).series()) == v_min(eps), "v_min(1 - exp(e)) != v_min(e) for e = " + to_string(eps));
    }
    return o;
}

// 3. Hensel contraction.
Outcome hensel_contraction()
{
    Outcome o;
    const auto run = hensel_lift(P("y^2 - (1+t)"), S("1"), {Exponent(13)});
    const auto b = half_binomials(13);
    for (int i = 0; i <= 12; ++i) {
        o.check(run.root.coefficient(Exponent(i)) == Coefficient(b[i]),
                "coefficient of t^" + std::to_string(i) + " is not binomial(1/2, i)");
    }
    o.check(run.root.precision() == Precision(Exponent(13)), "root precision is not 13");
    o.check(!run.residuals.empty(), "no residuals recorded");
    for (std::size_t k = 1; k < run.residuals.size(); ++k) {
        const Valuation &prev = run.residuals[k - 1];
        o.check(prev.is_finite() && run.residuals[k].certainly_greater(prev.value()),
                "residual valuation did not increase at iteration " + std::to_string(k));
    }
    const auto d = track_denominators(run);
    o.check(std::includes(std::set<Integer>{2}.begin(), std::set<Integer>{2}.end(), d.root_primes.begin(),
                          d.root_primes.end()),
            "root denominators use primes outside {2}");
    o.check(d.contained(), "track_denominators reports primes outside the allowed set");
    return o;
}

// 4. Newton-Puiseux.
Outcome newton_puiseux_branches()
{
    Outcome o;
    const auto start = Clock::now();
    const Exponent p(12);
    const auto roots = newton_puiseux(P("y^2 - y + t"), p);
    o.check(roots.size() == 2, "y^2 - y + t does not have two branches");
    const auto through_zero = std::find_if(roots.begin(), roots.end(),
                                           [](const TruncatedSeries &r) { return r.coefficient(Exponent(0)).is_zero(); });
    o.check(through_zero != roots.end(), "no branch through 0");
    if (through_zero != roots.end()) {
        const auto c = catalan(11);
        const std::vector<long> first{1, 1, 2, 5, 14, 42};
        for (int i = 1; i <= 11; ++i) {
            o.check(through_zero->coefficient(Exponent(i)) == Coefficient(Rational(c[i - 1])),
                    "coefficient of t^" + std::to_string(i) + " is not a Catalan number");
            if (i <= 6) {
                o.check(c[i - 1] == first[i - 1], "Catalan oracle mismatch");
            }
        }
        o.check(!verify_root(P("y^2 - y + t"), *through_zero).is_finite(), "Catalan branch fails verify_root");
    }
    const auto sq = newton_puiseux(P("y^2 - t"), p);
    o.check(sq.size() == 2, "y^2 - t does not have two branches");
    std::set<std::string> leads;
    for (const auto &r : sq) {
        o.check(v_min(r) == Valuation::finite(Exponent(Rational(1, 2))), "branch of y^2 - t without exponent 1/2");
        o.check(!verify_root(P("y^2 - t"), r).is_finite(), "branch of y^2 - t fails verify_root");
        leads.insert(r.coefficient(Exponent(Rational(1, 2))).to_string());
    }
    o.check(leads == std::set<std::string>{"1", "-1"}, "branches of y^2 - t are not +-t^(1/2)");
    const double secs = seconds_since(start);
    o.check(secs < 1.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

// 5. Rational reconstruction.
Outcome rational_reconstruction()
{
    Outcome o;
    Gen g(505);
    for (const ScalarField &field : {ScalarField{}, ScalarField{{1}}}) {
        const std::vector<unsigned> vars(field.vars.begin(), field.vars.end());
        auto coefficient = [&](bool nonzero) {
            if (!nonzero && g.coin(0.25)) {
                return Coefficient();
            }
            return g.coefficient(vars, 0.2);
        };
        for (int i = 0; i < 100; ++i) {
            TruncatedSeries num(1), den(1);
            const long dn = g.integer(0, 4), dd = g.integer(0, 4);
            for (long k = 0; k <= dn; ++k) {
                num.add_term(Exponent(k), coefficient(k == dn));
            }
            for (long k = 0; k <= dd; ++k) {
                den.add_term(Exponent(k), coefficient(k == 0 || k == dd));
            }
            const TruncatedSeries f = num * inverse(den, Exponent(12));
            const auto r = rational_reconstruct(f, 4, 4);
            o.check(r.has_value(), "no reconstruction of (" + to_string(num) + ")/(" + to_string(den) + ")");
            if (!r) {
                continue;
            }
            o.check(r->numerator * den == num * r->denominator,
                    "reconstruction of (" + to_string(num) + ")/(" + to_string(den) + ") is a different function");
            for (const auto *s : {&r->numerator, &r->denominator}) {
                for (const auto &[e, c] : s->terms()) {
                    o.check(field.contains(c), "output coefficient " + c.to_string() + " outside " + field.to_string());
                }
            }
        }
    }
    return o;
}

// 6. phi_P homomorphism and commutation.
Outcome place_homomorphism()
{
    Outcome o;
    Gen g(606);
    const std::vector<unsigned> vars{1, 2};
    for (int i = 0; i < 500; ++i) {
        const auto f = g.series(0, 3, 3, Exponent(4), vars, 2, 0.3);
        const auto h = g.series(-1, 3, 3, Exponent(4), vars, 2, 0.3);
        const SeriesPolynomial q({g.series(0, 2, 2, Exponent(4), vars), g.series(0, 2, 2, std::nullopt, vars),
                                  TruncatedSeries::constant(g.coefficient(vars))});
        auto cs = coefficients_of({&f, &h});
        for (const auto &s : q.coefficients()) {
            for (const auto &[e, c] : s.terms()) {
                cs.push_back(c);
            }
        }
        const Place p = finite_place_for(cs, g.pick(vars), PlaceCandidates::seeded(static_cast<std::uint64_t>(i)));
        o.check(equal_to_precision(phi(f * h, p), phi(f, p) * phi(h, p)), "phi(fg) != phi(f) phi(g)");
        o.check(equal_to_precision(phi(f + h, p), phi(f, p) + phi(h, p)), "phi(f + g) != phi(f) + phi(g)");
        o.check(equal_to_precision(phi(eval_poly(q, f), p), eval_poly(phi(q, p), phi(f, p))),
                "phi(Q(f)) != (phi Q)(phi f)");
    }
    // The specialized Hensel root satisfies the specialized polynomial.
    for (int i = 0; i < 40; ++i) {
        const Rational r0 = g.rational(3, 2);
        const Rational r1 = r0 + g.nonzero_rational(3, 2);
        const TruncatedSeries noise = TruncatedSeries::monomial(g.coefficient({1}, 0.3), Exponent(1))
                                      + TruncatedSeries::monomial(g.coefficient({1}), Exponent(2));
        const SeriesPolynomial q({TruncatedSeries::constant(Coefficient(r0 * r1)) + noise,
                                  TruncatedSeries::constant(Coefficient(-r0 - r1)), one()});
        const auto run = hensel_lift(q, TruncatedSeries::constant(Coefficient(r0)), {Exponent(6)});
        auto cs = coefficients_of({&run.root, &noise});
        const Place p = finite_place_for(cs, 1);
        const Valuation v = verify_root(phi(q, p), phi(run.root, p));
        o.check(!v.is_finite() || v.value() >= run.precision, "specialized Hensel root fails the specialized polynomial");
    }
    return o;
}

// Coefficient in the Q-span of the subfields K_{Y - {y}} for y in ys.
bool in_span(const Coefficient &c, const std::vector<unsigned> &ys)
{
    const auto vs = variables_of(c);
    auto misses_some = [&](const std::set<unsigned> &s) {
        return std::any_of(ys.begin(), ys.end(), [&](unsigned y) { return !s.count(y); });
    };
    if (misses_some(vs)) {
        return true;
    }
    if (!c.denominator().is_constant()) {
        return false;
    }
    for (const auto &[m, q] : c.numerator().terms()) {
        std::set<unsigned> mv;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] > 0) {
                mv.insert(static_cast<unsigned>(k + 1));
            }
        }
        if (!misses_some(mv)) {
            return false;
        }
    }
    return true;
}

void check_inclusion_exclusion(Outcome &o, Gen &g, const std::vector<unsigned> &ys)
{
    const Exponent prec(10);
    TruncatedSeries f = g.series(0, 10, 5, prec, ys, 1, 0.15);
    // Terms already in the span, so the coefficient identity is exercised.
    for (int k = 0; k < 3; ++k) {
        std::vector<unsigned> fewer = ys;
        fewer.erase(fewer.begin() + g.integer(0, static_cast<long>(fewer.size()) - 1));
        f.add_term(Exponent(g.integer(0, 9)), g.coefficient(fewer, 0.15));
    }
    std::vector<PlaceSpec> specs;
    for (unsigned y : ys) {
        specs.push_back({y, {}});
    }
    const auto ie = inclusion_exclusion_approx(f, specs);
    const std::size_t n = ys.size();
    o.check(ie.summands.size() == (std::size_t{1} << n), "summand table has the wrong size");
    TruncatedSeries total(1);
    for (const auto &s : ie.summands) {
        if (s.sigma == std::string(n, '0')) {
            o.check(s.value == f, "f_0 != f");
            continue;
        }
        total += s.value;
        for (std::size_t k = 0; k < n; ++k) {
            if (s.sigma[k] != '1') {
                continue;
            }
            for (const auto &[e, c] : s.value.terms()) {
                o.check(!variables_of(c).count(ie.places[k].var),
                        "summand " + s.sigma + " keeps a" + std::to_string(ie.places[k].var));
            }
        }
    }
    o.check(ie.h == -total, "h != -(sum of nonzero summands)");
    for (const auto &[e, c] : f.terms()) {
        if (in_span(c, ys)) {
            o.check(ie.h.coefficient(e) == c, "q(h) != q(f) for a span coefficient at t^" + hahn::to_string(e));
        }
    }
    const Valuation best = v_min(ie.h - f);
    // First exponent whose coefficient is outside the span.
    Exponent cut = prec;
    for (const auto &[e, c] : f.terms()) {
        if (!in_span(c, ys)) {
            cut = e;
            break;
        }
    }
    for (int s = 0; s < 200; ++s) {
        TruncatedSeries b(1);
        if (s % 2) {
            for (const auto &[e, c] : f.terms()) {
                if (e < cut) {
                    b.add_term(e, c);
                }
            }
        }
        const long terms = g.integer(0, 4);
        for (long k = 0; k < terms; ++k) {
            std::vector<unsigned> fewer = ys;
            fewer.erase(fewer.begin() + g.integer(0, static_cast<long>(fewer.size()) - 1));
            b.add_term(Exponent(Rational(g.integer(0, 19), 2)), g.coefficient(fewer, 0.15));
        }
        o.check(at_least_as_close(best, v_min(b - f)), "a sampled span element beats h for f = " + to_string(f));
    }
}

// 7. Inclusion-exclusion.
Outcome inclusion_exclusion()
{
    Outcome o;
    const auto start = Clock::now();
    Gen g(707);
    for (int i = 0; i < 6; ++i) {
        check_inclusion_exclusion(o, g, {1, 3});
        check_inclusion_exclusion(o, g, {1, 2, 3});
    }
    const double secs = seconds_since(start);
    o.check(secs < 5.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

// 8. Multiplicative conjugation.
Outcome multiplicative_conjugation()
{
    Outcome o;
    Gen g(808);
    for (int i = 0; i < 50; ++i) {
        const OneUnit u(one() + g.positive_series(5, {1, 2}, static_cast<long>(g.integer(1, 2))));
        std::vector<PlaceSpec> specs{{1, {}}, {2, {}}};
        if (i % 2) {
            specs = {{1, PlaceCandidates::seeded(static_cast<std::uint64_t>(i))},
                     {2, PlaceCandidates::seeded(static_cast<std::uint64_t>(i) + 1000)}};
        }
        const auto m = mult_inclusion_exclusion(u, specs);
        // Same places for the additive side.
        std::vector<PlaceSpec> fixed;
        for (const auto &p : m.places) {
            fixed.push_back({p.var, PlaceCandidates::list({p.target})});
        }
        const auto a = inclusion_exclusion_approx(log(u), fixed);
        o.check(equal_to_precision(m.h.series(), exp(a.h).series()),
                "mult_inclusion_exclusion(u) != exp(inclusion_exclusion_approx(log u)) for u = " + to_string(u.series()));
    }
    return o;
}

// Defining equation by exhaustive small integer combinations.
bool brute_force_independent(const std::vector<TruncatedSeries> &vs, int bound)
{
    const std::size_t n = vs.size();
    std::vector<int> r(n, -bound);
    while (true) {
        if (std::any_of(r.begin(), r.end(), [](int x) { return x != 0; })) {
            TruncatedSeries sum(1);
            std::optional<Exponent> lowest;
            for (std::size_t k = 0; k < n; ++k) {
                if (r[k] != 0) {
                    sum += vs[k] * Coefficient(r[k]);
                    const Exponent v = v_min(vs[k]).value();
                    lowest = lowest ? std::min(*lowest, v) : v;
                }
            }
            const Valuation vs_sum = v_min(sum);
            if (!vs_sum.is_finite() || vs_sum.value() > *lowest) {
                return false;
            }
        }
        std::size_t k = 0;
        while (k < n && r[k] == bound) {
            r[k++] = -bound;
        }
        if (k == n) {
            return true;
        }
        ++r[k];
    }
}

// 9. Basis machinery.
Outcome basis_machinery()
{
    Outcome o;
    Gen g(909);
    const std::vector<std::string> pool{"1", "-1", "2", "a1", "-a1", "a1 + 1"};
    for (int i = 0; i < 500; ++i) {
        std::vector<TruncatedSeries> vs;
        const long n = g.integer(2, 3);
        for (long k = 0; k < n; ++k) {
            TruncatedSeries f(1);
            const long terms = g.integer(1, 3);
            for (long j = 0; j < terms; ++j) {
                const Exponent e(g.integer(0, 2));
                if (f.coefficient(e).is_zero()) {
                    f.add_term(e, parse_coefficient(g.pick(pool)));
                }
            }
            if (f.is_zero()) {
                f = S("t^2");
            }
            vs.push_back(f);
        }
        const auto r = is_valuation_independent(vs);
        o.check(r.independent == brute_force_independent(vs, 3), "library and brute force disagree on instance " +
                                                                      std::to_string(i));
        if (!r.independent) {
            const Valuation s = v_min(combine(vs, r.witness));
            std::optional<Exponent> lowest;
            for (std::size_t k = 0; k < vs.size(); ++k) {
                if (!r.witness[k].is_zero()) {
                    const Exponent v = v_min(vs[k]).value();
                    lowest = lowest ? std::min(*lowest, v) : v;
                }
            }
            o.check(lowest && (!s.is_finite() || s.value() > *lowest), "witness does not violate the defining equation");
        }
    }
    for (int i = 0; i < 100; ++i) {
        BasisFamily b;
        for (int k = 0; k < 5; ++k) {
            b = extend_basis(std::move(b), g.series(0, 3, 3, Exponent(5), {}, 2));
            o.check(is_valuation_independent(b.entries()).independent, "extend_basis output is dependent");
        }
    }
    for (int i = 0; i < 20; ++i) {
        std::vector<ChainStage> stages{{ScalarField{}, {}}, {ScalarField{{1}}, {}}, {ScalarField{{1, 2}}, {}}};
        const std::vector<std::vector<unsigned>> vars{{}, {1}, {1, 2}};
        for (std::size_t s = 0; s < stages.size(); ++s) {
            for (int k = 0; k < 3; ++k) {
                stages[s].inputs.push_back(g.series(0, 3, 3, Exponent(5), vars[s], 1));
            }
        }
        const auto bases = chain_basis_build(stages);
        o.check(bases.size() == 3, "chain_basis_build returned the wrong number of stages");
        for (std::size_t s = 0; s < bases.size(); ++s) {
            o.check(is_valuation_independent(bases[s].entries()).independent, "stage basis is dependent");
            if (s > 0) {
                const auto &prev = bases[s - 1].entries(), &cur = bases[s].entries();
                o.check(prev.size() <= cur.size() && std::equal(prev.begin(), prev.end(), cur.begin()),
                        "stage bases are not nested");
            }
            for (std::size_t t = 0; t <= s; ++t) {
                for (const auto &in : stages[t].inputs) {
                    bool spanned = true;
                    try {
                        (void)span_coordinates(in, bases[s]);
                    } catch (const PreconditionError &) {
                        spanned = false;
                    }
                    o.check(spanned, "stage input outside the stage basis span");
                }
            }
        }
        std::vector<TruncatedSeries> all;
        for (const auto &b : bases) {
            for (const auto &e : b.entries()) {
                if (std::find(all.begin(), all.end(), e) == all.end()) {
                    all.push_back(e);
                }
            }
        }
        o.check(all.empty() || is_valuation_independent(all).independent, "union of the chain is dependent");
    }
    return o;
}

// 10. Applications.
Outcome applications()
{
    Outcome o;
    Gen g(1010);
    const std::vector<Coefficient> field_basis{Coefficient(1), Coefficient::variable(1),
                                               Coefficient::variable(1).pow(2),
                                               Coefficient(1) / (Coefficient::variable(1) + Coefficient(1))};
    for (int i = 0; i < 100; ++i) {
        BasisFamily b(ScalarField{{1}});
        const long n = g.integer(1, 3);
        for (long k = 0; k < n; ++k) {
            b = extend_basis(std::move(b), g.series(0, 3, 3, Exponent(5), {1}, 2, 0.2));
        }
        std::vector<Coefficient> bk;
        for (const auto &c : field_basis) {
            if (bk.empty() || g.coin(0.6)) {
                bk.push_back(c);
            }
        }
        const auto tb = tensor_basis(b, bk);
        o.check(tb.size() == b.size() * bk.size(), "tensor basis has the wrong size");
        o.check(is_valuation_independent(tb.entries()).independent, "tensor basis is dependent over Q");
    }

    const Exponent prec(6);
    for (int fam = 0; fam < 10; ++fam) {
        BasisFamily b;
        while (b.size() < 2) {
            b = extend_basis(std::move(b), g.series(Rational(1, 2), 3, 2, prec, {}, 2));
        }
        std::vector<OneUnit> us;
        for (const auto &e : b.entries()) {
            us.push_back(exp(e, prec));
        }
        o.check(skeleton_of(b.entries()).equivalent(multiplicative_skeleton(us)), "skeletons of exp-matched bases differ");
        const auto re = RestrictedExp::build(b, us, prec);
        for (int s = 0; s < 10; ++s) {
            auto sample = [&] {
                std::vector<Coefficient> r;
                for (std::size_t k = 0; k < b.size(); ++k) {
                    r.emplace_back(g.rational(3, 2));
                }
                return combine(b.entries(), r);
            };
            const TruncatedSeries x = sample(), y = sample();
            o.check(re.is_homomorphic_on(x, y), "restricted exponential is not a homomorphism on a sample");
            if (!x.is_zero()) {
                o.check(re.is_w_compatible_on(x), "restricted exponential is not w-compatible on a sample");
            }
        }
        // A unit with a value off the 1/2 grid breaks the skeleton match.
        std::vector<OneUnit> bad = us;
        bad.back() = OneUnit(one() + b.entries().back() * S("t^(1/3)"));
        o.check(!skeleton_of(b.entries()).equivalent(multiplicative_skeleton(bad)), "mismatched skeletons compare equal");
        bool rejected = false;
        try {
            (void)RestrictedExp::build(b, bad, prec);
        } catch (const PreconditionError &) {
            rejected = true;
        }
        o.check(rejected, "build accepted a skeleton mismatch");
    }

    for (int i = 0; i < 200; ++i) {
        const auto f = g.series(-3, 3, 5, g.coin() ? Precision(Exponent(3)) : std::nullopt, {1}, 3);
        const auto [neg, ring] = split_neg(f);
        o.check(neg + ring == f, "Neg + ring != f");
        for (const auto &[e, c] : neg.terms()) {
            o.check(e < Exponent(0), "negative part has a nonnegative exponent");
        }
        o.check(v_min(ring).certainly_at_least(Exponent(0)), "ring part has negative valuation");
    }
    return o;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string> &args)
{
    std::vector<const char *> argv{"hahn"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string render(const CliRun &r)
{
    return "exit: " + std::to_string(r.code) + "\n--- stdout ---\n" + r.out + "--- stderr ---\n" + r.err;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 11. CLI.
Outcome cli_contract()
{
    Outcome o;
    const std::string dir = HAHN_GOLDEN_DIR;
    const auto cases = nlohmann::json::parse(read_file(dir + "/cases.json"));
    const std::set<std::string> commands{"exp",      "log",       "pow",      "hensel",  "puiseux",      "ratrec",
                                         "vmin",     "specialize", "splitneg", "indep",   "optapprox",    "inclexcl",
                                         "multinclexcl", "skeleton", "tensor",  "restexp", "chain"};
    std::set<std::string> covered;
    for (const auto &c : cases) {
        const auto args = c["args"].get<std::vector<std::string>>();
        const std::string name = c["name"].get<std::string>();
        for (const auto &a : args) {
            if (commands.count(a)) {
                covered.insert(a);
                break;
            }
        }
        const std::string first = render(run_cli(args));
        o.check(first == render(run_cli(args)), "golden case " + name + " is not deterministic");
        o.check(first == read_file(dir + "/expected/" + name + ".out"), "golden case " + name + " differs");
    }
    o.check(covered == commands, "golden cases do not cover every subcommand");

    testing::ExprFuzzer fuzz(11);
    for (int i = 0; i < 1000; ++i) {
        const std::string text = fuzz.any();
        const Parsed v = parse(text);
        const std::string printed = to_string(v);
        const Parsed w = parse(printed);
        o.check(v == w && to_string(w) == printed, "round trip failed for " + text + " -> " + printed);
    }

    for (std::uint64_t seed : {1, 2, 99}) {
        const std::vector<std::string> args{"--seed", std::to_string(seed), "--json", "inclexcl", "a1*a2*t + a1^2*t^2",
                                            "--vars", "1,2"};
        o.check(render(run_cli(args)) == render(run_cli(args)), "seeded run is not deterministic");
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exp/log formulas", exp_log_formulas},
        {"w-compatibility of exp", w_compatibility},
        {"Hensel contraction", hensel_contraction},
        {"Newton-Puiseux", newton_puiseux_branches},
        {"rational reconstruction", rational_reconstruction},
        {"phi_P homomorphism and commutation", place_homomorphism},
        {"inclusion-exclusion", inclusion_exclusion},
        {"multiplicative conjugation", multiplicative_conjugation},
        {"basis machinery", basis_machinery},
        {"applications", applications},
        {"command line", cli_contract},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        char line[256];
        std::snprintf(line, sizeof line, "%s %2zu  %-36s %5zu checks  %7.3f s", o.ok ? "PASS" : "FAIL", i + 1,
                      criteria[i].first.c_str(), o.checks, seconds_since(start));
        std::cout << line;
        if (!o.ok) {
            std::cout << "  " << o.detail;
            ++failed;
        }
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
