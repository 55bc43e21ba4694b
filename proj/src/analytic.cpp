#include <hahn/analytic.hpp>

#include <algorithm>
#include <functional>

#include <hahn/errors.hpp>
#include <hahn/linalg.hpp>

namespace hahn
{

namespace
{

Exponent zero_of(std::size_t rank)
{
    return Exponent::zero(rank);
}

// Number of summands n (indices 0..n-1) so that the first omitted power of
// an element of valuation v lies at or beyond prec.
std::uint64_t terms_needed(const Exponent &v, const Exponent &prec, const char *what)
{
    const auto n = least_multiple_reaching(v, prec);
    if (!n) {
        throw PreconditionError(std::string(what) + ": precision " + to_string(prec)
                                + " is not reachable by integer multiples of the valuation " + to_string(v));
    }
    return *n;
}

// Valuation and precision shared by exp and log; returns (x truncated, n).
std::pair<TruncatedSeries, std::uint64_t> prepare_sum(const TruncatedSeries &x, const Precision &target, const char *what)
{
    const Exponent zero = zero_of(x.rank());
    const Valuation v = v_min(x);
    if (!v.certainly_greater(zero)) {
        throw PreconditionError(std::string(what) + " requires positive valuation, got " + v.to_string());
    }
    const Precision p = min_precision(x.precision(), target);
    if (!p) {
        throw PreconditionError(std::string(what) + " of an exact series needs a target precision");
    }
    return {x.truncated(p), terms_needed(v.value(), *p, what)};
}

} // namespace

OneUnit::OneUnit(TruncatedSeries series) : series_(std::move(series))
{
    const Valuation v = w();
    if (!v.certainly_greater(zero_of(series_.rank()))) {
        throw PreconditionError("not a 1-unit: v_min(u - 1) = " + v.to_string());
    }
}

OneUnit OneUnit::one(std::size_t rank, Precision prec)
{
    return OneUnit(TruncatedSeries::constant(Coefficient(1), rank, std::move(prec)));
}

Valuation OneUnit::w() const
{
    return v_min(series_ - TruncatedSeries::constant(Coefficient(1), series_.rank()));
}

OneUnit exp(const TruncatedSeries &e, const Precision &target)
{
    if (v_min(e).kind() == Valuation::Kind::infinite) {
        return OneUnit::one(e.rank(), target);
    }
    const auto [x, n] = prepare_sum(e, target, "exp");
    const Precision p = x.precision();
    TruncatedSeries sum = TruncatedSeries::constant(Coefficient(1), x.rank(), p);
    TruncatedSeries term = TruncatedSeries::constant(Coefficient(1), x.rank());
    for (std::uint64_t i = 1; i < n; ++i) {
        term = (term * x).truncated(p) * Coefficient(Rational(1, static_cast<unsigned long>(i)));
        sum += term;
    }
    return OneUnit(std::move(sum));
}

TruncatedSeries log(const OneUnit &u, const Precision &target)
{
    const TruncatedSeries e = u.series() - TruncatedSeries::constant(Coefficient(1), u.series().rank());
    if (v_min(e).kind() == Valuation::Kind::infinite) {
        return TruncatedSeries(e.rank(), target);
    }
    const auto [x, n] = prepare_sum(e, target, "log");
    const Precision p = x.precision();
    TruncatedSeries sum(x.rank(), p);
    TruncatedSeries power = TruncatedSeries::constant(Coefficient(1), x.rank());
    for (std::uint64_t i = 1; i < n; ++i) {
        power = (power * x).truncated(p);
        Rational c(i % 2 == 1 ? 1 : -1, static_cast<unsigned long>(i));
        sum += power * Coefficient(c);
    }
    return sum;
}

OneUnit unit_pow(const OneUnit &u, const Rational &q, const Precision &target)
{
    if (q == 0) {
        return OneUnit::one(u.series().rank());
    }
    return exp(log(u, target) * Coefficient(q), target);
}

HenselRun hensel_lift(const SeriesPolynomial &q, const TruncatedSeries &r, const HenselOptions &options)
{
    if (q.degree() < 1) {
        throw PreconditionError("hensel_lift needs a polynomial of degree at least 1");
    }
    const std::size_t rank = q.rank();
    const Exponent zero = zero_of(rank);
    const Precision p = min_precision(q.precision(), options.target);
    if (!p) {
        throw PreconditionError("hensel_lift of an exact polynomial needs a target precision");
    }

    HenselRun run{q, r.as_exact(), r.as_exact(), {}, Coefficient(), *p};
    const SeriesPolynomial dq = q.derivative();

    TruncatedSeries residual = eval_poly(q, run.start);
    const Valuation v0 = v_min(residual);
    if (!v0.certainly_greater(zero)) {
        throw PreconditionError("hensel_lift: v_min(Q(r)) > 0 violated, v_min(Q(r)) = " + v0.to_string());
    }
    const TruncatedSeries d0 = eval_poly(dq, run.start);
    const Valuation vd = v_min(d0);
    if (!vd.is_finite() || !vd.value().is_zero()) {
        throw PreconditionError("hensel_lift: v_min(Q'(r)) = 0 violated, v_min(Q'(r)) = " + vd.to_string());
    }
    if (v0.is_finite()) {
        terms_needed(v0.value(), *p, "hensel_lift");
    }
    run.derivative_lead = d0.coefficient(zero);
    const TruncatedSeries slope_inv = inverse(d0, p);

    run.residuals.push_back(v0);
    TruncatedSeries x = run.start;
    while (!v_min(residual).certainly_at_least(*p)) {
        if (run.residuals.size() > options.max_iterations) {
            throw BudgetExceeded("hensel_lift exceeded " + std::to_string(options.max_iterations) + " iterations");
        }
        const TruncatedSeries divisor
            = options.variant == HenselVariant::contraction ? slope_inv : inverse(eval_poly(dq, x), p);
        x = (x - residual * divisor).truncated(p);
        residual = eval_poly(q, x);
        const Valuation v = v_min(residual);
        const Valuation &prev = run.residuals.back();
        if (v.kind() != Valuation::Kind::infinite && prev.kind() != Valuation::Kind::infinite
            && v.value() <= prev.value()) {
            throw PreconditionError("hensel_lift: residual valuation did not increase (" + prev.to_string() + " -> "
                                    + v.to_string() + ")");
        }
        run.residuals.push_back(v);
    }
    run.root = x.truncated(p);
    return run;
}

bool DenominatorReport::contained() const
{
    return std::includes(allowed_primes.begin(), allowed_primes.end(), root_primes.begin(), root_primes.end());
}

DenominatorReport track_denominators(const HenselRun &run)
{
    DenominatorReport report;
    auto add_den = [&](std::set<Integer> &into, const Coefficient &c) {
        const Rational q = c.as_rational();
        const auto ps = prime_factors(q.get_den());
        into.insert(ps.begin(), ps.end());
    };
    for (const auto &coeff : run.poly.coefficients()) {
        for (const auto &[e, c] : coeff.terms()) {
            add_den(report.allowed_primes, c);
        }
    }
    for (const auto &[e, c] : run.start.terms()) {
        add_den(report.allowed_primes, c);
    }
    const Rational lead = run.derivative_lead.as_rational();
    for (const auto &ps : {prime_factors(lead.get_num()), prime_factors(lead.get_den())}) {
        report.allowed_primes.insert(ps.begin(), ps.end());
    }
    for (const auto &[e, c] : run.root.terms()) {
        add_den(report.root_primes, c);
    }
    return report;
}

namespace
{

// Univariate polynomials over Q(a1..am), lowest degree first.
using UPoly = std::vector<Coefficient>;

void trim(UPoly &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

std::string upoly_to_string(const UPoly &p, const char *var)
{
    std::string s;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) {
            continue;
        }
        std::string c = p[i].is_atomic() ? p[i].to_string() : "(" + p[i].to_string() + ")";
        std::string mono = i == 0 ? std::string() : (i == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(i));
        if (!s.empty()) {
            s += " + ";
        }
        if (mono.empty()) {
            s += c;
        } else if (p[i] == Coefficient(1)) {
            s += mono;
        } else {
            s += c + "*" + mono;
        }
    }
    return s.empty() ? "0" : s;
}

// Quotient and remainder of a by b.
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly &b)
{
    trim(a);
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    const Coefficient lead_inv = b.back().inverse();
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        const Coefficient f = a.back() * lead_inv;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= f * b[i];
        }
        trim(a);
    }
    return {q, a};
}

UPoly upoly_gcd(UPoly a, UPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Coefficient inv = a.back().inverse();
        for (auto &c : a) {
            c *= inv;
        }
    }
    return a;
}

struct RootSearch {
    std::vector<std::pair<Coefficient, std::size_t>> roots;
    UPoly unresolved;
};

void add_root(RootSearch &rs, const Coefficient &r)
{
    for (auto &[c, m] : rs.roots) {
        if (c == r) {
            ++m;
            return;
        }
    }
    rs.roots.emplace_back(r, 1);
}

std::vector<Integer> divisors(const Integer &n)
{
    std::vector<Integer> ds{1};
    Integer rest = abs(n);
    for (const auto &p : prime_factors(rest)) {
        std::size_t count = 0;
        while (rest % p == 0) {
            rest /= p;
            ++count;
        }
        const std::size_t base = ds.size();
        Integer power = 1;
        for (std::size_t k = 0; k < count; ++k) {
            power *= p;
            for (std::size_t i = 0; i < base; ++i) {
                ds.push_back(ds[i] * power);
            }
        }
        if (ds.size() > 200000) {
            break;
        }
    }
    return ds;
}

std::optional<Rational> rational_root(const UPoly &p)
{
    Integer den_lcm = 1;
    for (const auto &c : p) {
        const Rational q = c.as_rational();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    const Rational a0 = p.front().as_rational() * den_lcm;
    const Rational ad = p.back().as_rational() * den_lcm;
    const auto nums = divisors(a0.get_num());
    const auto dens = divisors(ad.get_num());
    for (const auto &d : dens) {
        for (const auto &n : nums) {
            for (int sign : {1, -1}) {
                Rational cand(n * sign, d);
                cand.canonicalize();
                Rational acc = 0;
                for (std::size_t i = p.size(); i-- > 0;) {
                    acc = acc * cand + p[i].as_rational();
                }
                if (acc == 0) {
                    return cand;
                }
            }
        }
    }
    return std::nullopt;
}

// Nonzero roots of p in Q(a1..am) with multiplicity; p(0) != 0.
RootSearch solve_initial_form(UPoly p)
{
    RootSearch rs;
    trim(p);
    while (p.size() > 1) {
        const std::size_t deg = p.size() - 1;
        if (deg == 1) {
            add_root(rs, -p[0] / p[1]);
            p = {p[1]};
            break;
        }
        const bool rational = std::all_of(p.begin(), p.end(), [](const Coefficient &c) { return c.is_rational(); });
        if (rational) {
            if (auto r = rational_root(p)) {
                add_root(rs, Coefficient(*r));
                p = divmod(p, UPoly{Coefficient(-*r), Coefficient(1)}).first;
                continue;
            }
        }
        if (deg == 2) {
            const Coefficient disc = p[1] * p[1] - Coefficient(4) * p[0] * p[2];
            if (auto root = coefficient_sqrt(disc)) {
                const Coefficient two_a = Coefficient(2) * p[2];
                add_root(rs, (-p[1] + *root) / two_a);
                add_root(rs, (-p[1] - *root) / two_a);
                p = {p[2]};
            }
        }
        break;
    }
    if (p.size() > 1) {
        rs.unresolved = p;
    }
    return rs;
}

struct HullPoint {
    std::size_t index;
    Exponent value;
    bool known;
    Coefficient lead;
};

Exponent slope(const HullPoint &a, const HullPoint &b)
{
    return (b.value - a.value) * Rational(1, static_cast<unsigned long>(b.index - a.index));
}

std::vector<std::size_t> lower_hull(const std::vector<HullPoint> &pts)
{
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        while (hull.size() >= 2) {
            const auto &a = pts[hull[hull.size() - 2]];
            const auto &b = pts[hull.back()];
            if (slope(a, b) >= slope(b, pts[k])) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(k);
    }
    return hull;
}

class PuiseuxSolver
{
public:
    PuiseuxSolver(const SeriesPolynomial &q, const Exponent &target, const PuiseuxOptions &options)
        : q_(q), target_(target), options_(options)
    {
    }

    std::vector<TruncatedSeries> run()
    {
        expand(TruncatedSeries(q_.rank()), std::nullopt, static_cast<std::size_t>(q_.degree()));
        return std::move(out_);
    }

private:
    bool done() const
    {
        return options_.branch_count != 0 && out_.size() >= options_.branch_count;
    }

    void emit(const TruncatedSeries &s, const Exponent &prec)
    {
        if (!done()) {
            out_.push_back(s.truncated(std::min(prec, target_)));
        }
    }

    void expand(TruncatedSeries s, std::optional<Exponent> mu_prev, std::size_t mult)
    {
        while (!done()) {
            if (++steps_ > options_.max_steps) {
                throw BudgetExceeded("newton_puiseux exceeded " + std::to_string(options_.max_steps) + " steps");
            }
            const SeriesPolynomial shifted = q_.taylor_shift(s);
            const auto &c = shifted.coefficients();
            std::size_t exact_zeros = 0;
            while (exact_zeros < c.size() && v_min(c[exact_zeros]).kind() == Valuation::Kind::infinite) {
                ++exact_zeros;
            }
            if (exact_zeros >= 2) {
                throw PreconditionError("newton_puiseux: non-squarefree input, repeated root " + to_string(s));
            }
            if (mult == 1) {
                if (exact_zeros == 1) {
                    emit(s, target_);
                    return;
                }
                const Valuation v1 = v_min(c[1]);
                if (!v1.is_finite()) {
                    throw PreconditionError("newton_puiseux: insufficient precision, linear term of the shifted "
                                            "polynomial is "
                                            + v1.to_string());
                }
                const Valuation v0 = v_min(c[0]);
                const Exponent mu = v0.value() - v1.value();
                if (!v0.is_finite() || mu >= target_) {
                    emit(s, mu);
                    return;
                }
                if (mu_prev && mu <= *mu_prev) {
                    throw PreconditionError("newton_puiseux: insufficient precision to separate the branch at "
                                            + to_string(s));
                }
                const Coefficient next = -c[0].terms().begin()->second / c[1].terms().begin()->second;
                s.add_term(mu, next);
                mu_prev = mu;
                continue;
            }

            if (exact_zeros == 1) {
                emit(s, target_);
                --mult;
            }
            std::vector<HullPoint> pts;
            for (std::size_t i = exact_zeros; i < c.size(); ++i) {
                const Valuation v = v_min(c[i]);
                if (v.kind() == Valuation::Kind::infinite) {
                    continue;
                }
                pts.push_back({i, v.value(), v.is_finite(), v.is_finite() ? c[i].terms().begin()->second : Coefficient()});
            }
            const auto hull = lower_hull(pts);

            struct Edge {
                std::size_t left, right;
                Exponent mu;
            };
            std::vector<Edge> edges;
            std::size_t roots = 0;
            for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
                const auto &a = pts[hull[k]];
                const auto &b = pts[hull[k + 1]];
                Exponent mu = -slope(a, b);
                if (mu_prev && mu <= *mu_prev) {
                    break;
                }
                roots += b.index - a.index;
                edges.push_back({hull[k], hull[k + 1], std::move(mu)});
            }
            if (roots != mult) {
                throw PreconditionError("newton_puiseux: insufficient precision to count the roots near "
                                        + to_string(s));
            }

            std::size_t beyond = 0;
            for (const auto &edge : edges) {
                if (edge.mu >= target_) {
                    beyond += pts[edge.right].index - pts[edge.left].index;
                }
            }
            if (beyond >= 2) {
                throw PreconditionError("newton_puiseux: non-squarefree input at the requested precision, "
                                        + std::to_string(beyond) + " roots agree with " + to_string(s));
            }
            if (beyond == 1) {
                emit(s, target_);
            }

            for (const auto &edge : edges) {
                if (edge.mu >= target_) {
                    continue;
                }
                const auto &a = pts[edge.left];
                const Exponent line = a.value + edge.mu * Rational(static_cast<unsigned long>(a.index));
                UPoly form(pts[edge.right].index - a.index + 1);
                for (std::size_t k = edge.left; k <= edge.right; ++k) {
                    const auto &pt = pts[k];
                    if (pt.value + edge.mu * Rational(static_cast<unsigned long>(pt.index)) != line) {
                        continue;
                    }
                    if (!pt.known) {
                        throw PreconditionError("newton_puiseux: insufficient precision in the coefficient of y^"
                                                + std::to_string(pt.index) + " near " + to_string(s));
                    }
                    form[pt.index - a.index] = pt.lead;
                }
                const RootSearch rs = solve_initial_form(form);
                if (!rs.unresolved.empty()) {
                    throw UnsupportedError("newton_puiseux: initial form " + upoly_to_string(rs.unresolved, "z")
                                           + " has roots outside Q(a1..am)");
                }
                for (const auto &[root, m] : rs.roots) {
                    TruncatedSeries next = s;
                    next.add_term(edge.mu, root);
                    expand(std::move(next), edge.mu, m);
                    if (done()) {
                        return;
                    }
                }
            }
            return;
        }
    }

    const SeriesPolynomial &q_;
    Exponent target_;
    PuiseuxOptions options_;
    std::vector<TruncatedSeries> out_;
    std::size_t steps_ = 0;
};

} // namespace

std::vector<TruncatedSeries> newton_puiseux(const SeriesPolynomial &q, const Exponent &prec,
                                            const PuiseuxOptions &options)
{
    if (q.degree() < 1) {
        throw PreconditionError("newton_puiseux needs a polynomial of degree at least 1");
    }
    if (prec.rank() != q.rank()) {
        throw DimensionError("newton_puiseux: precision rank does not match the polynomial");
    }
    return PuiseuxSolver(q, prec, options).run();
}

std::optional<RationalReconstruction> rational_reconstruct(const TruncatedSeries &f, unsigned deg_num,
                                                           unsigned deg_den)
{
    if (f.rank() != 1) {
        throw UnsupportedError("rational_reconstruct is implemented for rank 1 only");
    }
    Integer grid = 1;
    for (const auto &[e, c] : f.terms()) {
        mpz_lcm(grid.get_mpz_t(), grid.get_mpz_t(), e[0].get_den_mpz_t());
    }
    auto grid_index = [&](const Rational &e, bool ceil) {
        const Rational scaled = e * Rational(grid);
        Integer out;
        if (ceil) {
            mpz_cdiv_q(out.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        } else {
            mpz_fdiv_q(out.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        }
        return out.get_si();
    };
    // Exact input: every coefficient of f * den is determined.
    const long top = f.precision()
                         ? grid_index((*f.precision())[0], true)
                         : std::max(f.is_zero() ? 0L : grid_index(f.terms().rbegin()->first[0], false) + deg_den,
                                    static_cast<long>(deg_num))
                               + 1;

    auto grid_exponent = [&](long j) { return Exponent(Rational(j) / Rational(grid)); };
    auto exact_poly = [&](const UPoly &p) {
        TruncatedSeries s(1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            s.add_term(grid_exponent(static_cast<long>(i)), p[i]);
        }
        return s;
    };

    if (f.is_zero()) {
        return RationalReconstruction{TruncatedSeries(1), TruncatedSeries::constant(Coefficient(1)), grid};
    }
    const long low = Rational(f.terms().begin()->first[0] * Rational(grid)).get_num().get_si();
    if (f.precision() && top <= static_cast<long>(deg_num + deg_den) + low) {
        throw PreconditionError("rational_reconstruct: insufficient precision, need prec > deg_num + deg_den + v_min(f) "
                                "on the grid 1/"
                                + grid.get_str());
    }

    // Unknowns: N_0..N_dn, then D_0..D_dd.
    const std::size_t cols = deg_num + 1 + deg_den + 1;
    Matrix a;
    for (long j = std::min(low, 0L); j < top; ++j) {
        std::vector<Coefficient> row(cols);
        if (j >= 0 && j <= static_cast<long>(deg_num)) {
            row[static_cast<std::size_t>(j)] = Coefficient(-1);
        }
        for (unsigned k = 0; k <= deg_den; ++k) {
            row[deg_num + 1 + k] = f.coefficient(grid_exponent(j - static_cast<long>(k)));
        }
        a.push_back(std::move(row));
    }

    std::optional<std::vector<Coefficient>> sol;
    {
        Matrix normalized = a;
        std::vector<Coefficient> rhs(a.size());
        std::vector<Coefficient> unit(cols);
        unit[deg_num + 1] = Coefficient(1);
        normalized.push_back(unit);
        rhs.push_back(Coefficient(1));
        sol = solve(normalized, rhs, cols);
    }
    if (!sol) {
        auto basis = nullspace(a, cols);
        if (basis.empty()) {
            return std::nullopt;
        }
        sol = basis.front();
    }

    UPoly num(sol->begin(), sol->begin() + deg_num + 1);
    UPoly den(sol->begin() + deg_num + 1, sol->end());
    trim(num);
    trim(den);
    if (den.empty()) {
        return std::nullopt;
    }
    const UPoly g = upoly_gcd(num.empty() ? den : num, den);
    if (!num.empty()) {
        num = divmod(num, g).first;
    }
    den = divmod(den, g).first;
    trim(num);
    trim(den);
    const auto lowest = std::find_if(den.begin(), den.end(), [](const Coefficient &c) { return !c.is_zero(); });
    const Coefficient scale = lowest->inverse();
    for (auto &c : num) {
        c *= scale;
    }
    for (auto &c : den) {
        c *= scale;
    }

    RationalReconstruction out{exact_poly(num), exact_poly(den), grid};
    if (!equal_to_precision(f * out.denominator, out.numerator)) {
        return std::nullopt;
    }
    return out;
}

Valuation verify_root(const SeriesPolynomial &q, const TruncatedSeries &f)
{
    return v_min(eval_poly(q, f));
}

} // namespace hahn
