#include <algorithm>

#include <doctest.h>

#include <hahn/analytic.hpp>
#include <hahn/errors.hpp>
#include <hahn/parser.hpp>

#include "generators.hpp"

using namespace hahn;

namespace
{

TruncatedSeries S(const char *text)
{
    return parse_series(text);
}

SeriesPolynomial P(const char *text)
{
    return parse_polynomial(text);
}

// binomial(1/2, i) by the ratio recurrence, independent of the library.
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

} // namespace

TEST_CASE("exp and log examples")
{
    CHECK(exp(S("t"), Exponent(4)).series() == S("1 + t + 1/2*t^2 + 1/6*t^3 + O(t^4)"));
    CHECK(exp(S("0")).series() == S("1"));
    CHECK(log(OneUnit(S("1 + t")), Exponent(4)) == S("t - 1/2*t^2 + 1/3*t^3 + O(t^4)"));
    CHECK(log(OneUnit(S("1"))) == S("0"));
    CHECK(log(exp(S("t + 2*t^2"), Exponent(12))) == S("t + 2*t^2 + O(t^12)"));
    const ParseContext lex{2, std::nullopt};
    CHECK_THROWS_AS(exp(parse_series("t^(0, 1)", lex), Exponent(std::vector<Rational>{1, 0})), PreconditionError);
    CHECK_THROWS_AS(exp(S("1 + t"), Exponent(4)), PreconditionError);
    CHECK_THROWS_AS(exp(S("t")), PreconditionError);
    CHECK_THROWS_AS(OneUnit(S("2 + t")), PreconditionError);
}

TEST_CASE("exp is a homomorphism and w-compatible")
{
    testing::Gen g(31);
    for (int i = 0; i < 200; ++i) {
        const auto a = g.positive_series(5, {1});
        const auto b = g.positive_series(5, {1});
        CHECK(equal_to_precision(exp(a + b).series(), exp(a).series() * exp(b).series()));
        CHECK(exp(a).w() == v_min(a));
        CHECK(log(exp(a)) == a);
        const OneUnit u(TruncatedSeries::constant(Coefficient(1), 1) + a);
        CHECK(exp(log(u)) == u);
        CHECK(v_min(log(u)) == u.w());
    }
}

TEST_CASE("unit_pow")
{
    CHECK(unit_pow(OneUnit(S("1 + t")), Rational(1, 2), Exponent(3)).series() == S("1 + 1/2*t - 1/8*t^2 + O(t^3)"));
    CHECK(unit_pow(OneUnit(S("1 + t")), 0).series() == S("1"));
    const OneUnit cube_root = unit_pow(OneUnit(S("1 + t")), Rational(1, 3), Exponent(8));
    CHECK(cube_root.series().pow(3) == S("1 + t + O(t^8)"));

    testing::Gen g(9);
    for (int i = 0; i < 60; ++i) {
        const OneUnit u(TruncatedSeries::constant(Coefficient(1)) + g.positive_series(4));
        const Rational p = g.rational(3, 3), q = g.nonzero_rational(3, 3);
        CHECK(equal_to_precision(unit_pow(u, p + q).series(), unit_pow(u, p).series() * unit_pow(u, q).series()));
        CHECK(equal_to_precision(unit_pow(unit_pow(u, p), q).series(), unit_pow(u, p * q).series()));
        CHECK(unit_pow(u, q).w() == u.w());
        const long n = g.integer(1, 4);
        CHECK(equal_to_precision(unit_pow(u, n).series(), u.series().pow(static_cast<unsigned>(n))));
        CHECK(OneUnit(u.series().pow(static_cast<unsigned>(n))).w() == u.w());
    }
}

TEST_CASE("hensel examples")
{
    const auto run = hensel_lift(P("y^2 - (1+t)"), S("1"), {Exponent(6)});
    TruncatedSeries expect(1, Exponent(6));
    const auto b = half_binomials(6);
    for (int i = 0; i < 6; ++i) {
        expect.add_term(Exponent(i), Coefficient(b[i]));
    }
    CHECK(run.root == expect);
    for (std::size_t k = 1; k < run.residuals.size(); ++k) {
        CHECK(run.residuals[k - 1].value() < run.residuals[k].value());
    }
    const auto d = track_denominators(run);
    CHECK(d.root_primes == std::set<Integer>{2});
    CHECK(d.contained());

    CHECK(hensel_lift(P("y - t"), S("0"), {Exponent(5)}).root == S("t + O(t^5)"));
    const auto third = hensel_lift(P("y - t/3"), S("0"), {Exponent(4)});
    CHECK(track_denominators(third).root_primes == std::set<Integer>{3});
    CHECK(track_denominators(third).contained());

    try {
        hensel_lift(P("y^2 - (1+t)"), S("t"), {Exponent(6)});
        FAIL("expected a precondition error");
    } catch (const PreconditionError &e) {
        CHECK(std::string(e.what()).find("v_min(Q(r)) > 0") != std::string::npos);
    }
    try {
        hensel_lift(P("y^2 - t^2"), S("t"), {Exponent(6)});
        FAIL("expected a precondition error");
    } catch (const PreconditionError &e) {
        CHECK(std::string(e.what()).find("v_min(Q'(r)) = 0") != std::string::npos);
    }
    CHECK_THROWS_AS(track_denominators(hensel_lift(P("y - a1*t"), S("0"), {Exponent(3)})), UnsupportedError);
}

TEST_CASE("hensel variants agree")
{
    testing::Gen g(14);
    for (int i = 0; i < 40; ++i) {
        // Q = (y - r0)(y - r1) + t * noise with distinct residues r0, r1.
        const Rational r0 = g.rational(3, 2);
        Rational r1 = g.rational(3, 2);
        if (r1 == r0) {
            r1 += 1;
        }
        const TruncatedSeries noise = g.series(1, 3, 2, std::nullopt);
        const SeriesPolynomial q({TruncatedSeries::constant(Coefficient(r0 * r1)) + noise,
                                  TruncatedSeries::constant(Coefficient(-r0 - r1)),
                                  TruncatedSeries::constant(Coefficient(1))});
        const auto slow = hensel_lift(q, TruncatedSeries::constant(Coefficient(r0)), {Exponent(8)});
        const auto fast = hensel_lift(q, TruncatedSeries::constant(Coefficient(r0)),
                                      {Exponent(8), HenselVariant::newton});
        CHECK(slow.root == fast.root);
        CHECK(fast.residuals.size() <= slow.residuals.size());
        CHECK(!verify_root(q, slow.root).is_finite());
        CHECK(track_denominators(slow).contained());
    }
}

TEST_CASE("newton puiseux")
{
    const auto roots = newton_puiseux(P("y^2 - y + t"), Exponent(7));
    REQUIRE(roots.size() == 2);
    const auto c = catalan(6);
    for (int i = 1; i <= 6; ++i) {
        CHECK(roots[0].coefficient(Exponent(i)) == Coefficient(Rational(c[i - 1])));
    }
    const auto sq = newton_puiseux(P("y^2 - t"), Exponent(4));
    REQUIRE(sq.size() == 2);
    CHECK(sq[0] == S("t^(1/2) + O(t^4)"));
    CHECK(sq[1] == S("-t^(1/2) + O(t^4)"));

    // The branch through 1 agrees with the Hensel lift from r = 1.
    const auto branches = newton_puiseux(P("y^2 - (1+t)"), Exponent(6));
    const auto lift = hensel_lift(P("y^2 - (1+t)"), S("1"), {Exponent(6)});
    CHECK(std::find(branches.begin(), branches.end(), lift.root) != branches.end());

    CHECK(newton_puiseux(P("y^2 - y + t"), Exponent(5), {1, 1000}).size() == 1);
    CHECK_THROWS_AS(newton_puiseux(P("y^2 + 1"), Exponent(3)), UnsupportedError);
    CHECK_THROWS_AS(newton_puiseux(P("y^2"), Exponent(3)), PreconditionError);
    CHECK_THROWS_AS(newton_puiseux(P("(y - t)^2"), Exponent(3)), PreconditionError);

    // Only one cube root of a1^3 lies in Q(a1); the other two need an extension.
    CHECK_THROWS_AS(newton_puiseux(P("y^3 - t*a1^3"), Exponent(2)), UnsupportedError);
}

TEST_CASE("puiseux roots verify and are distinct")
{
    testing::Gen g(27);
    for (int i = 0; i < 30; ++i) {
        // (y - r0)(y - r1)(y - r2) + t^(1/2) * c with distinct rational residues.
        std::vector<Rational> rs{g.rational(4, 1), g.rational(4, 1), g.rational(4, 1)};
        if (rs[0] == rs[1] || rs[1] == rs[2] || rs[0] == rs[2]) {
            continue;
        }
        SeriesPolynomial q({TruncatedSeries::constant(Coefficient(1))});
        TruncatedSeries poly = TruncatedSeries::constant(Coefficient(1));
        std::vector<TruncatedSeries> cs{TruncatedSeries::constant(Coefficient(-rs[0] * rs[1] * rs[2])),
                                        TruncatedSeries::constant(Coefficient(rs[0] * rs[1] + rs[1] * rs[2] + rs[0] * rs[2])),
                                        TruncatedSeries::constant(Coefficient(-rs[0] - rs[1] - rs[2])),
                                        TruncatedSeries::constant(Coefficient(1))};
        cs[0] += TruncatedSeries::monomial(Coefficient(g.nonzero_rational()), Exponent(Rational(1, 2)));
        q = SeriesPolynomial(cs);
        const auto roots = newton_puiseux(q, Exponent(4));
        REQUIRE(roots.size() == 3);
        for (std::size_t a = 0; a < roots.size(); ++a) {
            CHECK(!verify_root(q, roots[a]).is_finite());
            for (std::size_t b = a + 1; b < roots.size(); ++b) {
                CHECK(v_min(roots[a] - roots[b]).is_finite());
            }
        }
    }
}

TEST_CASE("rational reconstruction examples")
{
    TruncatedSeries geo(1, Exponent(20));
    for (int i = 0; i < 20; ++i) {
        geo.add_term(Exponent(i), Coefficient(1));
    }
    const auto r = rational_reconstruct(geo, 0, 1);
    REQUIRE(r);
    CHECK(r->numerator == S("1"));
    CHECK(r->denominator == S("1 - t"));
    const auto sq = rational_reconstruct(S("t^2"), 2, 0);
    REQUIRE(sq);
    CHECK(sq->numerator == S("t^2"));
    CHECK(sq->denominator == S("1"));
    const auto root = hensel_lift(P("y^2 - (1+t)"), S("1"), {Exponent(12)}).root;
    CHECK(!rational_reconstruct(root, 2, 2));
    CHECK_THROWS_AS(rational_reconstruct(S("1 + t + O(t^2)"), 1, 1), PreconditionError);

    const auto half = rational_reconstruct(inverse(S("1 - t^(1/2)"), Exponent(4)), 0, 1);
    REQUIRE(half);
    CHECK(half->grid == 2);
    CHECK(half->denominator == S("1 - t^(1/2)"));
}

TEST_CASE("exp(t) is not reconstructible at small degrees")
{
    // Heuristic only: finite bounds cannot prove transcendence.
    const auto e = exp(S("t"), Exponent(20)).series();
    for (unsigned d = 0; d <= 4; ++d) {
        for (unsigned k = 0; k <= 4; ++k) {
            CHECK(!rational_reconstruct(e, d, k));
        }
    }
}

TEST_CASE("verify_root examples")
{
    CHECK(verify_root(P("y^2 - t"), S("t^(1/2) + O(t^10)")).kind() == Valuation::Kind::at_least);
    CHECK(verify_root(P("y^2 - t"), S("t^(1/2) + t^5 + O(t^10)")) == Valuation::finite(Exponent(Rational(11, 2))));
    CHECK(verify_root(P("y - 1"), S("0")) == Valuation::finite(Exponent(0)));
}
