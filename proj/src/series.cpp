#include <hahn/series.hpp>

#include <hahn/errors.hpp>

namespace hahn
{

Precision min_precision(const Precision &a, const Precision &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return *a < *b ? a : b;
}

bool precision_less(const Precision &a, const Precision &b)
{
    if (!a) {
        return false;
    }
    if (!b) {
        return true;
    }
    return *a < *b;
}

namespace
{

// prec + lower bound of v; infinite when either is.
Precision shift(const Precision &p, const Valuation &v)
{
    if (!p || v.kind() == Valuation::Kind::infinite) {
        return std::nullopt;
    }
    return *p + v.value();
}

std::string t_power(const Exponent &e)
{
    if (e.rank() == 1) {
        const Rational &q = e[0];
        if (q == 1) {
            return "t";
        }
        if (q.get_den() == 1 && q > 0) {
            return "t^" + to_string(q);
        }
        return "t^(" + to_string(q) + ")";
    }
    return "t^" + to_string(e);
}

// Appends c * factor (factor may be empty) with sign handling.
void append_term(std::string &out, bool &first, const Coefficient &c, const std::string &factor)
{
    const bool negative = c.is_atomic() && c.has_negative_lead();
    const Coefficient mag = negative ? -c : c;
    std::string body;
    if (factor.empty()) {
        body = mag.to_string();
    } else if (mag == Coefficient(1)) {
        body = factor;
    } else if (mag.is_atomic()) {
        body = mag.to_string() + "*" + factor;
    } else {
        body = "(" + mag.to_string() + ")*" + factor;
    }
    if (first) {
        out += negative ? "-" + body : body;
    } else {
        out += negative ? " - " + body : " + " + body;
    }
    first = false;
}

void append_terms(std::string &out, bool &first, const TruncatedSeries &f, const std::string &suffix)
{
    for (const auto &[e, c] : f.terms()) {
        std::string factor = e.is_zero() ? std::string() : t_power(e);
        if (!suffix.empty()) {
            factor = factor.empty() ? suffix : factor + "*" + suffix;
        }
        append_term(out, first, c, factor);
    }
}

std::string big_o(const Exponent &p)
{
    return "O(" + (p.is_zero() ? std::string("t^0") : t_power(p)) + ")";
}

} // namespace

std::string to_string(const Precision &p)
{
    return p ? to_string(*p) : std::string("inf");
}

const Exponent &Valuation::value() const
{
    if (kind_ == Kind::infinite) {
        throw PreconditionError("the valuation of the exact zero has no exponent");
    }
    return value_;
}

bool Valuation::certainly_greater(const Exponent &x) const
{
    switch (kind_) {
    case Kind::infinite:
        return true;
    case Kind::finite:
        return value_ > x;
    case Kind::at_least:
        return value_ > x;
    }
    return false;
}

bool Valuation::certainly_at_least(const Exponent &x) const
{
    return kind_ == Kind::infinite || value_ >= x;
}

std::string Valuation::to_string() const
{
    switch (kind_) {
    case Kind::finite:
        return hahn::to_string(value_);
    case Kind::at_least:
        return ">= " + hahn::to_string(value_) + " (unknown)";
    case Kind::infinite:
        return "inf";
    }
    return {};
}

bool operator==(const Valuation &a, const Valuation &b)
{
    if (a.kind_ != b.kind_) {
        return false;
    }
    return a.kind_ == Valuation::Kind::infinite || a.value_ == b.value_;
}

TruncatedSeries::TruncatedSeries(std::size_t rank, Precision prec) : rank_(rank), prec_(std::move(prec))
{
    if (rank_ == 0) {
        throw DimensionError("series rank must be at least 1");
    }
    if (prec_ && prec_->rank() != rank_) {
        throw DimensionError("precision rank does not match series rank");
    }
}

TruncatedSeries TruncatedSeries::constant(const Coefficient &c, std::size_t rank, Precision prec)
{
    TruncatedSeries f(rank, std::move(prec));
    f.add_term(Exponent::zero(rank), c);
    return f;
}

TruncatedSeries TruncatedSeries::monomial(const Coefficient &c, const Exponent &e, Precision prec)
{
    TruncatedSeries f(e.rank(), std::move(prec));
    f.add_term(e, c);
    return f;
}

void TruncatedSeries::check_rank(const TruncatedSeries &o) const
{
    if (o.rank_ != rank_) {
        throw DimensionError("series rank mismatch: " + std::to_string(rank_) + " vs " + std::to_string(o.rank_));
    }
}

Coefficient TruncatedSeries::coefficient(const Exponent &e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient() : it->second;
}

TruncatedSeries &TruncatedSeries::add_term(const Exponent &e, const Coefficient &c)
{
    if (e.rank() != rank_) {
        throw DimensionError("term exponent rank does not match series rank");
    }
    if (c.is_zero() || (prec_ && e >= *prec_)) {
        return *this;
    }
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
    return *this;
}

TruncatedSeries TruncatedSeries::truncated(const Precision &p) const
{
    if (p && p->rank() != rank_) {
        throw DimensionError("precision rank does not match series rank");
    }
    TruncatedSeries r(rank_, min_precision(prec_, p));
    for (const auto &[e, c] : terms_) {
        if (r.prec_ && e >= *r.prec_) {
            break;
        }
        r.terms_.emplace_hint(r.terms_.end(), e, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::as_exact() const
{
    TruncatedSeries r = *this;
    r.prec_.reset();
    return r;
}

TruncatedSeries &TruncatedSeries::operator+=(const TruncatedSeries &o)
{
    check_rank(o);
    prec_ = min_precision(prec_, o.prec_);
    if (prec_) {
        terms_.erase(terms_.lower_bound(*prec_), terms_.end());
    }
    for (const auto &[e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

TruncatedSeries &TruncatedSeries::operator-=(const TruncatedSeries &o)
{
    return *this += -o;
}

TruncatedSeries &TruncatedSeries::operator*=(const Coefficient &c)
{
    if (c.is_zero()) {
        terms_.clear();
        prec_.reset();
        return *this;
    }
    for (auto &[e, coeff] : terms_) {
        coeff *= c;
    }
    return *this;
}

TruncatedSeries TruncatedSeries::operator-() const
{
    TruncatedSeries r = *this;
    for (auto &[e, c] : r.terms_) {
        c = -c;
    }
    return r;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
{
    a.check_rank(b);
    const Precision prec = min_precision(shift(a.prec_, v_min(b)), shift(b.prec_, v_min(a)));
    TruncatedSeries r(a.rank_, prec);
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            Exponent e = ea + eb;
            if (prec && e >= *prec) {
                break;
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return a.rank_ == b.rank_ && a.prec_ == b.prec_ && a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::shifted(const Exponent &e) const
{
    TruncatedSeries r(rank_, prec_ ? Precision(*prec_ + e) : std::nullopt);
    for (const auto &[g, c] : terms_) {
        r.terms_.emplace_hint(r.terms_.end(), g + e, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::pow(unsigned n) const
{
    TruncatedSeries result = constant(Coefficient(1), rank_);
    TruncatedSeries base = *this;
    while (n != 0) {
        if (n & 1u) {
            result = result * base;
        }
        n >>= 1u;
        if (n != 0) {
            base = base * base;
        }
    }
    return result;
}

bool equal_to_precision(const TruncatedSeries &a, const TruncatedSeries &b)
{
    const Precision p = min_precision(a.precision(), b.precision());
    return a.truncated(p).terms() == b.truncated(p).terms();
}

Valuation v_min(const TruncatedSeries &f)
{
    if (!f.terms().empty()) {
        return Valuation::finite(f.terms().begin()->first);
    }
    if (f.precision()) {
        return Valuation::at_least(*f.precision());
    }
    return Valuation::infinite();
}

TruncatedSeries inverse(const TruncatedSeries &f, const Precision &cap)
{
    if (f.is_zero()) {
        throw DivisionByZero("inversion of a series that is zero to its precision");
    }
    const auto &[v, c] = *f.terms().begin();
    const Coefficient c_inv = c.inverse();
    // f = c t^v (1 + e)
    TruncatedSeries e = (f * c_inv).shifted(-v);
    e.add_term(Exponent::zero(f.rank()), Coefficient(-1));

    Precision target = f.precision() ? Precision(*f.precision() - v - v) : std::nullopt;
    target = min_precision(target, cap);
    if (!target) {
        if (e.is_zero()) {
            return TruncatedSeries::monomial(c_inv, -v);
        }
        throw PreconditionError("inverse of an exact non-monomial series needs a target precision");
    }
    const Exponent relative = *target + v;
    TruncatedSeries unit_inv = TruncatedSeries::constant(Coefficient(1), f.rank(), relative);
    if (!e.is_zero() || e.precision()) {
        const Valuation ve = v_min(e);
        const Exponent step = ve.value();
        const auto n = least_multiple_reaching(step, relative);
        if (!n) {
            throw PreconditionError("inverse: precision " + to_string(relative)
                                    + " is not reachable by multiples of " + to_string(step));
        }
        const TruncatedSeries minus_e = -e.truncated(relative);
        TruncatedSeries power = TruncatedSeries::constant(Coefficient(1), f.rank());
        for (std::uint64_t i = 1; i < *n; ++i) {
            power = (power * minus_e).truncated(relative);
            unit_inv += power;
        }
    }
    return (unit_inv * c_inv).shifted(-v).truncated(target);
}

TruncatedSeries phi(const TruncatedSeries &f, const Place &p)
{
    TruncatedSeries r(f.rank(), f.precision());
    for (const auto &[e, c] : f.terms()) {
        auto image = apply_place(c, p);
        if (!image) {
            throw NotInValuationRing("coefficient " + c.to_string() + " of t^" + to_string(e) + " has a pole at "
                                     + to_string(p));
        }
        r.add_term(e, *image);
    }
    return r;
}

std::pair<TruncatedSeries, TruncatedSeries> split_neg(const TruncatedSeries &f)
{
    const Exponent zero = Exponent::zero(f.rank());
    const bool short_prec = f.precision() && *f.precision() <= zero;
    TruncatedSeries neg(f.rank(), short_prec ? f.precision() : std::nullopt);
    TruncatedSeries ring(f.rank(), short_prec ? Precision(zero) : f.precision());
    for (const auto &[e, c] : f.terms()) {
        if (e < zero) {
            neg.add_term(e, c);
        } else {
            ring.add_term(e, c);
        }
    }
    return {neg, ring};
}

Coefficient residue(const TruncatedSeries &f)
{
    const Exponent zero = Exponent::zero(f.rank());
    const Valuation v = v_min(f);
    if (v.is_finite() && v.value() < zero) {
        throw NotInValuationRing("residue of a series with negative valuation " + v.to_string());
    }
    if (!v.certainly_at_least(zero)) {
        throw PreconditionError("residue undetermined: series is only known to " + v.to_string());
    }
    return f.coefficient(zero);
}

SeriesPolynomial::SeriesPolynomial(std::vector<TruncatedSeries> coeffs) : coeffs_(std::move(coeffs))
{
    // An inexact zero constant is kept so "O(t^p)" alone keeps its precision.
    while (!coeffs_.empty() && coeffs_.back().is_zero() && (coeffs_.size() > 1 || coeffs_.back().is_exact())) {
        coeffs_.pop_back();
    }
    for (const auto &c : coeffs_) {
        if (c.rank() != coeffs_.front().rank()) {
            throw DimensionError("polynomial coefficients of different ranks");
        }
    }
}

std::size_t SeriesPolynomial::rank() const
{
    return coeffs_.empty() ? 1 : coeffs_.front().rank();
}

Precision SeriesPolynomial::precision() const
{
    Precision p;
    for (const auto &c : coeffs_) {
        p = min_precision(p, c.precision());
    }
    return p;
}

SeriesPolynomial SeriesPolynomial::derivative() const
{
    std::vector<TruncatedSeries> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        d.push_back(coeffs_[i] * Coefficient(static_cast<long>(i)));
    }
    return SeriesPolynomial(std::move(d));
}

SeriesPolynomial SeriesPolynomial::taylor_shift(const TruncatedSeries &s) const
{
    std::vector<TruncatedSeries> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j-- > i;) {
            c[j] += s * c[j + 1];
        }
    }
    SeriesPolynomial r;
    r.coeffs_ = std::move(c);
    return r;
}

TruncatedSeries eval_poly(const SeriesPolynomial &q, const TruncatedSeries &f)
{
    const auto &cs = q.coefficients();
    if (cs.empty()) {
        return TruncatedSeries(f.rank());
    }
    TruncatedSeries acc = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) {
        acc = acc * f + cs[i];
    }
    return acc;
}

SeriesPolynomial phi(const SeriesPolynomial &q, const Place &p)
{
    std::vector<TruncatedSeries> cs;
    for (const auto &c : q.coefficients()) {
        cs.push_back(phi(c, p));
    }
    return SeriesPolynomial(std::move(cs));
}

std::string to_string(const TruncatedSeries &f)
{
    std::string out;
    bool first = true;
    append_terms(out, first, f, {});
    if (first) {
        out = "0";
    }
    if (f.precision()) {
        out += " + " + big_o(*f.precision());
    }
    return out;
}

std::string to_string(const SeriesPolynomial &q)
{
    const auto &cs = q.coefficients();
    bool uniform = true;
    for (const auto &c : cs) {
        uniform = uniform && c.precision() == cs.front().precision();
    }
    std::string out;
    bool first = true;
    for (std::size_t i = cs.size(); i-- > 0;) {
        const TruncatedSeries &c = cs[i];
        const std::string y = i == 0 ? std::string() : (i == 1 ? std::string("y") : "y^" + std::to_string(i));
        if (!uniform && c.precision()) {
            // Mixed precisions: every inexact coefficient carries its own O term.
            out += (first ? "(" : " + (") + to_string(c) + ")" + (y.empty() ? y : "*" + y);
            first = false;
            continue;
        }
        if (c.is_zero()) {
            continue;
        }
        if (i == 0 || c.terms().size() == 1) {
            append_terms(out, first, c, y);
            continue;
        }
        std::string inner;
        bool inner_first = true;
        append_terms(inner, inner_first, c, {});
        out += (first ? "(" : " + (") + inner + ")*" + y;
        first = false;
    }
    if (first) {
        out = "0";
    }
    if (const Precision p = q.precision(); uniform && p) {
        out += " + " + big_o(*p);
    }
    return out;
}

} // namespace hahn
