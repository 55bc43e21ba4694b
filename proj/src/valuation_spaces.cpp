#include <hahn/valuation_spaces.hpp>

#include <algorithm>
#include <map>

#include <hahn/errors.hpp>

namespace hahn
{

namespace
{

Coefficient lead_of(const TruncatedSeries &f)
{
    return f.terms().begin()->second;
}

// Entries grouped by their (finite) minimal exponent.
std::map<Exponent, std::vector<std::size_t>> value_classes(std::span<const TruncatedSeries> vs)
{
    std::map<Exponent, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const Valuation v = v_min(vs[i]);
        if (!v.is_finite()) {
            throw PreconditionError("valuation independence: entry " + std::to_string(i + 1) + " is zero to precision ("
                                    + to_string(vs[i]) + ")");
        }
        if (vs[i].rank() != vs.front().rank()) {
            throw DimensionError("valuation independence: entries of different rank");
        }
        classes[v.value()].push_back(i);
    }
    return classes;
}

std::string sigma_string(unsigned bits, std::size_t n)
{
    std::string s(n, '0');
    for (std::size_t k = 0; k < n; ++k) {
        if (bits & (1u << k)) {
            s[k] = '1';
        }
    }
    return s;
}

void check_specs(const std::set<unsigned> &used, const std::vector<PlaceSpec> &specs)
{
    std::set<unsigned> vars;
    for (const auto &spec : specs) {
        if (!vars.insert(spec.var).second) {
            throw PreconditionError("inclusion-exclusion: variable a" + std::to_string(spec.var) + " listed twice");
        }
    }
    if (specs.size() > 16) {
        throw BudgetExceeded("inclusion-exclusion: at most 16 variables are supported");
    }
    for (auto v : used) {
        if (!vars.contains(v)) {
            throw PreconditionError("inclusion-exclusion: coefficient variable a" + std::to_string(v)
                                    + " is not among the listed places");
        }
    }
}

std::set<unsigned> series_variables(const TruncatedSeries &f)
{
    std::set<unsigned> out;
    for (const auto &[e, c] : f.terms()) {
        const auto vs = c.variables();
        out.insert(vs.begin(), vs.end());
    }
    return out;
}

// Places P_N..P_1 with P_k finite on every series in the layer so far;
// step(g, P) produces the series added for the bit of P.
template <class T, class Series, class Step>
std::vector<Place> build_layers(std::vector<Summand<T>> &layer, std::vector<PlaceSpec> &specs, Series series_of,
                                Step step)
{
    const std::size_t n = specs.size();
    std::vector<Place> places(n);
    std::vector<unsigned> bits{0};
    for (std::size_t k = n; k-- > 0;) {
        std::vector<Coefficient> cs;
        for (const auto &s : layer) {
            for (const auto &[e, c] : series_of(s.value).terms()) {
                cs.push_back(c);
            }
        }
        places[k] = finite_place_for(cs, specs[k].var, specs[k].candidates);
        const std::size_t size = layer.size();
        for (std::size_t i = 0; i < size; ++i) {
            bits.push_back(bits[i] | (1u << k));
            layer.push_back({std::string(), step(layer[i].value, places[k])});
        }
    }
    for (std::size_t i = 0; i < layer.size(); ++i) {
        layer[i].sigma = sigma_string(bits[i], n);
    }
    std::stable_sort(layer.begin(), layer.end(), [](const auto &a, const auto &b) { return a.sigma < b.sigma; });
    return places;
}

} // namespace

IndependenceResult is_valuation_independent(std::span<const TruncatedSeries> vs, const ScalarField &k)
{
    for (const auto &[value, members] : value_classes(vs)) {
        if (members.size() < 2) {
            continue;
        }
        std::vector<Coefficient> leads;
        for (auto i : members) {
            leads.push_back(lead_of(vs[i]));
        }
        if (auto r = linear_relation(leads, k)) {
            IndependenceResult out{false, std::vector<Coefficient>(vs.size())};
            for (std::size_t j = 0; j < members.size(); ++j) {
                out.witness[members[j]] = (*r)[j];
            }
            return out;
        }
    }
    return {};
}

BasisFamily::BasisFamily(ScalarField k, std::vector<TruncatedSeries> entries)
    : scalars_(std::move(k)), entries_(std::move(entries))
{
    const auto r = is_valuation_independent(entries_, scalars_);
    if (!r.independent) {
        throw DependenceError("basis entries are not valuation independent over " + scalars_.to_string());
    }
}

void BasisFamily::push_back(TruncatedSeries entry)
{
    entries_.push_back(std::move(entry));
    if (!is_valuation_independent(entries_, scalars_).independent) {
        entries_.pop_back();
        throw DependenceError("new basis entry is valuation dependent on the family over " + scalars_.to_string());
    }
}

Approximation optimal_approx(const TruncatedSeries &f, const BasisFamily &b)
{
    const auto &entries = b.entries();
    std::map<Exponent, std::vector<std::size_t>> classes;
    if (!entries.empty()) {
        classes = value_classes(entries);
    }
    Approximation out{TruncatedSeries(f.rank()), std::vector<Coefficient>(entries.size())};
    TruncatedSeries rest = f;
    while (true) {
        const Valuation v = v_min(rest);
        if (!v.is_finite()) {
            break;
        }
        const auto it = classes.find(v.value());
        if (it == classes.end()) {
            break;
        }
        std::vector<Coefficient> leads;
        for (auto i : it->second) {
            leads.push_back(lead_of(entries[i]));
        }
        const auto x = solve_in_span(leads, lead_of(rest), b.scalars());
        if (!x) {
            break;
        }
        for (std::size_t j = 0; j < x->size(); ++j) {
            if (!(*x)[j].is_zero()) {
                const std::size_t i = it->second[j];
                out.coords[i] += (*x)[j];
                rest -= entries[i] * (*x)[j];
            }
        }
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!out.coords[i].is_zero()) {
            out.value += entries[i] * out.coords[i];
        }
    }
    return out;
}

TruncatedSeries optimal_approx(const TruncatedSeries &f, std::span<const TruncatedSeries> spanning,
                               const ScalarField &k)
{
    BasisFamily b(k);
    for (const auto &s : spanning) {
        b = extend_basis(std::move(b), s);
    }
    return optimal_approx(f, b).value;
}

std::vector<Coefficient> span_coordinates(const TruncatedSeries &f, const BasisFamily &b)
{
    auto a = optimal_approx(f, b);
    if (v_min(f - a.value).is_finite()) {
        throw PreconditionError("span_coordinates: " + to_string(f) + " is not in the span of the basis");
    }
    return std::move(a.coords);
}

BasisFamily extend_basis(BasisFamily b, const TruncatedSeries &a)
{
    const TruncatedSeries diff = a - optimal_approx(a, b).value;
    if (v_min(diff).is_finite()) {
        b.push_back(diff);
    }
    return b;
}

InclusionExclusion inclusion_exclusion_approx(const TruncatedSeries &f, std::vector<PlaceSpec> specs)
{
    check_specs(series_variables(f), specs);
    std::vector<Summand<TruncatedSeries>> layer{{std::string(), f}};
    auto places = build_layers<TruncatedSeries>(
        layer, specs, [](const TruncatedSeries &s) -> const TruncatedSeries & { return s; },
        [](const TruncatedSeries &g, const Place &p) { return -phi(g, p); });
    TruncatedSeries h(f.rank(), f.precision());
    for (std::size_t i = 1; i < layer.size(); ++i) {
        h -= layer[i].value;
    }
    return {std::move(h), std::move(places), std::move(layer)};
}

MultInclusionExclusion mult_inclusion_exclusion(const OneUnit &u, std::vector<PlaceSpec> specs,
                                                const Precision &target)
{
    check_specs(series_variables(u.series()), specs);
    const Precision p = min_precision(u.series().precision(), target);
    if (!p) {
        throw PreconditionError("mult_inclusion_exclusion of an exact 1-unit needs a target precision");
    }
    std::vector<Summand<OneUnit>> layer{{std::string(), OneUnit(u.series().truncated(p))}};
    auto places = build_layers<OneUnit>(
        layer, specs, [](const OneUnit &s) -> const TruncatedSeries & { return s.series(); },
        [&](const OneUnit &g, const Place &place) { return OneUnit(inverse(phi(g.series(), place), p)); });
    TruncatedSeries h = TruncatedSeries::constant(Coefficient(1), u.series().rank(), p);
    for (std::size_t i = 1; i < layer.size(); ++i) {
        h = h * inverse(layer[i].value.series(), p);
    }
    return {OneUnit(h.truncated(p)), std::move(places), std::move(layer)};
}

bool Skeleton::equivalent(const Skeleton &other) const
{
    if (!(scalars == other.scalars) || classes.size() != other.classes.size()) {
        return false;
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto &a = classes[i];
        const auto &b = other.classes[i];
        if (a.value != b.value || a.dimension != b.dimension) {
            return false;
        }
        for (const auto &lead : a.leads) {
            if (!solve_in_span(b.leads, lead, scalars)) {
                return false;
            }
        }
    }
    return true;
}

Skeleton skeleton_of(std::span<const TruncatedSeries> vs, const ScalarField &k)
{
    if (!is_valuation_independent(vs, k).independent) {
        throw DependenceError("skeleton_of: entries are not valuation independent over " + k.to_string());
    }
    Skeleton out{k, {}};
    if (vs.empty()) {
        return out;
    }
    for (const auto &[value, members] : value_classes(vs)) {
        SkeletonClass cls{value, members.size(), {}};
        for (auto i : members) {
            cls.leads.push_back(lead_of(vs[i]));
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

Skeleton multiplicative_skeleton(std::span<const OneUnit> us, const ScalarField &k)
{
    std::vector<TruncatedSeries> diffs;
    for (const auto &u : us) {
        diffs.push_back(u.series() - TruncatedSeries::constant(Coefficient(1), u.series().rank()));
    }
    return skeleton_of(diffs, k);
}

BasisFamily tensor_basis(const BasisFamily &b, std::span<const Coefficient> bk, const ScalarField &small)
{
    if (linear_relation(bk, small)) {
        throw DependenceError("tensor_basis: scalar list is linearly dependent over " + small.to_string());
    }
    std::vector<TruncatedSeries> out;
    for (const auto &entry : b.entries()) {
        for (const auto &c : bk) {
            out.push_back(entry * c);
        }
    }
    return BasisFamily(small, std::move(out));
}

namespace
{

// u^q with integer exponents done by plain powers so exact input stays exact.
OneUnit unit_power(const OneUnit &u, const Rational &q, const Precision &target)
{
    if (q.get_den() == 1 && abs(q) <= 64) {
        const long n = q.get_num().get_si();
        TruncatedSeries s = u.series().pow(static_cast<unsigned>(n < 0 ? -n : n)).truncated(target);
        if (n < 0) {
            s = inverse(s, min_precision(s.precision(), target));
        }
        return OneUnit(std::move(s));
    }
    return unit_pow(u, q, target);
}

OneUnit unit_product(const std::vector<OneUnit> &us, const std::vector<Rational> &xs, std::size_t rank,
                     const Precision &target)
{
    TruncatedSeries acc = TruncatedSeries::constant(Coefficient(1), rank);
    for (std::size_t i = 0; i < us.size(); ++i) {
        if (xs[i] != 0) {
            acc = acc * unit_power(us[i], xs[i], target).series();
        }
    }
    return OneUnit(acc.truncated(target));
}

std::vector<Rational> rational_coords(const std::vector<Coefficient> &cs)
{
    std::vector<Rational> out;
    for (const auto &c : cs) {
        out.push_back(c.as_rational());
    }
    return out;
}

} // namespace

RestrictedExp RestrictedExp::build(const BasisFamily &additive, std::vector<OneUnit> multiplicative,
                                   const Precision &target)
{
    if (!additive.scalars().vars.empty()) {
        throw PreconditionError("build_restricted_exp: the additive basis must be over Q");
    }
    const Skeleton add = skeleton_of(additive.entries(), {});
    const Skeleton mult = multiplicative_skeleton(multiplicative, {});
    if (!add.equivalent(mult)) {
        throw PreconditionError("build_restricted_exp: skeleton mismatch between the additive and multiplicative "
                                "bases");
    }
    std::map<Exponent, std::vector<std::size_t>> mult_classes;
    for (std::size_t j = 0; j < multiplicative.size(); ++j) {
        mult_classes[multiplicative[j].w().value()].push_back(j);
    }
    const std::size_t rank = additive.empty() ? 1 : additive.entries().front().rank();
    std::vector<OneUnit> images;
    for (const auto &entry : additive.entries()) {
        const auto &members = mult_classes.at(v_min(entry).value());
        std::vector<Coefficient> leads;
        for (auto j : members) {
            leads.push_back(lead_of(multiplicative[j].series()
                                    - TruncatedSeries::constant(Coefficient(1), multiplicative[j].series().rank())));
        }
        const auto x = solve_in_span(leads, lead_of(entry), {});
        std::vector<Rational> exps(multiplicative.size());
        for (std::size_t k = 0; k < members.size(); ++k) {
            exps[members[k]] = (*x)[k].as_rational();
        }
        images.push_back(unit_product(multiplicative, exps, rank, target));
    }
    return RestrictedExp(additive, std::move(images), target);
}

OneUnit RestrictedExp::apply(const TruncatedSeries &eps) const
{
    const auto xs = rational_coords(span_coordinates(eps, additive_));
    return unit_product(images_, xs, eps.rank(), min_precision(target_, eps.precision()));
}

bool RestrictedExp::is_homomorphic_on(const TruncatedSeries &a, const TruncatedSeries &b) const
{
    return equal_to_precision(apply(a + b).series(), apply(a).series() * apply(b).series());
}

bool RestrictedExp::is_w_compatible_on(const TruncatedSeries &eps) const
{
    return apply(eps).w() == v_min(eps);
}

std::vector<BasisFamily> chain_basis_build(const std::vector<ChainStage> &stages)
{
    std::vector<BasisFamily> out;
    BasisFamily b;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        const auto &stage = stages[s];
        if (s > 0 && !std::includes(stage.vars.vars.begin(), stage.vars.vars.end(), stages[s - 1].vars.vars.begin(),
                                    stages[s - 1].vars.vars.end())) {
            throw PreconditionError("chain_basis_build: stage " + std::to_string(s) + " does not contain stage "
                                    + std::to_string(s - 1));
        }
        for (const auto &input : stage.inputs) {
            for (auto v : series_variables(input)) {
                if (!stage.vars.vars.contains(v)) {
                    throw PreconditionError("chain_basis_build: input " + to_string(input) + " of stage "
                                            + std::to_string(s) + " uses a" + std::to_string(v));
                }
            }
            b = extend_basis(std::move(b), input);
        }
        out.push_back(b);
    }
    return out;
}

} // namespace hahn
