#include <hahn/report.hpp>

namespace hahn::report
{

Json valuation(const Valuation &v)
{
    static const char *kinds[] = {"finite", "at_least", "infinite"};
    Json out;
    out["kind"] = kinds[static_cast<int>(v.kind())];
    out["value"] = v.kind() == Valuation::Kind::infinite ? Json(nullptr) : Json(to_string(v.value()));
    out["text"] = v.to_string();
    return out;
}

Json series(const TruncatedSeries &f)
{
    Json out;
    out["text"] = to_string(f);
    out["precision"] = to_string(f.precision());
    out["valuation"] = valuation(v_min(f));
    Json terms = Json::array();
    for (const auto &[e, c] : f.terms()) {
        terms.push_back({{"exponent", to_string(e)}, {"coefficient", c.to_string()}});
    }
    out["terms"] = std::move(terms);
    return out;
}

Json polynomial(const SeriesPolynomial &q)
{
    Json out;
    out["text"] = to_string(q);
    out["degree"] = q.degree();
    Json cs = Json::array();
    for (const auto &c : q.coefficients()) {
        cs.push_back(series(c));
    }
    out["coefficients"] = std::move(cs);
    return out;
}

Json place(const Place &p)
{
    return {{"var", p.var}, {"q", to_string(p.target)}};
}

Json independence(const IndependenceResult &r)
{
    Json out;
    out["independent"] = r.independent;
    if (r.independent) {
        out["witness"] = nullptr;
    } else {
        Json w = Json::array();
        for (const auto &c : r.witness) {
            w.push_back(c.to_string());
        }
        out["witness"] = std::move(w);
    }
    return out;
}

Json skeleton(const Skeleton &s)
{
    Json out;
    out["scalars"] = s.scalars.to_string();
    Json classes = Json::array();
    for (const auto &cls : s.classes) {
        Json leads = Json::array();
        for (const auto &c : cls.leads) {
            leads.push_back(c.to_string());
        }
        classes.push_back({{"value", to_string(cls.value)}, {"dimension", cls.dimension}, {"leads", std::move(leads)}});
    }
    out["classes"] = std::move(classes);
    return out;
}

namespace
{

template <class R, class F> Json inclusion_exclusion_table(const R &r, const TruncatedSeries &h, F series_of)
{
    Json out;
    out["h"] = series(h);
    Json places = Json::array();
    for (const auto &p : r.places) {
        places.push_back(place(p));
    }
    out["places"] = std::move(places);
    Json summands = Json::array();
    for (const auto &s : r.summands) {
        summands.push_back({{"sigma", s.sigma}, {"series", series(series_of(s.value))}});
    }
    out["summands"] = std::move(summands);
    return out;
}

} // namespace

Json inclusion_exclusion(const InclusionExclusion &r)
{
    return inclusion_exclusion_table(r, r.h, [](const TruncatedSeries &s) { return s; });
}

Json inclusion_exclusion(const MultInclusionExclusion &r)
{
    return inclusion_exclusion_table(r, r.h.series(), [](const OneUnit &u) { return u.series(); });
}

Json hensel(const HenselRun &run)
{
    Json out;
    out["root"] = series(run.root);
    out["start"] = series(run.start);
    Json residuals = Json::array();
    for (const auto &v : run.residuals) {
        residuals.push_back(valuation(v));
    }
    out["residuals"] = std::move(residuals);
    out["derivative_lead"] = run.derivative_lead.to_string();
    out["precision"] = to_string(run.precision);
    return out;
}

} // namespace hahn::report
