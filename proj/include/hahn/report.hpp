#ifndef HAHN_REPORT_HPP
#define HAHN_REPORT_HPP

#include <json.hpp>

#include <hahn/analytic.hpp>
#include <hahn/valuation_spaces.hpp>

namespace hahn::report
{

using Json = nlohmann::ordered_json;

Json valuation(const Valuation &v);
Json series(const TruncatedSeries &f);
Json polynomial(const SeriesPolynomial &q);
Json place(const Place &p);
Json independence(const IndependenceResult &r);
Json skeleton(const Skeleton &s);
Json inclusion_exclusion(const InclusionExclusion &r);
Json inclusion_exclusion(const MultInclusionExclusion &r);
Json hensel(const HenselRun &run);

} // namespace hahn::report

#endif
