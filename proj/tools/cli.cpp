#include "cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include <hahn/analytic.hpp>
#include <hahn/errors.hpp>
#include <hahn/parser.hpp>
#include <hahn/report.hpp>
#include <hahn/valuation_spaces.hpp>

namespace hahn::cli
{

namespace
{

using report::Json;

struct Session {
    std::string prec_text = "10";
    std::size_t rank = 1;
    std::uint64_t seed = 0;
    bool seeded = false;
    bool json = false;
    std::string out_file;

    Exponent prec() const
    {
        return exponent_of(prec_text);
    }
    Exponent exponent_of(const std::string &text) const
    {
        // "6", "13/2" or "(1, 0)"; a single value means a multiple of e1.
        if (rank > 1 && text.find(',') == std::string::npos) {
            return Exponent::unit(rank, 0) * parse_rational(text);
        }
        return parse_exponent(text, rank);
    }
    ParseContext ctx() const
    {
        return {rank, prec()};
    }
    PlaceCandidates candidates(unsigned var) const
    {
        return seeded ? PlaceCandidates::seeded(seed * 1000003 + var) : PlaceCandidates();
    }
};

struct Output {
    std::string text;
    Json json;
};

std::set<unsigned> parse_vars(const std::string &text)
{
    std::set<unsigned> vars;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) {
            continue;
        }
        item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
        if (item == "Q") {
            continue;
        }
        if (item.size() > 1 && item[0] == 'a') {
            item = item.substr(1);
        }
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos || item[0] == '0'
            || item.size() > 6) {
            throw ParseError("bad variable index '" + item + "' in '" + text + "'", 1, 1);
        }
        vars.insert(static_cast<unsigned>(std::stoul(item)));
    }
    return vars;
}

std::vector<std::string> split_semicolons(const std::string &text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ';')) {
        if (item.find_first_not_of(" \t") != std::string::npos) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<TruncatedSeries> parse_all(const std::vector<std::string> &texts, const Session &s)
{
    std::vector<TruncatedSeries> out;
    for (const auto &t : texts) {
        out.push_back(parse_series(t, s.ctx()));
    }
    return out;
}

std::string join(const std::vector<std::string> &items, const std::string &sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += (i ? sep : std::string()) + items[i];
    }
    return out;
}

std::string coeff_list(const std::vector<Coefficient> &cs)
{
    std::vector<std::string> items;
    for (const auto &c : cs) {
        items.push_back(c.to_string());
    }
    return "(" + join(items, ", ") + ")";
}

Json series_list(const std::vector<TruncatedSeries> &fs)
{
    Json out = Json::array();
    for (const auto &f : fs) {
        out.push_back(report::series(f));
    }
    return out;
}

std::string prime_set(const std::set<Integer> &ps)
{
    std::vector<std::string> items;
    for (const auto &p : ps) {
        items.push_back(p.get_str());
    }
    return "{" + join(items, ", ") + "}";
}

std::vector<PlaceSpec> place_specs(const std::string &vars, const Session &s)
{
    std::vector<PlaceSpec> specs;
    for (auto v : parse_vars(vars)) {
        specs.push_back({v, s.candidates(v)});
    }
    return specs;
}

std::string inclexcl_text(const std::vector<Place> &places, const std::vector<std::pair<std::string, std::string>> &rows,
                          const std::string &h)
{
    std::string text;
    for (const auto &p : places) {
        text += "place " + to_string(p) + "\n";
    }
    for (const auto &[sigma, value] : rows) {
        text += "sigma " + sigma + ": " + value + "\n";
    }
    return text + "h = " + h + "\n";
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Truncated Hahn series toolkit"};
    app.name("hahn");
    app.require_subcommand(1);
    Session s;
    app.add_option("--prec", s.prec_text, "default precision, e.g. 10, 13/2 or (1, 0)")->capture_default_str();
    app.add_option("--rank", s.rank, "rank of the exponent group Q^k")->capture_default_str()->check(CLI::Range(1, 16));
    auto *seed_opt = app.add_option("--seed", s.seed, "seed for randomized place candidates");
    app.add_flag("--json", s.json, "emit JSON");
    app.add_option("--out", s.out_file, "write the output to FILE");

    auto command = [&](const char *name, const char *help) {
        auto *sub = app.add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    };

    std::string expr, root = "0", q_text, over, vars, small;
    std::vector<std::string> exprs, basis, coeffs, adds, mults, samples, stages;
    std::size_t branches = 0;
    unsigned num_deg = 0, den_deg = 0, var = 1;
    bool quadratic = false, multiplicative = false;

    auto *c_exp = command("exp", "exp(e) for v_min(e) > 0");
    c_exp->add_option("expr", expr)->required();
    auto *c_log = command("log", "log(u) for a 1-unit u");
    c_log->add_option("expr", expr)->required();
    auto *c_pow = command("pow", "u^q = exp(q log u)");
    c_pow->add_option("expr", expr)->required();
    c_pow->add_option("--q", q_text, "rational exponent")->required();
    auto *c_hensel = command("hensel", "lift a simple residue root");
    c_hensel->add_option("poly", expr)->required();
    c_hensel->add_option("--root", root, "approximate root")->capture_default_str();
    c_hensel->add_flag("--quadratic", quadratic, "Newton steps instead of the fixed-slope contraction");
    auto *c_puiseux = command("puiseux", "Newton-Puiseux roots");
    c_puiseux->add_option("poly", expr)->required();
    c_puiseux->add_option("--branches", branches, "stop after this many branches (0: all)");
    auto *c_ratrec = command("ratrec", "rational reconstruction");
    c_ratrec->add_option("expr", expr)->required();
    c_ratrec->add_option("--num-deg", num_deg)->required();
    c_ratrec->add_option("--den-deg", den_deg)->required();
    auto *c_vmin = command("vmin", "minimal support valuation");
    c_vmin->add_option("expr", expr)->required();
    auto *c_spec = command("specialize", "apply the place a_var -> q coefficientwise");
    c_spec->add_option("expr", expr)->required();
    c_spec->add_option("--var", var)->required();
    c_spec->add_option("--q", q_text)->required();
    auto *c_split = command("splitneg", "split into negative part and valuation-ring part");
    c_split->add_option("expr", expr)->required();
    auto *c_indep = command("indep", "valuation independence test");
    c_indep->add_option("exprs", exprs)->required();
    c_indep->add_option("--over", over, "scalar field variables, e.g. 1,2");
    auto *c_opt = command("optapprox", "optimal approximation in a span");
    c_opt->add_option("expr", expr)->required();
    c_opt->add_option("--basis", basis)->required();
    c_opt->add_option("--over", over);
    auto *c_ie = command("inclexcl", "additive inclusion-exclusion approximation");
    c_ie->add_option("expr", expr)->required();
    c_ie->add_option("--vars", vars, "variables to specialize, e.g. 1,2")->required();
    auto *c_mie = command("multinclexcl", "multiplicative inclusion-exclusion approximation");
    c_mie->add_option("expr", expr)->required();
    c_mie->add_option("--vars", vars)->required();
    auto *c_skel = command("skeleton", "skeleton of a valuation independent family");
    c_skel->add_option("exprs", exprs)->required();
    c_skel->add_option("--over", over);
    c_skel->add_flag("--mult", multiplicative, "treat entries as 1-units, values w(u) = v_min(u - 1)");
    auto *c_tensor = command("tensor", "tensor basis {b' * b}");
    c_tensor->add_option("exprs", exprs)->required();
    c_tensor->add_option("--over", over, "field of the basis");
    c_tensor->add_option("--coeffs", coeffs, "basis of that field over the small one")->required();
    c_tensor->add_option("--small", small, "small field");
    auto *c_rest = command("restexp", "restricted exponential from matched bases");
    c_rest->add_option("--add", adds)->required();
    c_rest->add_option("--mult", mults)->required();
    c_rest->add_option("--sample", samples);
    auto *c_chain = command("chain", "nested basis extension");
    c_chain->add_option("--stage", stages, "'vars: expr ; expr', e.g. '1: a1*t'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error [usage]: " << e.what() << "\n";
        return 3;
    }
    s.seeded = seed_opt->count() > 0;
    const std::string name = app.get_subcommands().front()->get_name();

    auto series_output = [](const TruncatedSeries &f) { return Output{to_string(f) + "\n", report::series(f)}; };

    try {
        const ParseContext ctx = s.ctx();
        const Exponent prec = s.prec();
        Output result;
        if (name == "exp") {
            result = series_output(exp(parse_series(expr, ctx), prec).series());
        } else if (name == "log") {
            result = series_output(log(OneUnit(parse_series(expr, ctx)), prec));
        } else if (name == "pow") {
            result = series_output(unit_pow(OneUnit(parse_series(expr, ctx)), parse_rational(q_text), prec).series());
        } else if (name == "hensel") {
            HenselOptions opts{prec, quadratic ? HenselVariant::newton : HenselVariant::contraction};
            const HenselRun run = hensel_lift(parse_polynomial(expr, ctx), parse_series(root, ctx), opts);
            std::vector<std::string> vs;
            for (const auto &v : run.residuals) {
                vs.push_back(v.to_string());
            }
            result.text = to_string(run.root) + "\nresidual valuations: " + join(vs, ", ") + "\n";
            result.json = report::hensel(run);
            try {
                const auto d = track_denominators(run);
                result.text += "denominator primes: " + prime_set(d.root_primes) + " within "
                               + prime_set(d.allowed_primes) + "\n";
                result.json["denominators"] = {{"root_primes", prime_set(d.root_primes)},
                                               {"allowed_primes", prime_set(d.allowed_primes)},
                                               {"contained", d.contained()}};
            } catch (const UnsupportedError &) {
                result.json["denominators"] = nullptr;
            }
        } else if (name == "puiseux") {
            const auto roots = newton_puiseux(parse_polynomial(expr, ctx), prec, {branches, 100000});
            for (const auto &r : roots) {
                result.text += to_string(r) + "\n";
            }
            result.json = {{"branches", series_list(roots)}};
        } else if (name == "ratrec") {
            const auto r = rational_reconstruct(parse_series(expr, ctx), num_deg, den_deg);
            if (!r) {
                result = {"no reconstruction\n", {{"found", false}}};
            } else {
                result.text = "numerator: " + to_string(r->numerator) + "\ndenominator: " + to_string(r->denominator)
                              + "\ngrid: 1/" + r->grid.get_str() + "\n";
                result.json = {{"found", true},
                               {"numerator", report::series(r->numerator)},
                               {"denominator", report::series(r->denominator)},
                               {"grid", r->grid.get_str()}};
            }
        } else if (name == "vmin") {
            const Valuation v = v_min(parse_series(expr, ctx));
            result = {v.to_string() + "\n", report::valuation(v)};
        } else if (name == "specialize") {
            const Place p{var, parse_rational(q_text)};
            const Parsed value = parse(expr, ctx);
            if (const auto *c = std::get_if<Coefficient>(&value)) {
                const auto image = apply_place(*c, p);
                result.text = (image ? image->to_string() : std::string("inf")) + "\n";
                result.json = {{"place", report::place(p)},
                               {"value", image ? Json(image->to_string()) : Json("inf")}};
            } else if (const auto *f = std::get_if<TruncatedSeries>(&value)) {
                const auto image = phi(*f, p);
                result = {to_string(image) + "\n", {{"place", report::place(p)}, {"value", report::series(image)}}};
            } else {
                const auto image = phi(std::get<SeriesPolynomial>(value), p);
                result = {to_string(image) + "\n",
                          {{"place", report::place(p)}, {"value", report::polynomial(image)}}};
            }
        } else if (name == "splitneg") {
            const auto [neg, ring] = split_neg(parse_series(expr, ctx));
            result.text = "negative: " + to_string(neg) + "\nring: " + to_string(ring) + "\n";
            result.json = {{"negative", report::series(neg)}, {"ring", report::series(ring)}};
        } else if (name == "indep") {
            const ScalarField k{parse_vars(over)};
            const auto r = is_valuation_independent(parse_all(exprs, s), k);
            result.text = r.independent ? "independent over " + k.to_string() + "\n"
                                        : "dependent over " + k.to_string() + ", witness " + coeff_list(r.witness) + "\n";
            result.json = report::independence(r);
            result.json["scalars"] = k.to_string();
        } else if (name == "optapprox") {
            const auto b = parse_all(basis, s);
            result = series_output(optimal_approx(parse_series(expr, ctx), b, ScalarField{parse_vars(over)}));
        } else if (name == "inclexcl") {
            const auto r = inclusion_exclusion_approx(parse_series(expr, ctx), place_specs(vars, s));
            std::vector<std::pair<std::string, std::string>> rows;
            for (const auto &sm : r.summands) {
                rows.emplace_back(sm.sigma, to_string(sm.value));
            }
            result = {inclexcl_text(r.places, rows, to_string(r.h)), report::inclusion_exclusion(r)};
        } else if (name == "multinclexcl") {
            const auto r = mult_inclusion_exclusion(OneUnit(parse_series(expr, ctx)), place_specs(vars, s), prec);
            std::vector<std::pair<std::string, std::string>> rows;
            for (const auto &sm : r.summands) {
                rows.emplace_back(sm.sigma, to_string(sm.value.series()));
            }
            result = {inclexcl_text(r.places, rows, to_string(r.h.series())), report::inclusion_exclusion(r)};
        } else if (name == "skeleton") {
            const ScalarField k{parse_vars(over)};
            const auto fs = parse_all(exprs, s);
            Skeleton sk;
            if (multiplicative) {
                std::vector<OneUnit> us;
                for (const auto &f : fs) {
                    us.emplace_back(f);
                }
                sk = multiplicative_skeleton(us, k);
            } else {
                sk = skeleton_of(fs, k);
            }
            for (const auto &cls : sk.classes) {
                result.text += "value " + to_string(cls.value) + ": dimension " + std::to_string(cls.dimension)
                               + ", leading coefficients " + coeff_list(cls.leads) + "\n";
            }
            result.json = report::skeleton(sk);
        } else if (name == "tensor") {
            const BasisFamily b(ScalarField{parse_vars(over)}, parse_all(exprs, s));
            std::vector<Coefficient> bk;
            for (const auto &c : coeffs) {
                bk.push_back(parse_coefficient(c, ctx));
            }
            const auto t = tensor_basis(b, bk, ScalarField{parse_vars(small)});
            for (const auto &f : t.entries()) {
                result.text += to_string(f) + "\n";
            }
            result.json = {{"scalars", t.scalars().to_string()}, {"basis", series_list(t.entries())}};
        } else if (name == "restexp") {
            std::vector<OneUnit> us;
            for (const auto &f : parse_all(mults, s)) {
                us.emplace_back(f);
            }
            const auto re = RestrictedExp::build(BasisFamily({}, parse_all(adds, s)), us, prec);
            Json images = Json::array();
            for (std::size_t i = 0; i < re.images().size(); ++i) {
                result.text += to_string(re.additive().entries()[i]) + " -> " + to_string(re.images()[i].series()) + "\n";
                images.push_back({{"from", report::series(re.additive().entries()[i])},
                                  {"to", report::series(re.images()[i].series())}});
            }
            Json sample_json = Json::array();
            for (const auto &f : parse_all(samples, s)) {
                const auto image = re.apply(f);
                const bool w_ok = re.is_w_compatible_on(f);
                result.text += "image(" + to_string(f) + ") = " + to_string(image.series())
                               + (w_ok ? "  [w-compatible]" : "  [NOT w-compatible]") + "\n";
                sample_json.push_back(
                    {{"input", report::series(f)}, {"image", report::series(image.series())}, {"w_compatible", w_ok}});
            }
            result.json = {{"images", std::move(images)}, {"samples", std::move(sample_json)}};
        } else if (name == "chain") {
            std::vector<ChainStage> chain;
            for (const auto &st : stages) {
                const auto colon = st.find(':');
                if (colon == std::string::npos) {
                    throw ParseError("stage '" + st + "' needs 'vars: expr ; expr'", 1, 1);
                }
                std::vector<std::string> items = split_semicolons(st.substr(colon + 1));
                chain.push_back({ScalarField{parse_vars(st.substr(0, colon))}, parse_all(items, s)});
            }
            const auto bases = chain_basis_build(chain);
            Json stages_json = Json::array();
            for (std::size_t i = 0; i < bases.size(); ++i) {
                std::vector<std::string> items;
                for (const auto &f : bases[i].entries()) {
                    items.push_back(to_string(f));
                }
                result.text += "B" + std::to_string(i) + " = {" + join(items, "; ") + "}\n";
                stages_json.push_back({{"vars", chain[i].vars.to_string()}, {"basis", series_list(bases[i].entries())}});
            }
            result.json = {{"stages", std::move(stages_json)}};
        }

        std::string text = s.json ? Json{{"command", name}, {"result", result.json}}.dump(2) + "\n" : result.text;
        if (!s.out_file.empty()) {
            std::ofstream file(s.out_file);
            if (!file) {
                err << "error: cannot write " << s.out_file << "\n";
                return 2;
            }
            file << text;
        } else {
            out << text;
        }
        return 0;
    } catch (const Error &e) {
        if (s.json) {
            out << Json{{"command", name}, {"error", {{"code", e.code()}, {"message", e.what()}}}}.dump(2) << "\n";
        }
        err << "error [" << e.code() << "]: " << e.what() << "\n";
        return e.code() == "parse" ? 3 : 2;
    } catch (const std::exception &e) {
        if (s.json) {
            out << Json{{"command", name}, {"error", {{"code", "internal"}, {"message", e.what()}}}}.dump(2) << "\n";
        }
        err << "error [internal]: " << e.what() << "\n";
        return 2;
    }
}

} // namespace hahn::cli
