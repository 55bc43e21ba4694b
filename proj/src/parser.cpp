#include <hahn/parser.hpp>

#include <cctype>
#include <vector>

#include <hahn/errors.hpp>

namespace hahn
{

namespace
{

enum class Tok { number, ident, op, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                ++i;
            }
            out.push_back({Tok::number, std::string(s.substr(start, i - start)), line, col});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
                ++i;
            }
            out.push_back({Tok::ident, std::string(s.substr(start, i - start)), line, col});
        } else if (std::string_view("+-*/^(),").find(c) != std::string_view::npos) {
            ++i;
            out.push_back({Tok::op, std::string(1, c), line, col});
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        col += i - start;
    }
    out.push_back({Tok::end, std::string(), line, col});
    return out;
}

using Value = Parsed;

std::size_t level(const Value &v)
{
    return v.index();
}

TruncatedSeries to_series(const Value &v, std::size_t rank)
{
    if (const auto *c = std::get_if<Coefficient>(&v)) {
        return TruncatedSeries::constant(*c, rank);
    }
    return std::get<TruncatedSeries>(v);
}

std::vector<TruncatedSeries> to_coeffs(const Value &v, std::size_t rank)
{
    if (const auto *p = std::get_if<SeriesPolynomial>(&v)) {
        return p->coefficients();
    }
    return {to_series(v, rank)};
}

class Parser
{
public:
    Parser(std::string_view text, const ParseContext &ctx) : tokens_(tokenize(text)), ctx_(ctx)
    {
        if (ctx_.rank == 0) {
            throw DimensionError("rank must be at least 1");
        }
    }

    Value run()
    {
        Value v = expr();
        if (peek().kind != Tok::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return v;
    }

private:
    const Token &peek() const
    {
        return tokens_[pos_];
    }
    bool at_op(char c) const
    {
        return peek().kind == Tok::op && peek().text[0] == c;
    }
    [[noreturn]] void fail(const std::string &what) const
    {
        fail_at(peek(), what);
    }
    [[noreturn]] static void fail_at(const Token &t, const std::string &what)
    {
        throw ParseError(what, t.line, t.column);
    }
    void expect(char c)
    {
        if (!at_op(c)) {
            fail(std::string("expected '") + c + "'" + describe());
        }
        ++pos_;
    }
    std::string describe() const
    {
        return peek().kind == Tok::end ? std::string(" before end of input") : " but found '" + peek().text + "'";
    }

    Value expr()
    {
        Value v = term();
        while (at_op('+') || at_op('-')) {
            const bool minus = peek().text[0] == '-';
            ++pos_;
            Value rhs = term();
            v = add(v, minus ? negate(rhs) : rhs);
        }
        return v;
    }

    Value term()
    {
        Value v = unary();
        while (at_op('*') || at_op('/')) {
            const Token op = peek();
            ++pos_;
            Value rhs = unary();
            v = op.text[0] == '*' ? multiply(v, rhs) : divide(v, rhs, op);
        }
        return v;
    }

    Value unary()
    {
        if (at_op('-')) {
            ++pos_;
            return negate(unary());
        }
        if (at_op('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Value power()
    {
        const Token base_tok = peek();
        const bool bare_t = base_tok.kind == Tok::ident && base_tok.text == "t";
        Value base = primary();
        if (!at_op('^')) {
            return base;
        }
        ++pos_;
        const Token exp_tok = peek();
        std::vector<Rational> coords = exponent();
        if (bare_t) {
            return TruncatedSeries::monomial(Coefficient(1), make_exponent(coords, exp_tok));
        }
        if (coords.size() != 1 || coords[0].get_den() != 1) {
            fail_at(exp_tok, "only t takes a non-integer exponent");
        }
        if (!coords[0].get_num().fits_slong_p() || abs(coords[0]) > 100000) {
            fail_at(exp_tok, "exponent too large");
        }
        return raise(base, coords[0].get_num().get_si(), exp_tok);
    }

    Exponent make_exponent(const std::vector<Rational> &coords, const Token &at) const
    {
        if (coords.size() == 1) {
            return Exponent::unit(ctx_.rank, 0) * coords[0];
        }
        if (coords.size() != ctx_.rank) {
            fail_at(at, "exponent has " + std::to_string(coords.size()) + " coordinates, expected "
                            + std::to_string(ctx_.rank));
        }
        return Exponent(coords);
    }

    std::vector<Rational> exponent()
    {
        if (at_op('(')) {
            ++pos_;
            std::vector<Rational> coords{rational_expr()};
            while (at_op(',')) {
                ++pos_;
                coords.push_back(rational_expr());
            }
            expect(')');
            return coords;
        }
        bool minus = false;
        if (at_op('-')) {
            minus = true;
            ++pos_;
        }
        if (peek().kind != Tok::number) {
            fail("expected an exponent" + describe());
        }
        Rational q(peek().text);
        ++pos_;
        return {minus ? Rational(-q) : q};
    }

    Rational rational_expr()
    {
        const Token at = peek();
        const Value v = expr();
        const auto *c = std::get_if<Coefficient>(&v);
        if (!c || !c->is_rational()) {
            fail_at(at, "exponent must be a rational number");
        }
        return c->as_rational();
    }

    Value primary()
    {
        const Token tok = peek();
        if (tok.kind == Tok::number) {
            ++pos_;
            return Coefficient(Rational(Integer(tok.text)));
        }
        if (at_op('(')) {
            ++pos_;
            Value v = expr();
            expect(')');
            return v;
        }
        if (tok.kind != Tok::ident) {
            fail(tok.kind == Tok::end ? std::string("unexpected end of input") : "unexpected '" + tok.text + "'");
        }
        ++pos_;
        if (tok.text == "t") {
            return TruncatedSeries::monomial(Coefficient(1), Exponent::unit(ctx_.rank, 0));
        }
        if (tok.text == "y") {
            return SeriesPolynomial({TruncatedSeries(ctx_.rank), TruncatedSeries::constant(Coefficient(1), ctx_.rank)});
        }
        if (tok.text == "O") {
            expect('(');
            const Token inner = peek();
            const Value v = expr();
            expect(')');
            return big_o(v, inner);
        }
        if (tok.text.size() > 1 && tok.text[0] == 'a'
            && tok.text.find_first_not_of("0123456789", 1) == std::string::npos && tok.text[1] != '0'
            && tok.text.size() < 8) {
            return Coefficient::variable(static_cast<unsigned>(std::stoul(tok.text.substr(1))));
        }
        fail_at(tok, "unknown identifier '" + tok.text + "'");
    }

    Value big_o(const Value &v, const Token &at) const
    {
        if (const auto *c = std::get_if<Coefficient>(&v); c && *c == Coefficient(1)) {
            return TruncatedSeries(ctx_.rank, Exponent::zero(ctx_.rank));
        }
        const auto *s = std::get_if<TruncatedSeries>(&v);
        if (!s || !s->is_exact() || s->terms().size() != 1 || !(s->terms().begin()->second == Coefficient(1))) {
            fail_at(at, "O(...) expects a power of t");
        }
        return TruncatedSeries(ctx_.rank, s->terms().begin()->first);
    }

    Value negate(const Value &v) const
    {
        return multiply(v, Coefficient(-1));
    }

    Value add(const Value &a, const Value &b) const
    {
        const std::size_t lv = std::max(level(a), level(b));
        if (lv == 0) {
            return std::get<Coefficient>(a) + std::get<Coefficient>(b);
        }
        if (lv == 1) {
            return to_series(a, ctx_.rank) + to_series(b, ctx_.rank);
        }
        auto ca = to_coeffs(a, ctx_.rank);
        const auto cb = to_coeffs(b, ctx_.rank);
        ca.resize(std::max(ca.size(), cb.size()), TruncatedSeries(ctx_.rank));
        for (std::size_t i = 0; i < cb.size(); ++i) {
            ca[i] += cb[i];
        }
        // A bare O term bounds every coefficient.
        Precision p;
        for (const Value *v : {&a, &b}) {
            if (const auto *s = std::get_if<TruncatedSeries>(v); s && s->is_zero()) {
                p = min_precision(p, s->precision());
            }
        }
        for (auto &c : ca) {
            c = c.truncated(p);
        }
        return SeriesPolynomial(std::move(ca));
    }

    Value multiply(const Value &a, const Value &b) const
    {
        const std::size_t lv = std::max(level(a), level(b));
        if (lv == 0) {
            return std::get<Coefficient>(a) * std::get<Coefficient>(b);
        }
        if (lv == 1) {
            if (const auto *c = std::get_if<Coefficient>(&b)) {
                return std::get<TruncatedSeries>(a) * *c;
            }
            if (const auto *c = std::get_if<Coefficient>(&a)) {
                return *c * std::get<TruncatedSeries>(b);
            }
            return std::get<TruncatedSeries>(a) * std::get<TruncatedSeries>(b);
        }
        const auto ca = to_coeffs(a, ctx_.rank);
        const auto cb = to_coeffs(b, ctx_.rank);
        std::vector<TruncatedSeries> out(ca.size() + cb.size() - 1, TruncatedSeries(ctx_.rank));
        for (std::size_t i = 0; i < ca.size(); ++i) {
            for (std::size_t j = 0; j < cb.size(); ++j) {
                out[i + j] += ca[i] * cb[j];
            }
        }
        return SeriesPolynomial(std::move(out));
    }

    Value invert(const Value &v, const Token &at) const
    {
        if (const auto *c = std::get_if<Coefficient>(&v)) {
            if (c->is_zero()) {
                fail_at(at, "division by zero");
            }
            return c->inverse();
        }
        if (const auto *s = std::get_if<TruncatedSeries>(&v)) {
            if (s->is_zero()) {
                fail_at(at, "division by a series that is zero to precision");
            }
            return inverse(*s, s->is_exact() ? ctx_.default_prec : s->precision());
        }
        const auto &p = std::get<SeriesPolynomial>(v);
        if (p.degree() > 0) {
            fail_at(at, "cannot divide by a polynomial in y");
        }
        return invert(p.degree() < 0 ? Value(Coefficient()) : Value(p.coefficients().front()), at);
    }

    Value divide(const Value &a, const Value &b, const Token &at) const
    {
        return multiply(a, invert(b, at));
    }

    Value raise(const Value &base, long n, const Token &at) const
    {
        if (n < 0) {
            if (level(base) == 2) {
                fail_at(at, "negative power of a polynomial in y");
            }
            return raise(invert(base, at), -n, at);
        }
        if (const auto *c = std::get_if<Coefficient>(&base)) {
            return c->pow(n);
        }
        if (const auto *s = std::get_if<TruncatedSeries>(&base)) {
            return s->pow(static_cast<unsigned>(n));
        }
        Value acc = Coefficient(1);
        for (long i = 0; i < n; ++i) {
            acc = multiply(acc, base);
        }
        return acc;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    ParseContext ctx_;
};

const Token kStart{Tok::end, std::string(), 1, 1};

} // namespace

Parsed parse(std::string_view text, const ParseContext &ctx)
{
    Parsed v = Parser(text, ctx).run();
    // A polynomial in which y cancels is reported as a series.
    if (const auto *p = std::get_if<SeriesPolynomial>(&v); p && p->degree() <= 0) {
        v = p->coefficients().empty() ? TruncatedSeries(ctx.rank) : p->coefficients().front();
    }
    // Likewise an exact series in which t cancels is a coefficient.
    if (const auto *f = std::get_if<TruncatedSeries>(&v); f && f->is_exact()) {
        const Exponent zero = Exponent::zero(ctx.rank);
        if (f->terms().empty() || (f->terms().size() == 1 && f->terms().begin()->first == zero)) {
            v = f->coefficient(zero);
        }
    }
    return v;
}

Coefficient parse_coefficient(std::string_view text, const ParseContext &ctx)
{
    Parsed v = parse(text, ctx);
    if (auto *c = std::get_if<Coefficient>(&v)) {
        return *c;
    }
    throw ParseError("expected a coefficient in Q(a1..am), got an expression in t or y", kStart.line, kStart.column);
}

TruncatedSeries parse_series(std::string_view text, const ParseContext &ctx)
{
    Parsed v = parse(text, ctx);
    if (level(v) == 2) {
        throw ParseError("expected a series, got a polynomial in y", kStart.line, kStart.column);
    }
    return to_series(v, ctx.rank);
}

SeriesPolynomial parse_polynomial(std::string_view text, const ParseContext &ctx)
{
    Parsed v = parse(text, ctx);
    if (auto *p = std::get_if<SeriesPolynomial>(&v)) {
        return *p;
    }
    return SeriesPolynomial({to_series(v, ctx.rank)});
}

std::string to_string(const Parsed &value)
{
    if (const auto *c = std::get_if<Coefficient>(&value)) {
        return c->to_string();
    }
    if (const auto *s = std::get_if<TruncatedSeries>(&value)) {
        return to_string(*s);
    }
    return to_string(std::get<SeriesPolynomial>(value));
}

} // namespace hahn
