#include <hahn/exponent.hpp>

#include <cctype>

#include <hahn/errors.hpp>

namespace hahn
{

namespace
{

void check_rank(const Exponent &a, const Exponent &b)
{
    if (a.rank() != b.rank()) {
        throw DimensionError("exponent rank mismatch: " + std::to_string(a.rank()) + " vs " + std::to_string(b.rank()));
    }
}

} // namespace

Exponent::Exponent(std::vector<Rational> coords) : coords_(std::move(coords))
{
    if (coords_.empty()) {
        throw DimensionError("exponent rank must be at least 1");
    }
}

Exponent Exponent::zero(std::size_t rank)
{
    return Exponent(std::vector<Rational>(rank));
}

Exponent Exponent::unit(std::size_t rank, std::size_t index)
{
    std::vector<Rational> c(rank);
    c.at(index) = 1;
    return Exponent(std::move(c));
}

bool Exponent::is_zero() const
{
    return sign() == 0;
}

int Exponent::sign() const
{
    for (const auto &c : coords_) {
        if (c != 0) {
            return sgn(c);
        }
    }
    return 0;
}

Exponent &Exponent::operator+=(const Exponent &other)
{
    check_rank(*this, other);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] += other.coords_[i];
    }
    return *this;
}

Exponent &Exponent::operator-=(const Exponent &other)
{
    check_rank(*this, other);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] -= other.coords_[i];
    }
    return *this;
}

Exponent &Exponent::operator*=(const Rational &q)
{
    for (auto &c : coords_) {
        c *= q;
    }
    return *this;
}

Exponent Exponent::operator-() const
{
    Exponent r = *this;
    for (auto &c : r.coords_) {
        c = -c;
    }
    return r;
}

bool operator==(const Exponent &a, const Exponent &b)
{
    return compare(a, b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Exponent &a, const Exponent &b)
{
    return compare(a, b);
}

std::strong_ordering compare(const Exponent &g, const Exponent &h)
{
    check_rank(g, h);
    for (std::size_t i = 0; i < g.rank(); ++i) {
        const int c = cmp(g[i], h[i]);
        if (c < 0) {
            return std::strong_ordering::less;
        }
        if (c > 0) {
            return std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

std::optional<std::size_t> arch_class(const Exponent &g)
{
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (g[i] != 0) {
            return i + 1;
        }
    }
    return std::nullopt;
}

Exponent add(const Exponent &g, const Exponent &h)
{
    return g + h;
}

Exponent neg(const Exponent &g)
{
    return -g;
}

Exponent scale(const Exponent &g, const Rational &q)
{
    return g * q;
}

std::optional<std::uint64_t> least_multiple_reaching(const Exponent &step, const Exponent &target)
{
    check_rank(step, target);
    if (step.sign() <= 0) {
        throw PreconditionError("least_multiple_reaching requires a positive step");
    }
    if (target.sign() <= 0) {
        return 0;
    }
    const std::size_t js = *arch_class(step);
    const std::size_t jt = *arch_class(target);
    if (js < jt) {
        return 1;
    }
    if (js > jt) {
        return std::nullopt;
    }
    Rational ratio = target[jt - 1] / step[js - 1];
    Integer n;
    mpz_cdiv_q(n.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (step * Rational(n) < target) {
        n += 1;
    }
    if (!n.fits_ulong_p()) {
        return std::nullopt;
    }
    return n.get_ui();
}

std::string to_string(const Exponent &g)
{
    if (g.rank() == 1) {
        return to_string(g[0]);
    }
    std::string s = "(";
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (i != 0) {
            s += ", ";
        }
        s += to_string(g[i]);
    }
    return s + ")";
}

Exponent parse_exponent(std::string_view text, std::size_t rank)
{
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact.push_back(c);
        }
    }
    std::string_view body = compact;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') {
            throw ParseError("unbalanced parenthesis in exponent '" + std::string(text) + "'", 1, text.size());
        }
        body = body.substr(1, body.size() - 2);
    }
    std::vector<Rational> coords;
    std::size_t start = 0;
    while (true) {
        const auto comma = body.find(',', start);
        coords.push_back(parse_rational(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    if (coords.size() != rank) {
        throw DimensionError("exponent '" + std::string(text) + "' has " + std::to_string(coords.size())
                             + " coordinates, expected " + std::to_string(rank));
    }
    return Exponent(std::move(coords));
}

void GroupSpec::check(const Exponent &g) const
{
    if (g.rank() != rank) {
        throw DimensionError("exponent of rank " + std::to_string(g.rank()) + " in a group of rank "
                             + std::to_string(rank));
    }
}

} // namespace hahn
