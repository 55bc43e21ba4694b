#include <hahn/linalg.hpp>

#include <map>

#include <hahn/errors.hpp>

namespace hahn
{

std::vector<std::size_t> row_reduce(Matrix &m, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col].is_zero()) {
            ++p;
        }
        if (p == m.size()) {
            continue;
        }
        std::swap(m[row], m[p]);
        const Coefficient inv = m[row][col].inverse();
        for (std::size_t j = col; j < m[row].size(); ++j) {
            m[row][j] *= inv;
        }
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) {
                continue;
            }
            const Coefficient f = m[r][col];
            for (std::size_t j = col; j < m[r].size(); ++j) {
                if (!m[row][j].is_zero()) {
                    m[r][j] -= f * m[row][j];
                }
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<Coefficient>> nullspace(Matrix m, std::size_t cols)
{
    const auto pivots = row_reduce(m, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<Coefficient>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Coefficient> x(cols);
        x[free] = Coefficient(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            x[pivots[i]] = -m[i][free];
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<Coefficient>> solve(const Matrix &a, const std::vector<Coefficient> &b, std::size_t cols)
{
    Matrix aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) {
        aug[i].resize(cols);
        aug[i].push_back(b[i]);
    }
    const auto pivots = row_reduce(aug, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) {
        return std::nullopt;
    }
    std::vector<Coefficient> x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        x[pivots[i]] = aug[i][cols];
    }
    return x;
}

bool ScalarField::contains(const Coefficient &c) const
{
    for (auto v : c.variables()) {
        if (!vars.contains(v)) {
            return false;
        }
    }
    return true;
}

std::string ScalarField::to_string() const
{
    if (vars.empty()) {
        return "Q";
    }
    std::string s = "Q(";
    bool first = true;
    for (auto v : vars) {
        s += (first ? "a" : ", a") + std::to_string(v);
        first = false;
    }
    return s + ")";
}

std::vector<std::pair<std::vector<Coefficient>, Coefficient>>
expand_over(std::span<const Coefficient> cs, const Coefficient &rhs, const ScalarField &k)
{
    Polynomial common(1);
    auto absorb = [&](const Polynomial &den) {
        if (!den.is_constant()) {
            common = common * divide_exact(den, gcd(common, den));
        }
    };
    for (const auto &c : cs) {
        absorb(c.denominator());
    }
    absorb(rhs.denominator());

    // Split a polynomial into (monomial outside K) -> polynomial inside K.
    auto split = [&](const Coefficient &c) {
        const Polynomial p = c.numerator() * divide_exact(common, c.denominator());
        std::map<Monomial, Polynomial, GradedLexGreater> parts;
        for (const auto &[m, q] : p.terms()) {
            Monomial inside(m.size()), outside(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                (k.vars.contains(static_cast<unsigned>(i + 1)) ? inside : outside)[i] = m[i];
            }
            while (!outside.empty() && outside.back() == 0) {
                outside.pop_back();
            }
            parts[outside] += Polynomial::monomial(inside, q);
        }
        return parts;
    };

    std::map<Monomial, std::pair<std::vector<Coefficient>, Coefficient>, GradedLexGreater> rows;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        for (auto &[m, p] : split(cs[i])) {
            auto &row = rows[m];
            row.first.resize(cs.size());
            row.first[i] = Coefficient(p);
        }
    }
    for (auto &[m, p] : split(rhs)) {
        auto &row = rows[m];
        row.first.resize(cs.size());
        row.second = Coefficient(p);
    }
    std::vector<std::pair<std::vector<Coefficient>, Coefficient>> out;
    for (auto &[m, row] : rows) {
        out.push_back(std::move(row));
    }
    return out;
}

namespace
{

void normalize_relation(std::vector<Coefficient> &r)
{
    bool all_rational = true;
    for (const auto &c : r) {
        all_rational = all_rational && c.is_rational();
    }
    if (all_rational) {
        Integer den_lcm = 1, num_gcd = 0;
        for (const auto &c : r) {
            const Rational q = c.as_rational();
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
        }
        for (const auto &c : r) {
            const Rational q = c.as_rational() * den_lcm;
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
        }
        Rational factor(den_lcm, num_gcd);
        for (const auto &c : r) {
            if (!c.is_zero()) {
                if (c.as_rational() < 0) {
                    factor = -factor;
                }
                break;
            }
        }
        for (auto &c : r) {
            c *= Coefficient(factor);
        }
        return;
    }
    for (const auto &c : r) {
        if (!c.is_zero()) {
            const Coefficient inv = c.inverse();
            for (auto &x : r) {
                x *= inv;
            }
            return;
        }
    }
}

} // namespace

std::optional<std::vector<Coefficient>> linear_relation(std::span<const Coefficient> cs, const ScalarField &k)
{
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i].is_zero()) {
            std::vector<Coefficient> r(cs.size());
            r[i] = Coefficient(1);
            return r;
        }
    }
    Matrix m;
    for (auto &[row, rhs] : expand_over(cs, Coefficient(), k)) {
        m.push_back(std::move(row));
    }
    auto basis = nullspace(std::move(m), cs.size());
    if (basis.empty()) {
        return std::nullopt;
    }
    normalize_relation(basis.front());
    return basis.front();
}

std::optional<std::vector<Coefficient>> solve_in_span(std::span<const Coefficient> basis, const Coefficient &target,
                                                      const ScalarField &k)
{
    Matrix a;
    std::vector<Coefficient> b;
    for (auto &[row, rhs] : expand_over(basis, target, k)) {
        a.push_back(std::move(row));
        b.push_back(std::move(rhs));
    }
    return solve(a, b, basis.size());
}

} // namespace hahn
