#ifndef HAHN_LINALG_HPP
#define HAHN_LINALG_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <hahn/coefficient.hpp>

namespace hahn
{

using Matrix = std::vector<std::vector<Coefficient>>;

// Gauss-Jordan elimination in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix &m, std::size_t cols);

// Basis of {x : m x = 0}.
std::vector<std::vector<Coefficient>> nullspace(Matrix m, std::size_t cols);

// Some solution of a x = b, or nullopt if the system is inconsistent.
std::optional<std::vector<Coefficient>> solve(const Matrix &a, const std::vector<Coefficient> &b, std::size_t cols);

// Scalar field Q(a_i : i in vars); the empty set is Q itself.
struct ScalarField {
    std::set<unsigned> vars;

    static ScalarField rationals()
    {
        return {};
    }
    bool contains(const Coefficient &c) const;
    std::string to_string() const;

    friend bool operator==(const ScalarField &, const ScalarField &) = default;
};

// Equations over the scalar field K equivalent to sum_i x_i cs[i] = rhs with
// unknowns x_i in K: clear denominators, then compare coefficients of each
// monomial in the variables outside K.
std::vector<std::pair<std::vector<Coefficient>, Coefficient>>
expand_over(std::span<const Coefficient> cs, const Coefficient &rhs, const ScalarField &k);

// A nontrivial relation sum r_i cs[i] = 0 with r_i in K, or nullopt when the
// cs are linearly independent over K. Rational relations are returned as
// primitive integer vectors with positive first entry.
std::optional<std::vector<Coefficient>> linear_relation(std::span<const Coefficient> cs, const ScalarField &k);

// x in K^n with sum x_i basis[i] = target, if one exists.
std::optional<std::vector<Coefficient>> solve_in_span(std::span<const Coefficient> basis, const Coefficient &target,
                                                      const ScalarField &k);

} // namespace hahn

#endif
