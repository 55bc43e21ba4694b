#ifndef HAHN_VALUATION_SPACES_HPP
#define HAHN_VALUATION_SPACES_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <hahn/analytic.hpp>
#include <hahn/linalg.hpp>
#include <hahn/series.hpp>

namespace hahn
{

struct IndependenceResult {
    bool independent = true;
    // Empty when independent; otherwise r with v(sum r_i vs_i) > min v(vs_i).
    std::vector<Coefficient> witness;
};

// Decided class by class on the leading coefficients. Throws
// PreconditionError if some entry is zero to its precision.
IndependenceResult is_valuation_independent(std::span<const TruncatedSeries> vs, const ScalarField &k = {});

// A valuation independent family over k; every mutation is checked.
class BasisFamily
{
public:
    // Throws DependenceError if the entries are not valuation independent.
    explicit BasisFamily(ScalarField k = {}, std::vector<TruncatedSeries> entries = {});

    const std::vector<TruncatedSeries> &entries() const noexcept
    {
        return entries_;
    }
    const ScalarField &scalars() const noexcept
    {
        return scalars_;
    }
    std::size_t size() const noexcept
    {
        return entries_.size();
    }
    bool empty() const noexcept
    {
        return entries_.empty();
    }

    void push_back(TruncatedSeries entry);

private:
    ScalarField scalars_;
    std::vector<TruncatedSeries> entries_;
};

struct Approximation {
    TruncatedSeries value;
    // value = sum coords[i] * entries[i].
    std::vector<Coefficient> coords;
};

// Greedy leading-term elimination of f against B.
Approximation optimal_approx(const TruncatedSeries &f, const BasisFamily &b);

// Same for an arbitrary spanning list: a valuation basis of its span is
// rebuilt first with extend_basis.
TruncatedSeries optimal_approx(const TruncatedSeries &f, std::span<const TruncatedSeries> spanning,
                               const ScalarField &k = {});

// Coordinates of f in span(B); PreconditionError if f is not in the span to
// precision.
std::vector<Coefficient> span_coordinates(const TruncatedSeries &f, const BasisFamily &b);

// B plus a - optimal_approx(a, B), or B if a lies in the span to precision.
BasisFamily extend_basis(BasisFamily b, const TruncatedSeries &a);

struct PlaceSpec {
    unsigned var = 1;
    PlaceCandidates candidates;
};

template <class T> struct Summand {
    // e_1..e_N, e.g. "01".
    std::string sigma;
    T value;
};

struct InclusionExclusion {
    TruncatedSeries h;
    std::vector<Place> places;
    // All 2^N entries, sigma = 0...0 first; h = -(sum over sigma != 0).
    std::vector<Summand<TruncatedSeries>> summands;
};

// h = f - (id - phi_1) o ... o (id - phi_N) f with places P_k = (a_{var_k} -> q_k)
// chosen for k = N..1, each finite on every series already built.
InclusionExclusion inclusion_exclusion_approx(const TruncatedSeries &f, std::vector<PlaceSpec> specs);

struct MultInclusionExclusion {
    OneUnit h;
    std::vector<Place> places;
    // h = product of f_sigma^(-1) over sigma != 0.
    std::vector<Summand<OneUnit>> summands;
};

// h = u / (id / phi_1) o ... o (id / phi_N) u with (id / phi) g = g / phi(g).
// Inverses are taken to prec(u), lowered to target; exact u needs a target.
MultInclusionExclusion mult_inclusion_exclusion(const OneUnit &u, std::vector<PlaceSpec> specs,
                                                const Precision &target = std::nullopt);

struct SkeletonClass {
    Exponent value;
    std::size_t dimension = 0;
    std::vector<Coefficient> leads;
};

struct Skeleton {
    ScalarField scalars;
    // Sorted by value.
    std::vector<SkeletonClass> classes;

    // Same values, dimensions and leading-coefficient spans.
    bool equivalent(const Skeleton &other) const;
};

// Throws DependenceError if vs is not valuation independent.
Skeleton skeleton_of(std::span<const TruncatedSeries> vs, const ScalarField &k = {});

// Values w(u) = v_min(u - 1) with the leading coefficients of u - 1.
Skeleton multiplicative_skeleton(std::span<const OneUnit> us, const ScalarField &k = {});

// {b' * b : b in B, b' in bk} over the smaller field; bk must be independent
// over it (DependenceError).
BasisFamily tensor_basis(const BasisFamily &b, std::span<const Coefficient> bk, const ScalarField &small = {});

// The Q-linear map sending additive basis entries to value-matched products
// of the multiplicative ones, extended by sum x_i b_i -> prod u'_i^(x_i).
class RestrictedExp
{
public:
    // Throws PreconditionError on skeleton mismatch or non-rational scalars.
    static RestrictedExp build(const BasisFamily &additive, std::vector<OneUnit> multiplicative,
                               const Precision &target = std::nullopt);

    const BasisFamily &additive() const noexcept
    {
        return additive_;
    }
    // Image of the i-th additive entry.
    const std::vector<OneUnit> &images() const noexcept
    {
        return images_;
    }

    OneUnit apply(const TruncatedSeries &eps) const;

    // apply(a + b) = apply(a) * apply(b) to precision.
    bool is_homomorphic_on(const TruncatedSeries &a, const TruncatedSeries &b) const;
    // v_min(apply(eps) - 1) = v_min(eps).
    bool is_w_compatible_on(const TruncatedSeries &eps) const;

private:
    RestrictedExp(BasisFamily additive, std::vector<OneUnit> images, Precision target)
        : additive_(std::move(additive)), images_(std::move(images)), target_(std::move(target))
    {
    }

    BasisFamily additive_;
    std::vector<OneUnit> images_;
    Precision target_;
};

struct ChainStage {
    // Y_s; stages must be nested.
    ScalarField vars;
    std::vector<TruncatedSeries> inputs;
};

// B_0 in B_1 in ... over Q, each B_s a valuation basis of the span of all
// inputs up to stage s.
std::vector<BasisFamily> chain_basis_build(const std::vector<ChainStage> &stages);

} // namespace hahn

#endif
