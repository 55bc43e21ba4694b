#ifndef HAHN_EXPONENT_HPP
#define HAHN_EXPONENT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <hahn/rational.hpp>

namespace hahn
{

// An element of the value group Q^k, ordered lexicographically.
class Exponent
{
public:
    // Rank-1 zero.
    Exponent() : coords_(1) {}
    explicit Exponent(std::vector<Rational> coords);
    // Rank-1 exponent q.
    Exponent(const Rational &q) : coords_{q} {}
    Exponent(long q) : coords_{Rational(q)} {}

    static Exponent zero(std::size_t rank);
    // The unit vector e_index (0-based index).
    static Exponent unit(std::size_t rank, std::size_t index = 0);

    std::size_t rank() const noexcept
    {
        return coords_.size();
    }
    std::span<const Rational> coords() const noexcept
    {
        return coords_;
    }
    const Rational &operator[](std::size_t i) const
    {
        return coords_[i];
    }

    bool is_zero() const;
    // -1, 0 or 1 according to the sign of the first nonzero coordinate.
    int sign() const;

    Exponent &operator+=(const Exponent &other);
    Exponent &operator-=(const Exponent &other);
    Exponent &operator*=(const Rational &q);

    friend Exponent operator+(Exponent a, const Exponent &b)
    {
        return a += b;
    }
    friend Exponent operator-(Exponent a, const Exponent &b)
    {
        return a -= b;
    }
    friend Exponent operator*(Exponent a, const Rational &q)
    {
        return a *= q;
    }
    friend Exponent operator*(const Rational &q, Exponent a)
    {
        return a *= q;
    }
    Exponent operator-() const;

    friend bool operator==(const Exponent &a, const Exponent &b);
    friend std::strong_ordering operator<=>(const Exponent &a, const Exponent &b);

private:
    std::vector<Rational> coords_;
};

// Three-way lexicographic comparison; throws DimensionError on rank mismatch.
std::strong_ordering compare(const Exponent &g, const Exponent &h);

// Archimedean class of g, i.e. the natural valuation of Q^k: the 1-based
// index of the first nonzero coordinate, or nullopt for g = 0.
std::optional<std::size_t> arch_class(const Exponent &g);

Exponent add(const Exponent &g, const Exponent &h);
Exponent neg(const Exponent &g);
Exponent scale(const Exponent &g, const Rational &q);

// Least n >= 0 with n*step >= target, or nullopt when no integer multiple of
// step reaches target. Requires step > 0.
std::optional<std::uint64_t> least_multiple_reaching(const Exponent &step, const Exponent &target);

std::string to_string(const Exponent &g);

// "3/2" for rank 1, "(3/2, -1)" in general.
Exponent parse_exponent(std::string_view text, std::size_t rank);

struct GroupSpec {
    std::size_t rank = 1;

    Exponent zero() const
    {
        return Exponent::zero(rank);
    }
    void check(const Exponent &g) const;
};

} // namespace hahn

#endif
