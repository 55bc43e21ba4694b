#ifndef HAHN_PARSER_HPP
#define HAHN_PARSER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include <hahn/series.hpp>

namespace hahn
{

struct ParseContext {
    std::size_t rank = 1;
    // Cap for inverting non-monomial series; literals themselves are exact.
    Precision default_prec;
};

using Parsed = std::variant<Coefficient, TruncatedSeries, SeriesPolynomial>;

// Grammar: rationals, t, y, a<N>, + - * / ^ ( ), unary minus and O(t^p).
// For rank > 1 t^(g1, ..., gk) takes a tuple and bare t means the first unit
// vector. Throws ParseError with line and column.
Parsed parse(std::string_view text, const ParseContext &ctx = {});

// Coercing wrappers; a value of a higher kind throws ParseError.
Coefficient parse_coefficient(std::string_view text, const ParseContext &ctx = {});
TruncatedSeries parse_series(std::string_view text, const ParseContext &ctx = {});
SeriesPolynomial parse_polynomial(std::string_view text, const ParseContext &ctx = {});

std::string to_string(const Parsed &value);

} // namespace hahn

#endif
