#ifndef HAHN_ERRORS_HPP
#define HAHN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hahn
{

// Base of every error raised by the library. code() is a stable short
// identifier used by the command line front end.
class Error : public std::runtime_error
{
public:
    Error(const std::string &code, const std::string &what) : std::runtime_error(what), code_(code) {}

    const std::string &code() const noexcept
    {
        return code_;
    }

private:
    std::string code_;
};

class DimensionError : public Error
{
public:
    explicit DimensionError(const std::string &what) : Error("dimension", what) {}
};

class DivisionByZero : public Error
{
public:
    explicit DivisionByZero(const std::string &what) : Error("division-by-zero", what) {}
};

// Raised when an element is outside a valuation ring (a coefficient maps to
// infinity under a place, or a residue is requested for negative valuation).
class NotInValuationRing : public Error
{
public:
    explicit NotInValuationRing(const std::string &what) : Error("not-in-valuation-ring", what) {}
};

class PreconditionError : public Error
{
public:
    explicit PreconditionError(const std::string &what) : Error("precondition", what) {}

protected:
    PreconditionError(const std::string &code, const std::string &what) : Error(code, what) {}
};

class DependenceError : public PreconditionError
{
public:
    explicit DependenceError(const std::string &what) : PreconditionError("dependence", what) {}
};

class UnsupportedError : public Error
{
public:
    explicit UnsupportedError(const std::string &what) : Error("unsupported", what) {}
};

class BudgetExceeded : public Error
{
public:
    explicit BudgetExceeded(const std::string &what) : Error("budget", what) {}
};

class ParseError : public Error
{
public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : Error("parse", what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept
    {
        return line_;
    }
    std::size_t column() const noexcept
    {
        return column_;
    }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace hahn

#endif
