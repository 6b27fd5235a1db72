#pragma once

#include <stdexcept>
#include <string>

namespace cycstab {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient vector length does not match the surface lattice.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

// A value violates an argument contract (zero divisor where nonzero is
// required, composite characteristic, rank out of range, ...).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// An operation was invoked on data outside its stated precondition
// (e.g. Jordan-Hoelder factors of a non-semistable bundle).
class PreconditionFailed : public Error {
public:
    explicit PreconditionFailed(const std::string& what) : Error(what) {}
};

// Scenario text could not be parsed. Carries 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A name used by a scenario query does not resolve to a declaration.
class UnresolvedName : public Error {
public:
    explicit UnresolvedName(const std::string& what) : Error(what) {}
};

}  // namespace cycstab
