#pragma once

#include <stdexcept>
#include <string>

namespace frobvir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different variable tables, or shapes disagree.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A variable name is not part of the table.
class UnknownVariableError : public Error {
public:
    using Error::Error;
};

/// The requested order exceeds what the inputs can support.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int achievable)
        : Error(what + " (achievable order " + std::to_string(achievable) + ")"),
          achievable_(achievable) {}
    int achievable() const noexcept { return achievable_; }

private:
    int achievable_;
};

/// The model lacks data required by the operation (e.g. no genus-1 potential).
class CapabilityError : public Error {
public:
    using Error::Error;
};

/// A model violates one of the structural invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed model file.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A linear system has no solution or is not uniquely solvable.
class InconsistentSystemError : public Error {
public:
    using Error::Error;
};

/// The leading (constant-term) matrix of a series system is singular.
class SingularLeadingMatrixError : public Error {
public:
    using Error::Error;
};

}  // namespace frobvir
