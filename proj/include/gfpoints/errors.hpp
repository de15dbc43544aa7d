#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfp {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Malformed textual input. `offset` is the byte position of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Input violates a mathematical precondition (off-curve point, singular curve, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// abc = 0 or an otherwise invalid parameter triple.
class ParameterError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Parameters hit one of a family's degenerate cases.
class DegenerateParameters : public DomainError {
public:
    DegenerateParameters(const std::string& what, std::string tag)
        : DomainError(what), tag_(std::move(tag)) {}
    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

/// A birational map (or parameterization) has a vanishing denominator here.
class ExceptionalPoint : public DomainError {
public:
    using DomainError::DomainError;
};

/// A solution stream walked back to the identity: the base point is torsion.
class StreamExhausted : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace gfp
