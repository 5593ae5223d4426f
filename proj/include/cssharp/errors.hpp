#pragma once

#include <stdexcept>
#include <string>

namespace cssharp {

/// Base of every error raised by the library. Each subclass maps to one
/// failure category so callers (the CLI in particular) can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(actual)) {}
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class InvalidProjection : public Error {
public:
    using Error::Error;
};

class LagOutOfRange : public Error {
public:
    using Error::Error;
};

class SplitOutOfRange : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    EmptySample() : Error("empty sample") {}
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class UndefinedDivergence : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace cssharp
