#pragma once

#include <stdexcept>
#include <string>

namespace qp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments that the caller could have checked: wrong dimensions,
// degenerate geometry, caps exceeded, nodes that do not exist.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class CapExceeded : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// A named degenerate configuration, e.g. "degenerate-z" in the harmonic
// construction.  kind() is stable and meant for matching in tests and reports.
class Degenerate : public InvalidInput {
public:
    Degenerate(std::string kind, const std::string& what)
        : InvalidInput(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

class NullConditioning : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// The question asked has answer "no such point": an LP is infeasible.
class Infeasible : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace qp
