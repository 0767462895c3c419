#pragma once

#include <stdexcept>
#include <string>

namespace paradel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coincident points or another input for which an operation is undefined.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition was violated by the caller.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Malformed CSV / JSON input.
class InputFormatError : public Error {
public:
    using Error::Error;
};

/// A graph was disconnected where connectivity is required.
class DisconnectedGraphError : public Error {
public:
    DisconnectedGraphError(std::size_t i, std::size_t j)
        : Error("graph is disconnected: no path between " + std::to_string(i) +
                " and " + std::to_string(j)),
          first(i), second(j) {}

    std::size_t first;
    std::size_t second;
};

}  // namespace paradel
