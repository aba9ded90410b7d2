#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ck/point.hpp"

namespace ck {

enum class ErrorKind {
    UnsupportedModel,    // set-expression variant or space outside an operation's algebra
    CapExceeded,         // exhaustive checker asked to exceed its size cap
    PreconditionFailed,  // checked precondition refuted, witness attached when concrete
    InvalidParams,       // malformed budget, scales, or construction parameters
    BoundedDisplacement, // escape-witness input never exceeds the probe cap
    InputError,          // scenario parse/validation failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::optional<Point> witness = std::nullopt)
        : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}

    ErrorKind kind() const { return kind_; }
    const std::optional<Point>& witness() const { return witness_; }

private:
    ErrorKind kind_;
    std::optional<Point> witness_;
};

}  // namespace ck
