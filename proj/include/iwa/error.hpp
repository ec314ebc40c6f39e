#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iwa {

enum class ErrorKind {
    PrecisionExhausted,
    DivideByZero,
    InvalidResidue,
    DegenerateInput,
    ShapeMismatch,
    BadLevel,
    NotDivisible,
    NotAUnit,
    BadConductor,
    TrivialCharacter,
    BadIndex,
    HypothesisViolated,
    NotDecomposable,
    UnboundedResult,
    MalformedInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace iwa
