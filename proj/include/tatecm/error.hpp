#pragma once

#include <stdexcept>
#include <string>

namespace tatecm {

enum class ErrorKind {
    UnknownVariable,
    SyntaxError,
    NegativeExponent,
    ContextMismatch,
    InvalidField,
    InhomogeneousInput,
    NotInIdeal,
    NotAComplex,
    DegreeMismatch,
    NotChainMap,
    WindowEdge,
    LiftIdentityFails,
    NoSolution,
    ChainMapFails,
    H0HcNotIso,
    ContainmentFails,
    NotRegular,
    AcyclicityFails,
    H0IsoFails,
    LiftFails,
    WindowTooSmall,
    ShapeError,
    InvalidArgument,
    FormatError,
    IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tatecm
