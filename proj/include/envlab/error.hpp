#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace envlab {

enum class ErrorCode {
    InvalidSlope,
    InvalidParameter,
    InvalidKind,
    Degenerate,
    PreconditionFailed,
    UnresolvedRoot,
    NearInfinity,
    Partial,
    NewtonStall,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace envlab
