#pragma once

#include <stdexcept>
#include <string>

namespace feasdr {

enum class ErrorCode {
    invalid_argument,
    dimension_mismatch,
    not_finite,
    parse,
    io,
};

/// Library-wide exception type. The code survives the trip through the C API.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace feasdr
