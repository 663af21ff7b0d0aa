#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rtl {

enum class ErrorKind {
    InvalidArgument,
    UnsupportedSize,
    UnsupportedColors,
    InvalidColor,
    ParseError,
    IncompatibleTemplates,
    InvalidTriangle,
    CapExceeded,
    Infeasible,
    UndefinedAverageDegree,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> offset = std::nullopt)
        : std::runtime_error(message), kind_(kind), offset_(offset) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Byte offset for parse errors.
    std::optional<std::size_t> offset() const noexcept { return offset_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> offset_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace rtl
