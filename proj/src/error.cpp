#include "rtl/error.hpp"

namespace rtl {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::UnsupportedSize: return "unsupported-size";
    case ErrorKind::UnsupportedColors: return "unsupported-colors";
    case ErrorKind::InvalidColor: return "invalid-color";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::IncompatibleTemplates: return "incompatible-templates";
    case ErrorKind::InvalidTriangle: return "invalid-triangle";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::UndefinedAverageDegree: return "undefined-average-degree";
    }
    return "unknown";
}

}  // namespace rtl
