#include "pald/error.hpp"

namespace pald {

const char* to_string(ErrorCategory cat) {
    switch (cat) {
        case ErrorCategory::config: return "config";
        case ErrorCategory::parse: return "parse";
        case ErrorCategory::structural: return "structural";
        case ErrorCategory::validation: return "validation";
        case ErrorCategory::io: return "io";
    }
    return "unknown";
}

}  // namespace pald
