#include "defectont/errors.hpp"

namespace defectont {

const char* to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::Lexical: return "lexical error";
        case ErrorCategory::Syntax: return "syntax error";
        case ErrorCategory::Arity: return "arity error";
        case ErrorCategory::Name: return "name error";
        case ErrorCategory::KindClash: return "kind clash";
        case ErrorCategory::Duplicate: return "duplicate declaration";
        case ErrorCategory::Import: return "import error";
        case ErrorCategory::Wellformed: return "well-formedness error";
        case ErrorCategory::Unit: return "unit error";
        case ErrorCategory::Value: return "value error";
        case ErrorCategory::Reasoning: return "reasoning error";
        case ErrorCategory::Precondition: return "precondition error";
        case ErrorCategory::Io: return "io error";
        case ErrorCategory::Internal: return "internal error";
    }
    return "error";
}

std::string DloError::format(ErrorCategory category, const std::string& message,
                             SourcePos pos, const std::string& file) {
    std::string out = to_string(category);
    out += ": ";
    out += message;
    if (pos.valid() || !file.empty()) {
        out += " (";
        out += file.empty() ? "input" : file;
        if (pos.valid()) {
            out += ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column);
        }
        out += ")";
    }
    return out;
}

}  // namespace defectont
