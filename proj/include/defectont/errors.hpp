#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace defectont {

// Line/column position in a .dlo source file, 1-based. {0,0} means "no position".
struct SourcePos {
    uint32_t line = 0;
    uint32_t column = 0;

    bool valid() const { return line > 0; }
    bool operator==(const SourcePos&) const = default;
};

enum class ErrorCategory {
    Lexical,       // bad character or malformed token
    Syntax,        // unexpected token
    Arity,         // and/or with fewer than two children, etc.
    Name,          // undeclared or unknown name
    KindClash,     // one name declared with two kinds
    Duplicate,     // duplicate declaration within a module
    Import,        // missing module or import cycle
    Wellformed,    // invariant violation when building a knowledge base
    Unit,          // unknown unit or dimension mismatch
    Value,         // missing/ambiguous data assertion, bad literal
    Reasoning,     // inconsistent KB where consistency is required, etc.
    Precondition,  // operation precondition not met
    Io,            // file not readable/writable
    Internal,      // invariant violated inside the engine; always a bug
};

const char* to_string(ErrorCategory c);

// Single exception type for the whole toolkit. The CLI maps categories to
// exit codes; tests match on category.
class DloError : public std::runtime_error {
  public:
    DloError(ErrorCategory category, std::string message, SourcePos pos = {},
             std::string file = {})
        : std::runtime_error(format(category, message, pos, file)),
          category_(category),
          pos_(pos),
          file_(std::move(file)) {}

    ErrorCategory category() const { return category_; }
    SourcePos pos() const { return pos_; }
    const std::string& file() const { return file_; }

  private:
    static std::string format(ErrorCategory category, const std::string& message,
                              SourcePos pos, const std::string& file);

    ErrorCategory category_;
    SourcePos pos_;
    std::string file_;
};

[[noreturn]] inline void internal_error(const std::string& what) {
    throw DloError(ErrorCategory::Internal, what);
}

}  // namespace defectont
