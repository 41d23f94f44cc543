#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace behave {

enum class ErrorKind {
    SchemaViolation,
    EnumerationCapExceeded,
    HorizonError,
    VariableClash,
    HorizonMismatch,
    SchemaMismatch,
    UnknownVariable,
    OverlapError,
    IndexError,
    NotSynthesizable,
    InternalInconsistency,
    SearchSpaceTooLarge,
    LengthError,
    UnknownBlock,
    DimensionMismatch,
    ParseError,
    ValidationError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the whole engine; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    // The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace behave
