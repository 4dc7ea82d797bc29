#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "synchro/document.hpp"

namespace synchro {

enum class ParseErrorCode {
    syntax,
    unresolved_reference,
    duplicate_name,
    /// Well-formed and resolved, but inconsistent (e.g. an asymmetric pairing).
    invalid,
    unsupported_version,
    missing_system,
};

std::string to_string(ParseErrorCode code);

struct ParseError {
    ParseErrorCode code = ParseErrorCode::syntax;
    int line = 0;
    int column = 0;
    std::string message;
};

std::string to_string(const ParseError& e);

struct ParseResult {
    std::optional<ModelDocument> document;
    std::vector<ParseError> errors;

    bool ok() const { return document.has_value(); }
};

/// Total on arbitrary input: malformed text yields errors, never a crash.
ParseResult parse_document(std::string_view text);

/// Canonical text: declarations sorted by kind then name, two-space
/// indentation, trailing newline.
std::string serialize_document(const ModelDocument& doc);

} // namespace synchro
