// Recursive-descent parser for the .nms model format, with span-accurate
// diagnostics and statement-boundary recovery.
//
// Grammar (statements in any order, `//` comments, ids are ASCII words):
//   np <id> { subject <string> modality duty|right [desc <string>] }
//   actor <id> [{ name <string> }]
//   binding <actor> is [not] <string> justified_by <argument>
//   goal <id> owner <actor> [compliance] [{ [desc <string>] [refine] }]
//     refine ::= refine and|or [<child>, ...] [select <child>]
//   task <id> [{ desc <string> }]
//   realize <goal> -> <np>          (generates hypothesis H_<goal>_<np>)
//   affects <np> <goal>
//   argument <id> supports|revises|rejects <target> { claim <string> }
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nms/model.hpp"

namespace nms {

struct SourceSpan {
    std::string file;
    int line = 1;    // 1-based
    int column = 1;  // 1-based
    int length = 0;  // characters

    bool operator==(const SourceSpan&) const = default;
};

enum class Severity { error, warning };

// Codes:
//   P001 unexpected token / lexical error
//   P002 duplicate id
//   P003 dangling reference
//   P004 malformed refinement
//   P005 invalid statement semantics (bad realization, binding, target, ...)
//   P006 unreadable input
struct ParseDiagnostic {
    Severity severity = Severity::error;
    std::string code;
    std::string message;
    SourceSpan span;
};

struct ParseResult {
    std::optional<Model> model;  // present iff there are no error diagnostics
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

// Parses one source into a Model. On success the model passes
// validate_referential_integrity.
ParseResult parse_model(std::string_view source, const std::string& file = "<input>");

// Parses and merges several sources into one Model; duplicate ids are
// reported across files, references may resolve across files.
ParseResult parse_sources(const std::vector<std::pair<std::string, std::string>>& named_sources);

// Syntax-only parse of a single file: duplicate ids inside the fragment are
// still errors, but references are not resolved (they may live in sibling
// files). Used by the formatter.
ParseResult parse_fragment(std::string_view source, const std::string& file = "<input>");

std::string render_diagnostic(const ParseDiagnostic& diagnostic);

}  // namespace nms
