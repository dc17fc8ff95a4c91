#pragma once

#include <string>
#include <string_view>

#include "defectont/ast.hpp"

namespace defectont {

// Parses one `.dlo` module. Statements are newline-terminated; `#` starts a
// comment; other whitespace is not significant. Errors carry positions and
// the given file name.
SourceModule parse_module(std::string_view text, std::string_view filename = {});

// Deterministic text form: header, imports in source order, declarations
// sorted by kind then name, axioms in source order. Comments are not
// represented and so are dropped.
std::string serialize_module(const SourceModule& m);

// Identity up to declaration order (serialization is the canonical form).
bool structurally_equal(const SourceModule& a, const SourceModule& b);

// Single-statement entry points, used by queries and golden-file checks.
AstConcept parse_concept_text(std::string_view text);
AstAxiom parse_axiom_text(std::string_view text);

std::string serialize_statement(const AstAxiom& a);
std::string serialize_decl(const AstDecl& d);

// [A-Za-z][A-Za-z0-9_.]* and not a grammar keyword.
bool is_valid_dlo_name(std::string_view name);

}  // namespace defectont
