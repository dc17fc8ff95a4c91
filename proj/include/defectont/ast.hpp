#pragma once

#include <string>
#include <vector>

#include "defectont/errors.hpp"
#include "defectont/model.hpp"

namespace defectont {

// Parse-level representation of one `.dlo` file. Names are plain strings;
// declaration checking happens when modules are linked into a KnowledgeBase.

enum class AstConceptKind : uint8_t { Top, Bottom, Named, Not, And, Or, Some, All, Nominal };

struct AstRole {
    std::string name;
    bool inverse = false;
    SourcePos pos{};
};

struct AstConcept {
    AstConceptKind kind;
    std::string name;  // Named / Nominal
    AstRole role;      // Some / All
    std::vector<AstConcept> kids;
    SourcePos pos{};
};

struct AstDecl {
    NameKind kind;
    std::string name;
    std::string inverse_name;  // roles: `role R inverse S`
    bool symmetric = false;    // roles: `role R symmetric`
    AttrType attr_type = AttrType::Decimal;
    SourcePos pos{};
};

enum class AstAxiomKind : uint8_t {
    SubClass,
    Equiv,
    Disjoint,
    SubRole,
    Domain,
    Range,
    Instance,
    Rel,
    Data,
};

struct AstAxiom {
    AstAxiomKind kind;
    std::vector<AstConcept> concepts;  // subclass/equiv: 2; domain/range/instance: 1
    std::vector<std::string> names;    // disjoint: classes; instance: [ind];
                                       // rel: [subject, object]; data: [ind, attr]
    std::vector<AstRole> roles;        // subrole: 2; domain/range: 1; rel: 1
    std::string literal;               // data: literal text as written
    bool literal_is_string = false;
    std::string unit;                  // data: unit code or empty
    SourcePos pos{};
};

struct AstImport {
    std::string name;
    SourcePos pos{};
};

struct SourceModule {
    std::string name;
    SourcePos name_pos{};
    std::string source_name;  // file the module was parsed from, for diagnostics
    std::vector<AstImport> imports;
    std::vector<AstDecl> decls;
    std::vector<AstAxiom> axioms;
};

}  // namespace defectont
