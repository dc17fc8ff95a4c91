#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "defectont/decimal.hpp"
#include "defectont/errors.hpp"

namespace defectont {

enum class NameKind : uint8_t { Class, Role, Attribute, Individual };
enum class AttrType : uint8_t { Decimal, String };

const char* to_string(NameKind k);

using ConceptId = uint32_t;
inline constexpr ConceptId kNoConcept = UINT32_MAX;

// A role expression: a declared role name or its inverse. Inverse(Inverse(r))
// is never represented; callers flip the flag instead.
struct Role {
    uint32_t name = 0;
    bool inverse = false;

    Role flipped() const { return {name, !inverse}; }
    bool operator==(const Role&) const = default;
    auto operator<=>(const Role&) const = default;
};

enum class ConceptKind : uint8_t { Named, Top, Bottom, Not, And, Or, Some, All, Nominal };

struct ConceptNode {
    ConceptKind kind;
    uint32_t sym = 0;  // class id (Named) or individual id (Nominal)
    Role role{};       // Some/All
    std::vector<ConceptId> kids = {};
};

// Interning pool for concept expressions. Expressions are stored exactly as
// built (and/or children keep their source order), so serialization is
// faithful; structural comparison up to child order lives in
// structurally_equal(). Interning is callable on const pools so queries can
// be compiled against an already-frozen knowledge base.
class ConceptPool {
  public:
    ConceptPool();
    ConceptPool(const ConceptPool& o);
    ConceptPool& operator=(const ConceptPool& o);

    ConceptId top() const { return 0; }
    ConceptId bottom() const { return 1; }
    ConceptId named(uint32_t cls) const;
    ConceptId nominal(uint32_t ind) const;
    ConceptId negation(ConceptId c) const;
    ConceptId conjunction(std::vector<ConceptId> kids) const;  // needs >= 2 children
    ConceptId disjunction(std::vector<ConceptId> kids) const;  // needs >= 2 children
    ConceptId some(Role r, ConceptId filler) const;
    ConceptId all(Role r, ConceptId filler) const;

    const ConceptNode& node(ConceptId id) const;
    size_t size() const;

  private:
    ConceptId intern(ConceptNode n) const;
    std::string key_of(const ConceptNode& n) const;

    mutable std::mutex mu_;
    mutable std::deque<ConceptNode> nodes_;
    mutable std::unordered_map<std::string, ConceptId> index_;
};

enum class AxiomKind : uint8_t {
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    SubRoleOf,
    InverseRoles,
    SymmetricRole,
    RoleDomain,
    RoleRange,
    ClassAssertion,
    RoleAssertion,
    DataAssertion,
};

struct Axiom {
    AxiomKind kind;
    ConceptId lhs = kNoConcept;     // SubClassOf/Equivalent lhs; Domain/Range filler;
                                    // ClassAssertion concept
    ConceptId rhs = kNoConcept;     // SubClassOf/Equivalent rhs
    std::vector<uint32_t> classes;  // DisjointClasses members (>= 2)
    Role role1{};                   // SubRoleOf sub / Inverse first / Symmetric /
                                    // Domain/Range role / RoleAssertion role (never inverse)
    Role role2{};                   // SubRoleOf super / Inverse second
    uint32_t ind1 = 0, ind2 = 0;    // assertion subjects/objects
    uint32_t attr = 0;
    Decimal value;                  // DataAssertion, decimal attributes
    std::string text_value;         // DataAssertion, string attributes
    bool is_string_value = false;
    std::string unit;               // unit code or empty
    uint32_t origin = 0;            // module id in the owning KB
    SourcePos pos{};

    static Axiom subclass_of(ConceptId c, ConceptId d);
    static Axiom equivalent(ConceptId c, ConceptId d);
    static Axiom disjoint(std::vector<uint32_t> cls);
    static Axiom subrole_of(Role r, Role s);
    static Axiom inverse_roles(uint32_t r, uint32_t s);
    static Axiom symmetric_role(uint32_t r);
    static Axiom role_domain(Role r, ConceptId c);
    static Axiom role_range(Role r, ConceptId c);
    static Axiom class_assertion(uint32_t ind, ConceptId c);
    static Axiom role_assertion(uint32_t subject, uint32_t role, uint32_t object);
    static Axiom data_assertion(uint32_t ind, uint32_t attr, Decimal value,
                                std::string unit);
    static Axiom string_assertion(uint32_t ind, uint32_t attr, std::string value);
};

// Name sets by kind; used as the seed for signature pruning.
struct Signature {
    std::set<std::string> classes, roles, attributes, individuals;

    bool empty() const {
        return classes.empty() && roles.empty() && attributes.empty() &&
               individuals.empty();
    }
    bool operator==(const Signature&) const = default;
};

// Merged TBox + RBox + ABox with interned names. Immutable by convention once
// built: reasoners and queries only read it.
class KnowledgeBase {
  public:
    KnowledgeBase() = default;

    // Declarations. Re-declaring the same name with the same kind returns the
    // existing id; a different kind is a kind clash.
    uint32_t declare_class(const std::string& name);
    uint32_t declare_role(const std::string& name);
    uint32_t declare_attribute(const std::string& name, AttrType type);
    uint32_t declare_individual(const std::string& name);
    uint32_t add_module(const std::string& name);

    std::optional<uint32_t> find_class(std::string_view name) const;
    std::optional<uint32_t> find_role(std::string_view name) const;
    std::optional<uint32_t> find_attribute(std::string_view name) const;
    std::optional<uint32_t> find_individual(std::string_view name) const;
    std::optional<NameKind> kind_of(std::string_view name) const;

    uint32_t require_class(std::string_view name) const;
    uint32_t require_role(std::string_view name) const;
    uint32_t require_attribute(std::string_view name) const;
    uint32_t require_individual(std::string_view name) const;

    size_t n_classes() const { return class_names_.size(); }
    size_t n_roles() const { return role_names_.size(); }
    size_t n_attributes() const { return attr_names_.size(); }
    size_t n_individuals() const { return individual_names_.size(); }
    size_t n_modules() const { return module_names_.size(); }

    const std::string& class_name(uint32_t id) const { return class_names_.at(id); }
    const std::string& role_name(uint32_t id) const { return role_names_.at(id); }
    const std::string& attribute_name(uint32_t id) const { return attr_names_.at(id); }
    const std::string& individual_name(uint32_t id) const {
        return individual_names_.at(id);
    }
    const std::string& module_name(uint32_t id) const { return module_names_.at(id); }
    AttrType attribute_type(uint32_t id) const { return attr_types_.at(id); }

    const ConceptPool& pool() const { return pool_; }

    // Concept builders resolving names against this KB's declarations.
    ConceptId top() const { return pool_.top(); }
    ConceptId bottom() const { return pool_.bottom(); }
    ConceptId named(std::string_view cls) const;
    ConceptId nominal(std::string_view ind) const;
    Role role(std::string_view name, bool inverse = false) const;

    // Validates the axiom against the declarations (all ids in range, all
    // concepts well formed) and appends it.
    void add_axiom(Axiom a);
    const std::vector<Axiom>& axioms() const { return axioms_; }
    void set_axioms(std::vector<Axiom> axioms);

    // Walks a concept checking ids are in range; throws Wellformed on failure.
    void check_concept(ConceptId c) const;

    // Wholesale rename of declared names (kind, id, new name). Applied as a
    // batch so swaps are legal; the final name table must be collision-free.
    void apply_renames(const std::vector<std::tuple<NameKind, uint32_t, std::string>>& renames);

  private:
    uint32_t declare(const std::string& name, NameKind kind,
                     std::vector<std::string>& names, AttrType attr_type = {});

    std::vector<std::string> class_names_, role_names_, attr_names_, individual_names_;
    std::vector<AttrType> attr_types_;
    std::vector<std::string> module_names_;
    std::map<std::string, std::pair<NameKind, uint32_t>, std::less<>> by_name_;
    std::map<std::string, uint32_t, std::less<>> modules_by_name_;
    ConceptPool pool_;
    std::vector<Axiom> axioms_;
};

// Negation normal form: the result contains Not only directly above Named or
// Nominal; child order is preserved, so nnf is deterministic and idempotent.
ConceptId nnf(const KnowledgeBase& kb, ConceptId c);
ConceptId nnf_negated(const KnowledgeBase& kb, ConceptId c);

// Rewrites the TBox into subclass axioms: equivalences split in two,
// disjointness expanded pairwise into bottom inclusions, domain/range turned
// into GCIs, symmetric roles into inverse-role axioms. ABox and the rest of
// the RBox pass through.
KnowledgeBase to_gcis(const KnowledgeBase& kb);

Signature signature_of(const KnowledgeBase& kb);

// Structural equality with and/or children compared as multisets.
bool structurally_equal(const KnowledgeBase& kb, ConceptId a, ConceptId b);

// Grammar text for a concept or axiom, e.g.
// "(and PhysicalObject (some affects (or PhysicalArtefact Material)))".
std::string render_concept(const KnowledgeBase& kb, ConceptId c);
std::string render_axiom(const KnowledgeBase& kb, const Axiom& a);

}  // namespace defectont
