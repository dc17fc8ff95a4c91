#include "defectont/model.hpp"

#include <algorithm>

namespace defectont {

const char* to_string(NameKind k) {
    switch (k) {
        case NameKind::Class: return "class";
        case NameKind::Role: return "role";
        case NameKind::Attribute: return "attribute";
        case NameKind::Individual: return "individual";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// ConceptPool

ConceptPool::ConceptPool() {
    nodes_.push_back({ConceptKind::Top});
    nodes_.push_back({ConceptKind::Bottom});
    index_[key_of(nodes_[0])] = 0;
    index_[key_of(nodes_[1])] = 1;
}

ConceptPool::ConceptPool(const ConceptPool& o) {
    std::scoped_lock lk(o.mu_);
    nodes_ = o.nodes_;
    index_ = o.index_;
}

ConceptPool& ConceptPool::operator=(const ConceptPool& o) {
    if (this == &o) return *this;
    std::scoped_lock lk(mu_, o.mu_);
    nodes_ = o.nodes_;
    index_ = o.index_;
    return *this;
}

std::string ConceptPool::key_of(const ConceptNode& n) const {
    std::string k;
    k += static_cast<char>('A' + static_cast<int>(n.kind));
    k += std::to_string(n.sym);
    k += n.role.inverse ? '-' : '+';
    k += std::to_string(n.role.name);
    for (ConceptId kid : n.kids) {
        k += ',';
        k += std::to_string(kid);
    }
    return k;
}

ConceptId ConceptPool::intern(ConceptNode n) const {
    std::scoped_lock lk(mu_);
    std::string key = key_of(n);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    ConceptId id = static_cast<ConceptId>(nodes_.size());
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), id);
    return id;
}

ConceptId ConceptPool::named(uint32_t cls) const {
    return intern({ConceptKind::Named, cls});
}

ConceptId ConceptPool::nominal(uint32_t ind) const {
    return intern({ConceptKind::Nominal, ind});
}

ConceptId ConceptPool::negation(ConceptId c) const {
    return intern({ConceptKind::Not, 0, {}, {c}});
}

ConceptId ConceptPool::conjunction(std::vector<ConceptId> kids) const {
    if (kids.size() < 2) {
        throw DloError(ErrorCategory::Arity, "and needs at least two operands");
    }
    return intern({ConceptKind::And, 0, {}, std::move(kids)});
}

ConceptId ConceptPool::disjunction(std::vector<ConceptId> kids) const {
    if (kids.size() < 2) {
        throw DloError(ErrorCategory::Arity, "or needs at least two operands");
    }
    return intern({ConceptKind::Or, 0, {}, std::move(kids)});
}

ConceptId ConceptPool::some(Role r, ConceptId filler) const {
    return intern({ConceptKind::Some, 0, r, {filler}});
}

ConceptId ConceptPool::all(Role r, ConceptId filler) const {
    return intern({ConceptKind::All, 0, r, {filler}});
}

const ConceptNode& ConceptPool::node(ConceptId id) const {
    std::scoped_lock lk(mu_);
    if (id >= nodes_.size()) internal_error("concept id out of range");
    return nodes_[id];
}

size_t ConceptPool::size() const {
    std::scoped_lock lk(mu_);
    return nodes_.size();
}

// ---------------------------------------------------------------------------
// Axiom factories

Axiom Axiom::subclass_of(ConceptId c, ConceptId d) {
    Axiom a{AxiomKind::SubClassOf};
    a.lhs = c;
    a.rhs = d;
    return a;
}

Axiom Axiom::equivalent(ConceptId c, ConceptId d) {
    Axiom a{AxiomKind::EquivalentClasses};
    a.lhs = c;
    a.rhs = d;
    return a;
}

Axiom Axiom::disjoint(std::vector<uint32_t> cls) {
    Axiom a{AxiomKind::DisjointClasses};
    a.classes = std::move(cls);
    return a;
}

Axiom Axiom::subrole_of(Role r, Role s) {
    Axiom a{AxiomKind::SubRoleOf};
    a.role1 = r;
    a.role2 = s;
    return a;
}

Axiom Axiom::inverse_roles(uint32_t r, uint32_t s) {
    Axiom a{AxiomKind::InverseRoles};
    a.role1 = {r, false};
    a.role2 = {s, false};
    return a;
}

Axiom Axiom::symmetric_role(uint32_t r) {
    Axiom a{AxiomKind::SymmetricRole};
    a.role1 = {r, false};
    return a;
}

Axiom Axiom::role_domain(Role r, ConceptId c) {
    Axiom a{AxiomKind::RoleDomain};
    a.role1 = r;
    a.lhs = c;
    return a;
}

Axiom Axiom::role_range(Role r, ConceptId c) {
    Axiom a{AxiomKind::RoleRange};
    a.role1 = r;
    a.lhs = c;
    return a;
}

Axiom Axiom::class_assertion(uint32_t ind, ConceptId c) {
    Axiom a{AxiomKind::ClassAssertion};
    a.ind1 = ind;
    a.lhs = c;
    return a;
}

Axiom Axiom::role_assertion(uint32_t subject, uint32_t role, uint32_t object) {
    Axiom a{AxiomKind::RoleAssertion};
    a.ind1 = subject;
    a.role1 = {role, false};
    a.ind2 = object;
    return a;
}

Axiom Axiom::data_assertion(uint32_t ind, uint32_t attr, Decimal value,
                            std::string unit) {
    Axiom a{AxiomKind::DataAssertion};
    a.ind1 = ind;
    a.attr = attr;
    a.value = value;
    a.unit = std::move(unit);
    return a;
}

Axiom Axiom::string_assertion(uint32_t ind, uint32_t attr, std::string value) {
    Axiom a{AxiomKind::DataAssertion};
    a.ind1 = ind;
    a.attr = attr;
    a.text_value = std::move(value);
    a.is_string_value = true;
    return a;
}

// ---------------------------------------------------------------------------
// KnowledgeBase

uint32_t KnowledgeBase::declare(const std::string& name, NameKind kind,
                                std::vector<std::string>& names, AttrType attr_type) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
        if (it->second.first != kind) {
            throw DloError(ErrorCategory::KindClash,
                           "'" + name + "' is declared both as " +
                               to_string(it->second.first) + " and as " +
                               to_string(kind));
        }
        uint32_t id = it->second.second;
        if (kind == NameKind::Attribute && attr_types_[id] != attr_type) {
            throw DloError(ErrorCategory::KindClash,
                           "attribute '" + name + "' declared with two types");
        }
        return id;
    }
    uint32_t id = static_cast<uint32_t>(names.size());
    names.push_back(name);
    if (kind == NameKind::Attribute) attr_types_.push_back(attr_type);
    by_name_.emplace(name, std::make_pair(kind, id));
    return id;
}

uint32_t KnowledgeBase::declare_class(const std::string& name) {
    return declare(name, NameKind::Class, class_names_);
}

uint32_t KnowledgeBase::declare_role(const std::string& name) {
    return declare(name, NameKind::Role, role_names_);
}

uint32_t KnowledgeBase::declare_attribute(const std::string& name, AttrType type) {
    return declare(name, NameKind::Attribute, attr_names_, type);
}

uint32_t KnowledgeBase::declare_individual(const std::string& name) {
    return declare(name, NameKind::Individual, individual_names_);
}

uint32_t KnowledgeBase::add_module(const std::string& name) {
    auto it = modules_by_name_.find(name);
    if (it != modules_by_name_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(module_names_.size());
    module_names_.push_back(name);
    modules_by_name_.emplace(name, id);
    return id;
}

namespace {
std::optional<uint32_t> find_kind(
    const std::map<std::string, std::pair<NameKind, uint32_t>, std::less<>>& m,
    std::string_view name, NameKind kind) {
    auto it = m.find(name);
    if (it == m.end() || it->second.first != kind) return std::nullopt;
    return it->second.second;
}
}  // namespace

std::optional<uint32_t> KnowledgeBase::find_class(std::string_view name) const {
    return find_kind(by_name_, name, NameKind::Class);
}
std::optional<uint32_t> KnowledgeBase::find_role(std::string_view name) const {
    return find_kind(by_name_, name, NameKind::Role);
}
std::optional<uint32_t> KnowledgeBase::find_attribute(std::string_view name) const {
    return find_kind(by_name_, name, NameKind::Attribute);
}
std::optional<uint32_t> KnowledgeBase::find_individual(std::string_view name) const {
    return find_kind(by_name_, name, NameKind::Individual);
}

std::optional<NameKind> KnowledgeBase::kind_of(std::string_view name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second.first;
}

namespace {
[[noreturn]] void unknown_name(std::string_view name, const char* kind) {
    throw DloError(ErrorCategory::Name,
                   std::string("unknown ") + kind + " '" + std::string(name) + "'");
}
}  // namespace

uint32_t KnowledgeBase::require_class(std::string_view name) const {
    auto id = find_class(name);
    if (!id) unknown_name(name, "class");
    return *id;
}
uint32_t KnowledgeBase::require_role(std::string_view name) const {
    auto id = find_role(name);
    if (!id) unknown_name(name, "role");
    return *id;
}
uint32_t KnowledgeBase::require_attribute(std::string_view name) const {
    auto id = find_attribute(name);
    if (!id) unknown_name(name, "attribute");
    return *id;
}
uint32_t KnowledgeBase::require_individual(std::string_view name) const {
    auto id = find_individual(name);
    if (!id) unknown_name(name, "individual");
    return *id;
}

ConceptId KnowledgeBase::named(std::string_view cls) const {
    return pool_.named(require_class(cls));
}

ConceptId KnowledgeBase::nominal(std::string_view ind) const {
    return pool_.nominal(require_individual(ind));
}

Role KnowledgeBase::role(std::string_view name, bool inverse) const {
    return Role{require_role(name), inverse};
}

void KnowledgeBase::check_concept(ConceptId c) const {
    const ConceptNode& n = pool_.node(c);
    switch (n.kind) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return;
        case ConceptKind::Named:
            if (n.sym >= n_classes()) internal_error("class id out of range");
            return;
        case ConceptKind::Nominal:
            if (n.sym >= n_individuals()) internal_error("individual id out of range");
            return;
        case ConceptKind::Not:
            if (n.kids.size() != 1) internal_error("not arity");
            check_concept(n.kids[0]);
            return;
        case ConceptKind::And:
        case ConceptKind::Or:
            if (n.kids.size() < 2) internal_error("and/or arity");
            for (ConceptId k : n.kids) check_concept(k);
            return;
        case ConceptKind::Some:
        case ConceptKind::All:
            if (n.kids.size() != 1) internal_error("quantifier arity");
            if (n.role.name >= n_roles()) internal_error("role id out of range");
            check_concept(n.kids[0]);
            return;
    }
}

void KnowledgeBase::add_axiom(Axiom a) {
    auto check_role = [&](Role r) {
        if (r.name >= n_roles()) internal_error("role id out of range");
    };
    auto check_ind = [&](uint32_t i) {
        if (i >= n_individuals()) internal_error("individual id out of range");
    };
    switch (a.kind) {
        case AxiomKind::SubClassOf:
        case AxiomKind::EquivalentClasses:
            check_concept(a.lhs);
            check_concept(a.rhs);
            break;
        case AxiomKind::DisjointClasses:
            if (a.classes.size() < 2) {
                throw DloError(ErrorCategory::Arity, "disjoint needs at least two classes");
            }
            for (uint32_t c : a.classes) {
                if (c >= n_classes()) internal_error("class id out of range");
            }
            break;
        case AxiomKind::SubRoleOf:
            check_role(a.role1);
            check_role(a.role2);
            break;
        case AxiomKind::InverseRoles:
            check_role(a.role1);
            check_role(a.role2);
            break;
        case AxiomKind::SymmetricRole:
            check_role(a.role1);
            break;
        case AxiomKind::RoleDomain:
        case AxiomKind::RoleRange:
            check_role(a.role1);
            check_concept(a.lhs);
            break;
        case AxiomKind::ClassAssertion:
            check_ind(a.ind1);
            check_concept(a.lhs);
            break;
        case AxiomKind::RoleAssertion:
            check_ind(a.ind1);
            check_ind(a.ind2);
            check_role(a.role1);
            break;
        case AxiomKind::DataAssertion:
            check_ind(a.ind1);
            if (a.attr >= n_attributes()) internal_error("attribute id out of range");
            if (a.is_string_value) {
                if (attribute_type(a.attr) != AttrType::String) {
                    throw DloError(ErrorCategory::Wellformed,
                                   "string literal for decimal attribute '" +
                                       attribute_name(a.attr) + "'");
                }
                if (!a.unit.empty()) {
                    throw DloError(ErrorCategory::Wellformed,
                                   "unit code on a string attribute");
                }
            } else if (attribute_type(a.attr) != AttrType::Decimal) {
                throw DloError(ErrorCategory::Wellformed,
                               "decimal literal for string attribute '" +
                                   attribute_name(a.attr) + "'");
            }
            break;
    }
    axioms_.push_back(std::move(a));
}

void KnowledgeBase::set_axioms(std::vector<Axiom> axioms) {
    axioms_.clear();
    axioms_.reserve(axioms.size());
    for (auto& a : axioms) add_axiom(std::move(a));
}

void KnowledgeBase::apply_renames(
    const std::vector<std::tuple<NameKind, uint32_t, std::string>>& renames) {
    for (const auto& [kind, id, name] : renames) {
        switch (kind) {
            case NameKind::Class: class_names_.at(id) = name; break;
            case NameKind::Role: role_names_.at(id) = name; break;
            case NameKind::Attribute: attr_names_.at(id) = name; break;
            case NameKind::Individual: individual_names_.at(id) = name; break;
        }
    }
    std::map<std::string, std::pair<NameKind, uint32_t>, std::less<>> index;
    auto reindex = [&](const std::vector<std::string>& names, NameKind kind) {
        for (uint32_t i = 0; i < names.size(); ++i) {
            auto [it, fresh] = index.emplace(names[i], std::make_pair(kind, i));
            if (!fresh) {
                throw DloError(ErrorCategory::KindClash,
                               "rename collides on '" + names[i] + "'");
            }
        }
    };
    reindex(class_names_, NameKind::Class);
    reindex(role_names_, NameKind::Role);
    reindex(attr_names_, NameKind::Attribute);
    reindex(individual_names_, NameKind::Individual);
    by_name_ = std::move(index);
}

// ---------------------------------------------------------------------------
// NNF

ConceptId nnf(const KnowledgeBase& kb, ConceptId c) {
    const ConceptPool& p = kb.pool();
    const ConceptNode n = p.node(c);
    switch (n.kind) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Named:
        case ConceptKind::Nominal:
            return c;
        case ConceptKind::Not:
            return nnf_negated(kb, n.kids[0]);
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptId> kids;
            kids.reserve(n.kids.size());
            for (ConceptId k : n.kids) kids.push_back(nnf(kb, k));
            return n.kind == ConceptKind::And ? p.conjunction(std::move(kids))
                                              : p.disjunction(std::move(kids));
        }
        case ConceptKind::Some:
            return p.some(n.role, nnf(kb, n.kids[0]));
        case ConceptKind::All:
            return p.all(n.role, nnf(kb, n.kids[0]));
    }
    internal_error("nnf: bad concept kind");
}

ConceptId nnf_negated(const KnowledgeBase& kb, ConceptId c) {
    const ConceptPool& p = kb.pool();
    const ConceptNode n = p.node(c);
    switch (n.kind) {
        case ConceptKind::Top:
            return p.bottom();
        case ConceptKind::Bottom:
            return p.top();
        case ConceptKind::Named:
        case ConceptKind::Nominal:
            return p.negation(c);
        case ConceptKind::Not:
            return nnf(kb, n.kids[0]);
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptId> kids;
            kids.reserve(n.kids.size());
            for (ConceptId k : n.kids) kids.push_back(nnf_negated(kb, k));
            return n.kind == ConceptKind::And ? p.disjunction(std::move(kids))
                                              : p.conjunction(std::move(kids));
        }
        case ConceptKind::Some:
            return p.all(n.role, nnf_negated(kb, n.kids[0]));
        case ConceptKind::All:
            return p.some(n.role, nnf_negated(kb, n.kids[0]));
    }
    internal_error("nnf: bad concept kind");
}

// ---------------------------------------------------------------------------
// toGCIs

KnowledgeBase to_gcis(const KnowledgeBase& kb) {
    KnowledgeBase out = kb;
    const ConceptPool& p = out.pool();
    std::vector<Axiom> axioms;
    for (const Axiom& a : kb.axioms()) {
        switch (a.kind) {
            case AxiomKind::EquivalentClasses: {
                Axiom fwd = Axiom::subclass_of(a.lhs, a.rhs);
                Axiom bwd = Axiom::subclass_of(a.rhs, a.lhs);
                fwd.origin = bwd.origin = a.origin;
                fwd.pos = bwd.pos = a.pos;
                axioms.push_back(fwd);
                axioms.push_back(bwd);
                break;
            }
            case AxiomKind::DisjointClasses: {
                for (size_t i = 0; i < a.classes.size(); ++i) {
                    for (size_t j = i + 1; j < a.classes.size(); ++j) {
                        ConceptId both = p.conjunction(
                            {p.named(a.classes[i]), p.named(a.classes[j])});
                        Axiom gci = Axiom::subclass_of(both, p.bottom());
                        gci.origin = a.origin;
                        gci.pos = a.pos;
                        axioms.push_back(gci);
                    }
                }
                break;
            }
            case AxiomKind::RoleDomain: {
                Axiom gci = Axiom::subclass_of(p.some(a.role1, p.top()), a.lhs);
                gci.origin = a.origin;
                gci.pos = a.pos;
                axioms.push_back(gci);
                break;
            }
            case AxiomKind::RoleRange: {
                Axiom gci = Axiom::subclass_of(p.top(), p.all(a.role1, a.lhs));
                gci.origin = a.origin;
                gci.pos = a.pos;
                axioms.push_back(gci);
                break;
            }
            case AxiomKind::SymmetricRole: {
                Axiom inv = Axiom::inverse_roles(a.role1.name, a.role1.name);
                inv.origin = a.origin;
                inv.pos = a.pos;
                axioms.push_back(inv);
                break;
            }
            default:
                axioms.push_back(a);
                break;
        }
    }
    out.set_axioms(std::move(axioms));
    return out;
}

// ---------------------------------------------------------------------------
// Signature

Signature signature_of(const KnowledgeBase& kb) {
    Signature s;
    for (uint32_t i = 0; i < kb.n_classes(); ++i) s.classes.insert(kb.class_name(i));
    for (uint32_t i = 0; i < kb.n_roles(); ++i) s.roles.insert(kb.role_name(i));
    for (uint32_t i = 0; i < kb.n_attributes(); ++i) {
        s.attributes.insert(kb.attribute_name(i));
    }
    for (uint32_t i = 0; i < kb.n_individuals(); ++i) {
        s.individuals.insert(kb.individual_name(i));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Structural equality and rendering

namespace {

std::string canonical_key(const KnowledgeBase& kb, ConceptId c) {
    const ConceptNode& n = kb.pool().node(c);
    switch (n.kind) {
        case ConceptKind::Top: return "T";
        case ConceptKind::Bottom: return "F";
        case ConceptKind::Named: return "N" + std::to_string(n.sym);
        case ConceptKind::Nominal: return "O" + std::to_string(n.sym);
        case ConceptKind::Not: return "!" + canonical_key(kb, n.kids[0]);
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<std::string> keys;
            keys.reserve(n.kids.size());
            for (ConceptId k : n.kids) keys.push_back(canonical_key(kb, k));
            std::sort(keys.begin(), keys.end());
            std::string out = n.kind == ConceptKind::And ? "(&" : "(|";
            for (const auto& k : keys) out += " " + k;
            return out + ")";
        }
        case ConceptKind::Some:
        case ConceptKind::All: {
            std::string out = n.kind == ConceptKind::Some ? "(E " : "(A ";
            out += std::to_string(n.role.name);
            if (n.role.inverse) out += "-";
            return out + " " + canonical_key(kb, n.kids[0]) + ")";
        }
    }
    internal_error("canonical_key: bad concept kind");
}

std::string render_role(const KnowledgeBase& kb, Role r) {
    if (r.inverse) return "(inv " + kb.role_name(r.name) + ")";
    return kb.role_name(r.name);
}

}  // namespace

bool structurally_equal(const KnowledgeBase& kb, ConceptId a, ConceptId b) {
    if (a == b) return true;
    return canonical_key(kb, a) == canonical_key(kb, b);
}

std::string render_concept(const KnowledgeBase& kb, ConceptId c) {
    const ConceptNode& n = kb.pool().node(c);
    switch (n.kind) {
        case ConceptKind::Top: return "top";
        case ConceptKind::Bottom: return "bot";
        case ConceptKind::Named: return kb.class_name(n.sym);
        case ConceptKind::Nominal: return "(one " + kb.individual_name(n.sym) + ")";
        case ConceptKind::Not: return "(not " + render_concept(kb, n.kids[0]) + ")";
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::string out = n.kind == ConceptKind::And ? "(and" : "(or";
            for (ConceptId k : n.kids) out += " " + render_concept(kb, k);
            return out + ")";
        }
        case ConceptKind::Some:
        case ConceptKind::All: {
            std::string out = n.kind == ConceptKind::Some ? "(some " : "(all ";
            out += render_role(kb, n.role);
            return out + " " + render_concept(kb, n.kids[0]) + ")";
        }
    }
    internal_error("render_concept: bad concept kind");
}

std::string render_axiom(const KnowledgeBase& kb, const Axiom& a) {
    switch (a.kind) {
        case AxiomKind::SubClassOf:
            return "subclass " + render_concept(kb, a.lhs) + " " +
                   render_concept(kb, a.rhs);
        case AxiomKind::EquivalentClasses:
            return "equiv " + render_concept(kb, a.lhs) + " " +
                   render_concept(kb, a.rhs);
        case AxiomKind::DisjointClasses: {
            std::string out = "disjoint";
            for (uint32_t c : a.classes) out += " " + kb.class_name(c);
            return out;
        }
        case AxiomKind::SubRoleOf:
            return "subrole " + render_role(kb, a.role1) + " " +
                   render_role(kb, a.role2);
        case AxiomKind::InverseRoles:
            return "role " + kb.role_name(a.role1.name) + " inverse " +
                   kb.role_name(a.role2.name);
        case AxiomKind::SymmetricRole:
            return "role " + kb.role_name(a.role1.name) + " symmetric";
        case AxiomKind::RoleDomain:
            return "domain " + render_role(kb, a.role1) + " " +
                   render_concept(kb, a.lhs);
        case AxiomKind::RoleRange:
            return "range " + render_role(kb, a.role1) + " " +
                   render_concept(kb, a.lhs);
        case AxiomKind::ClassAssertion:
            return "instance " + kb.individual_name(a.ind1) + " " +
                   render_concept(kb, a.lhs);
        case AxiomKind::RoleAssertion:
            return "rel " + kb.individual_name(a.ind1) + " " +
                   kb.role_name(a.role1.name) + " " + kb.individual_name(a.ind2);
        case AxiomKind::DataAssertion: {
            std::string out = "data " + kb.individual_name(a.ind1) + " " +
                              kb.attribute_name(a.attr) + " ";
            if (a.is_string_value) {
                out += "\"" + a.text_value + "\"";
            } else {
                out += a.value.to_string();
                if (!a.unit.empty()) out += " " + a.unit;
            }
            return out;
        }
    }
    internal_error("render_axiom: bad axiom kind");
}

}  // namespace defectont
