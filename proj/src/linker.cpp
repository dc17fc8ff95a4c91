#include "defectont/linker.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "defectont/parser.hpp"

namespace defectont {

namespace {

namespace fs = std::filesystem;

struct DfsState {
    const ModuleLoader& loader;
    std::vector<std::string> stack;           // current DFS path, for cycle reports
    std::set<std::string> done;
    std::vector<SourceModule> order;          // post-order: leaves first
};

void visit(DfsState& st, const std::string& name, const std::string& importer) {
    if (st.done.contains(name)) return;
    auto on_path = std::find(st.stack.begin(), st.stack.end(), name);
    if (on_path != st.stack.end()) {
        std::string path;
        for (auto it = on_path; it != st.stack.end(); ++it) path += *it + " -> ";
        throw DloError(ErrorCategory::Import, "import cycle: " + path + name);
    }
    std::optional<SourceModule> m = st.loader(name);
    if (!m) {
        std::string msg = "module '" + name + "' not found";
        if (!importer.empty()) msg += " (imported by '" + importer + "')";
        throw DloError(ErrorCategory::Import, msg);
    }
    if (m->name != name) {
        throw DloError(ErrorCategory::Import,
                       "module file for '" + name + "' declares ontology '" + m->name +
                           "'",
                       m->name_pos, m->source_name);
    }
    st.stack.push_back(name);
    for (const AstImport& imp : m->imports) visit(st, imp.name, name);
    st.stack.pop_back();
    st.done.insert(name);
    st.order.push_back(std::move(*m));
}

}  // namespace

Role resolve_role(const KnowledgeBase& kb, const AstRole& r, const std::string& file) {
    auto id = kb.find_role(r.name);
    if (!id) {
        auto other = kb.kind_of(r.name);
        if (other) {
            throw DloError(ErrorCategory::KindClash,
                           "'" + r.name + "' is declared as " + to_string(*other) +
                               ", not as a role",
                           r.pos, file);
        }
        throw DloError(ErrorCategory::Name, "undeclared role '" + r.name + "'", r.pos,
                       file);
    }
    return Role{*id, r.inverse};
}

ConceptId resolve_concept(const KnowledgeBase& kb, const AstConcept& c,
                          const std::string& file) {
    const ConceptPool& p = kb.pool();
    switch (c.kind) {
        case AstConceptKind::Top: return p.top();
        case AstConceptKind::Bottom: return p.bottom();
        case AstConceptKind::Named: {
            auto id = kb.find_class(c.name);
            if (!id) {
                auto other = kb.kind_of(c.name);
                if (other) {
                    throw DloError(ErrorCategory::KindClash,
                                   "'" + c.name + "' is declared as " +
                                       to_string(*other) + ", not as a class",
                                   c.pos, file);
                }
                throw DloError(ErrorCategory::Name, "undeclared class '" + c.name + "'",
                               c.pos, file);
            }
            return p.named(*id);
        }
        case AstConceptKind::Nominal: {
            auto id = kb.find_individual(c.name);
            if (!id) {
                throw DloError(ErrorCategory::Name,
                               "undeclared individual '" + c.name + "'", c.pos, file);
            }
            return p.nominal(*id);
        }
        case AstConceptKind::Not:
            return p.negation(resolve_concept(kb, c.kids[0], file));
        case AstConceptKind::And:
        case AstConceptKind::Or: {
            std::vector<ConceptId> kids;
            kids.reserve(c.kids.size());
            for (const auto& k : c.kids) kids.push_back(resolve_concept(kb, k, file));
            return c.kind == AstConceptKind::And ? p.conjunction(std::move(kids))
                                                 : p.disjunction(std::move(kids));
        }
        case AstConceptKind::Some:
        case AstConceptKind::All: {
            Role r = resolve_role(kb, c.role, file);
            ConceptId filler = resolve_concept(kb, c.kids[0], file);
            return c.kind == AstConceptKind::Some ? p.some(r, filler) : p.all(r, filler);
        }
    }
    internal_error("resolve_concept: bad kind");
}

namespace {

uint32_t resolve_individual(const KnowledgeBase& kb, const std::string& name,
                            SourcePos pos, const std::string& file) {
    auto id = kb.find_individual(name);
    if (!id) {
        throw DloError(ErrorCategory::Name, "undeclared individual '" + name + "'", pos,
                       file);
    }
    return *id;
}

uint32_t resolve_class_name(const KnowledgeBase& kb, const std::string& name,
                            SourcePos pos, const std::string& file) {
    auto id = kb.find_class(name);
    if (!id) {
        throw DloError(ErrorCategory::Name, "undeclared class '" + name + "'", pos,
                       file);
    }
    return *id;
}

}  // namespace

Axiom resolve_axiom(const KnowledgeBase& kb, const AstAxiom& a, const std::string& file) {
    Axiom out{};
    switch (a.kind) {
        case AstAxiomKind::SubClass:
            out = Axiom::subclass_of(resolve_concept(kb, a.concepts[0], file),
                                     resolve_concept(kb, a.concepts[1], file));
            break;
        case AstAxiomKind::Equiv:
            out = Axiom::equivalent(resolve_concept(kb, a.concepts[0], file),
                                    resolve_concept(kb, a.concepts[1], file));
            break;
        case AstAxiomKind::Disjoint: {
            std::vector<uint32_t> classes;
            classes.reserve(a.names.size());
            for (const auto& n : a.names) {
                classes.push_back(resolve_class_name(kb, n, a.pos, file));
            }
            out = Axiom::disjoint(std::move(classes));
            break;
        }
        case AstAxiomKind::SubRole:
            out = Axiom::subrole_of(resolve_role(kb, a.roles[0], file),
                                    resolve_role(kb, a.roles[1], file));
            break;
        case AstAxiomKind::Domain:
            out = Axiom::role_domain(resolve_role(kb, a.roles[0], file),
                                     resolve_concept(kb, a.concepts[0], file));
            break;
        case AstAxiomKind::Range:
            out = Axiom::role_range(resolve_role(kb, a.roles[0], file),
                                    resolve_concept(kb, a.concepts[0], file));
            break;
        case AstAxiomKind::Instance:
            out = Axiom::class_assertion(
                resolve_individual(kb, a.names[0], a.pos, file),
                resolve_concept(kb, a.concepts[0], file));
            break;
        case AstAxiomKind::Rel: {
            uint32_t subject = resolve_individual(kb, a.names[0], a.pos, file);
            uint32_t object = resolve_individual(kb, a.names[1], a.pos, file);
            Role r = resolve_role(kb, a.roles[0], file);
            // R-(a, b) is stored as R(b, a).
            out = r.inverse ? Axiom::role_assertion(object, r.name, subject)
                            : Axiom::role_assertion(subject, r.name, object);
            break;
        }
        case AstAxiomKind::Data: {
            uint32_t ind = resolve_individual(kb, a.names[0], a.pos, file);
            auto attr = kb.find_attribute(a.names[1]);
            if (!attr) {
                throw DloError(ErrorCategory::Name,
                               "undeclared attribute '" + a.names[1] + "'", a.pos, file);
            }
            if (a.literal_is_string) {
                out = Axiom::string_assertion(ind, *attr, a.literal);
            } else {
                out = Axiom::data_assertion(ind, *attr, Decimal::parse(a.literal),
                                            a.unit);
            }
            break;
        }
    }
    out.pos = a.pos;
    return out;
}

KnowledgeBase resolve_imports(const std::string& root_name, const ModuleLoader& loader) {
    DfsState st{loader};
    visit(st, root_name, "");

    KnowledgeBase kb;
    // All declarations first, so axioms may reference any module's names
    // regardless of merge position.
    for (const SourceModule& m : st.order) {
        kb.add_module(m.name);
        for (const AstDecl& d : m.decls) {
            try {
                switch (d.kind) {
                    case NameKind::Class: kb.declare_class(d.name); break;
                    case NameKind::Role:
                        kb.declare_role(d.name);
                        if (!d.inverse_name.empty()) kb.declare_role(d.inverse_name);
                        break;
                    case NameKind::Attribute:
                        kb.declare_attribute(d.name, d.attr_type);
                        break;
                    case NameKind::Individual: kb.declare_individual(d.name); break;
                }
            } catch (const DloError& e) {
                if (e.category() == ErrorCategory::KindClash) {
                    throw DloError(ErrorCategory::KindClash,
                                   std::string(e.what()) + " [module " + m.name + "]",
                                   d.pos, m.source_name);
                }
                throw;
            }
        }
    }
    for (const SourceModule& m : st.order) {
        uint32_t origin = kb.add_module(m.name);
        for (const AstDecl& d : m.decls) {
            if (d.kind != NameKind::Role) continue;
            if (!d.inverse_name.empty()) {
                Axiom inv = Axiom::inverse_roles(kb.require_role(d.name),
                                                 kb.require_role(d.inverse_name));
                inv.origin = origin;
                inv.pos = d.pos;
                kb.add_axiom(std::move(inv));
            }
            if (d.symmetric) {
                Axiom sym = Axiom::symmetric_role(kb.require_role(d.name));
                sym.origin = origin;
                sym.pos = d.pos;
                kb.add_axiom(std::move(sym));
            }
        }
        for (const AstAxiom& a : m.axioms) {
            Axiom resolved = resolve_axiom(kb, a, m.source_name);
            resolved.origin = origin;
            kb.add_axiom(std::move(resolved));
        }
    }
    return kb;
}

KnowledgeBase link_single_module(const SourceModule& m) {
    return resolve_imports(m.name, [&](const std::string& name) {
        return name == m.name ? std::optional<SourceModule>(m) : std::nullopt;
    });
}

ModuleLoader directory_loader(std::string dir) {
    return [dir = std::move(dir)](const std::string& name) -> std::optional<SourceModule> {
        fs::path path = fs::path(dir) / (name + ".dlo");
        if (!fs::exists(path)) return std::nullopt;
        return parse_module(read_file(path.string()), path.string());
    };
}

KnowledgeBase load_knowledge_base(const std::string& path) {
    SourceModule root = parse_module(read_file(path), path);
    std::string dir = fs::path(path).parent_path().string();
    if (dir.empty()) dir = ".";
    std::string root_name = root.name;
    ModuleLoader siblings = directory_loader(dir);
    return resolve_imports(root_name, [&](const std::string& name) {
        if (name == root_name) return std::optional<SourceModule>(root);
        return siblings(name);
    });
}

// ---------------------------------------------------------------------------
// Pruning

namespace {

struct Mentions {
    std::set<uint32_t> classes, roles, attrs, inds;

    bool intersects(const Mentions& kept) const {
        auto hit = [](const std::set<uint32_t>& a, const std::set<uint32_t>& b) {
            for (uint32_t x : a) {
                if (b.contains(x)) return true;
            }
            return false;
        };
        return hit(classes, kept.classes) || hit(roles, kept.roles) ||
               hit(attrs, kept.attrs) || hit(inds, kept.inds);
    }

    void merge_into(Mentions& kept) const {
        kept.classes.insert(classes.begin(), classes.end());
        kept.roles.insert(roles.begin(), roles.end());
        kept.attrs.insert(attrs.begin(), attrs.end());
        kept.inds.insert(inds.begin(), inds.end());
    }
};

void collect_concept(const KnowledgeBase& kb, ConceptId c, Mentions& m) {
    const ConceptNode& n = kb.pool().node(c);
    switch (n.kind) {
        case ConceptKind::Named: m.classes.insert(n.sym); break;
        case ConceptKind::Nominal: m.inds.insert(n.sym); break;
        case ConceptKind::Some:
        case ConceptKind::All: m.roles.insert(n.role.name); break;
        default: break;
    }
    for (ConceptId k : n.kids) collect_concept(kb, k, m);
}

Mentions mentions_of(const KnowledgeBase& kb, const Axiom& a) {
    Mentions m;
    switch (a.kind) {
        case AxiomKind::SubClassOf:
        case AxiomKind::EquivalentClasses:
            collect_concept(kb, a.lhs, m);
            collect_concept(kb, a.rhs, m);
            break;
        case AxiomKind::DisjointClasses:
            m.classes.insert(a.classes.begin(), a.classes.end());
            break;
        case AxiomKind::SubRoleOf:
            m.roles.insert(a.role1.name);
            m.roles.insert(a.role2.name);
            break;
        case AxiomKind::InverseRoles:
            m.roles.insert(a.role1.name);
            m.roles.insert(a.role2.name);
            break;
        case AxiomKind::SymmetricRole: m.roles.insert(a.role1.name); break;
        case AxiomKind::RoleDomain:
        case AxiomKind::RoleRange:
            m.roles.insert(a.role1.name);
            collect_concept(kb, a.lhs, m);
            break;
        case AxiomKind::ClassAssertion:
            m.inds.insert(a.ind1);
            collect_concept(kb, a.lhs, m);
            break;
        case AxiomKind::RoleAssertion:
            m.inds.insert(a.ind1);
            m.inds.insert(a.ind2);
            m.roles.insert(a.role1.name);
            break;
        case AxiomKind::DataAssertion:
            m.inds.insert(a.ind1);
            m.attrs.insert(a.attr);
            break;
    }
    return m;
}

ConceptId translate_concept(const KnowledgeBase& from, const KnowledgeBase& to,
                            ConceptId c) {
    const ConceptNode& n = from.pool().node(c);
    const ConceptPool& p = to.pool();
    switch (n.kind) {
        case ConceptKind::Top: return p.top();
        case ConceptKind::Bottom: return p.bottom();
        case ConceptKind::Named: return to.named(from.class_name(n.sym));
        case ConceptKind::Nominal: return to.nominal(from.individual_name(n.sym));
        case ConceptKind::Not:
            return p.negation(translate_concept(from, to, n.kids[0]));
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptId> kids;
            kids.reserve(n.kids.size());
            for (ConceptId k : n.kids) kids.push_back(translate_concept(from, to, k));
            return n.kind == ConceptKind::And ? p.conjunction(std::move(kids))
                                              : p.disjunction(std::move(kids));
        }
        case ConceptKind::Some:
        case ConceptKind::All: {
            Role r = to.role(from.role_name(n.role.name), n.role.inverse);
            ConceptId filler = translate_concept(from, to, n.kids[0]);
            return n.kind == ConceptKind::Some ? p.some(r, filler) : p.all(r, filler);
        }
    }
    internal_error("translate_concept: bad kind");
}

Axiom translate_axiom(const KnowledgeBase& from, const KnowledgeBase& to,
                      const Axiom& a) {
    Axiom out = a;
    auto cls = [&](uint32_t id) { return to.require_class(from.class_name(id)); };
    auto rol = [&](Role r) {
        return Role{to.require_role(from.role_name(r.name)), r.inverse};
    };
    auto ind = [&](uint32_t id) {
        return to.require_individual(from.individual_name(id));
    };
    if (a.lhs != kNoConcept) out.lhs = translate_concept(from, to, a.lhs);
    if (a.rhs != kNoConcept) out.rhs = translate_concept(from, to, a.rhs);
    switch (a.kind) {
        case AxiomKind::DisjointClasses:
            out.classes.clear();
            for (uint32_t c : a.classes) out.classes.push_back(cls(c));
            break;
        case AxiomKind::SubRoleOf:
            out.role1 = rol(a.role1);
            out.role2 = rol(a.role2);
            break;
        case AxiomKind::InverseRoles:
            out.role1 = rol(a.role1);
            out.role2 = rol(a.role2);
            break;
        case AxiomKind::SymmetricRole: out.role1 = rol(a.role1); break;
        case AxiomKind::RoleDomain:
        case AxiomKind::RoleRange: out.role1 = rol(a.role1); break;
        case AxiomKind::ClassAssertion: out.ind1 = ind(a.ind1); break;
        case AxiomKind::RoleAssertion:
            out.ind1 = ind(a.ind1);
            out.ind2 = ind(a.ind2);
            out.role1 = rol(a.role1);
            break;
        case AxiomKind::DataAssertion:
            out.ind1 = ind(a.ind1);
            out.attr = to.require_attribute(from.attribute_name(a.attr));
            break;
        default: break;
    }
    return out;
}

}  // namespace

KnowledgeBase prune_to_signature(const KnowledgeBase& kb, const Signature& seed) {
    Mentions kept;
    auto seed_ids = [&](const std::set<std::string>& names, NameKind kind,
                        std::set<uint32_t>& out) {
        for (const auto& name : names) {
            auto k = kb.kind_of(name);
            if (!k || *k != kind) {
                throw DloError(ErrorCategory::Name,
                               "seed name '" + name + "' is not a declared " +
                                   to_string(kind));
            }
            switch (kind) {
                case NameKind::Class: out.insert(*kb.find_class(name)); break;
                case NameKind::Role: out.insert(*kb.find_role(name)); break;
                case NameKind::Attribute: out.insert(*kb.find_attribute(name)); break;
                case NameKind::Individual: out.insert(*kb.find_individual(name)); break;
            }
        }
    };
    seed_ids(seed.classes, NameKind::Class, kept.classes);
    seed_ids(seed.roles, NameKind::Role, kept.roles);
    seed_ids(seed.attributes, NameKind::Attribute, kept.attrs);
    seed_ids(seed.individuals, NameKind::Individual, kept.inds);

    const auto& axioms = kb.axioms();
    std::vector<Mentions> mentions;
    mentions.reserve(axioms.size());
    for (const Axiom& a : axioms) mentions.push_back(mentions_of(kb, a));

    std::vector<bool> kept_axiom(axioms.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < axioms.size(); ++i) {
            if (kept_axiom[i]) continue;
            if (mentions[i].intersects(kept)) {
                kept_axiom[i] = true;
                mentions[i].merge_into(kept);
                changed = true;
            }
        }
    }

    KnowledgeBase out;
    for (uint32_t i = 0; i < kb.n_modules(); ++i) out.add_module(kb.module_name(i));
    for (uint32_t i = 0; i < kb.n_classes(); ++i) {
        if (kept.classes.contains(i)) out.declare_class(kb.class_name(i));
    }
    for (uint32_t i = 0; i < kb.n_roles(); ++i) {
        if (kept.roles.contains(i)) out.declare_role(kb.role_name(i));
    }
    for (uint32_t i = 0; i < kb.n_attributes(); ++i) {
        if (kept.attrs.contains(i)) {
            out.declare_attribute(kb.attribute_name(i), kb.attribute_type(i));
        }
    }
    for (uint32_t i = 0; i < kb.n_individuals(); ++i) {
        if (kept.inds.contains(i)) out.declare_individual(kb.individual_name(i));
    }
    for (size_t i = 0; i < axioms.size(); ++i) {
        if (kept_axiom[i]) out.add_axiom(translate_axiom(kb, out, axioms[i]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Renaming and bridging

KnowledgeBase normalize_names(const KnowledgeBase& kb, const RenamePairs& renames) {
    std::vector<std::tuple<NameKind, uint32_t, std::string>> plan;
    std::set<std::string> olds, news;
    for (const auto& [old_name, new_name] : renames) {
        if (!olds.insert(old_name).second) {
            throw DloError(ErrorCategory::Name,
                           "name '" + old_name + "' renamed twice");
        }
        if (!news.insert(new_name).second) {
            throw DloError(ErrorCategory::KindClash,
                           "two names renamed to '" + new_name + "'");
        }
        if (!is_valid_dlo_name(new_name)) {
            throw DloError(ErrorCategory::Name,
                           "'" + new_name + "' is not a legal name");
        }
        auto kind = kb.kind_of(old_name);
        if (!kind) {
            throw DloError(ErrorCategory::Name, "unknown name '" + old_name + "'");
        }
        uint32_t id = 0;
        switch (*kind) {
            case NameKind::Class: id = *kb.find_class(old_name); break;
            case NameKind::Role: id = *kb.find_role(old_name); break;
            case NameKind::Attribute: id = *kb.find_attribute(old_name); break;
            case NameKind::Individual: id = *kb.find_individual(old_name); break;
        }
        plan.emplace_back(*kind, id, new_name);
    }
    for (const auto& [old_name, new_name] : renames) {
        if (old_name == new_name) continue;
        if (kb.kind_of(new_name) && !olds.contains(new_name)) {
            throw DloError(ErrorCategory::KindClash,
                           "rename target '" + new_name +
                               "' collides with an existing name");
        }
    }
    KnowledgeBase out = kb;
    out.apply_renames(plan);
    return out;
}

KnowledgeBase bridge_equivalences(const KnowledgeBase& kb, const RenamePairs& pairs) {
    KnowledgeBase out = kb;
    uint32_t origin = out.add_module("bridge");
    for (const auto& [a, b] : pairs) {
        for (const std::string& name : {a, b}) {
            if (!out.find_class(name)) {
                auto other = out.kind_of(name);
                if (other) {
                    throw DloError(ErrorCategory::KindClash,
                                   "'" + name + "' is declared as " +
                                       to_string(*other) + ", not as a class");
                }
                throw DloError(ErrorCategory::Name, "unknown class '" + name + "'");
            }
        }
        Axiom eq = Axiom::equivalent(out.named(a), out.named(b));
        eq.origin = origin;
        out.add_axiom(std::move(eq));
    }
    return out;
}

// ---------------------------------------------------------------------------
// KB -> module

namespace {

AstConcept ast_of_concept(const KnowledgeBase& kb, ConceptId c) {
    const ConceptNode& n = kb.pool().node(c);
    AstConcept out;
    switch (n.kind) {
        case ConceptKind::Top: out.kind = AstConceptKind::Top; return out;
        case ConceptKind::Bottom: out.kind = AstConceptKind::Bottom; return out;
        case ConceptKind::Named:
            out.kind = AstConceptKind::Named;
            out.name = kb.class_name(n.sym);
            return out;
        case ConceptKind::Nominal:
            out.kind = AstConceptKind::Nominal;
            out.name = kb.individual_name(n.sym);
            return out;
        case ConceptKind::Not:
            out.kind = AstConceptKind::Not;
            out.kids.push_back(ast_of_concept(kb, n.kids[0]));
            return out;
        case ConceptKind::And:
        case ConceptKind::Or:
            out.kind = n.kind == ConceptKind::And ? AstConceptKind::And
                                                  : AstConceptKind::Or;
            for (ConceptId k : n.kids) out.kids.push_back(ast_of_concept(kb, k));
            return out;
        case ConceptKind::Some:
        case ConceptKind::All:
            out.kind = n.kind == ConceptKind::Some ? AstConceptKind::Some
                                                   : AstConceptKind::All;
            out.role = {kb.role_name(n.role.name), n.role.inverse};
            out.kids.push_back(ast_of_concept(kb, n.kids[0]));
            return out;
    }
    internal_error("ast_of_concept: bad kind");
}

AstRole ast_of_role(const KnowledgeBase& kb, Role r) {
    return AstRole{kb.role_name(r.name), r.inverse};
}

}  // namespace

SourceModule to_source_module(const KnowledgeBase& kb, const std::string& name) {
    SourceModule m;
    m.name = name;

    std::vector<AstDecl> role_decls(kb.n_roles());
    for (uint32_t i = 0; i < kb.n_roles(); ++i) {
        role_decls[i].kind = NameKind::Role;
        role_decls[i].name = kb.role_name(i);
    }
    std::vector<bool> folded(kb.axioms().size(), false);
    for (size_t i = 0; i < kb.axioms().size(); ++i) {
        const Axiom& a = kb.axioms()[i];
        if (a.kind == AxiomKind::SymmetricRole) {
            role_decls[a.role1.name].symmetric = true;
            folded[i] = true;
        } else if (a.kind == AxiomKind::InverseRoles) {
            AstDecl& first = role_decls[a.role1.name];
            AstDecl& second = role_decls[a.role2.name];
            const std::string& r = kb.role_name(a.role1.name);
            const std::string& s = kb.role_name(a.role2.name);
            if (first.inverse_name.empty() || first.inverse_name == s) {
                first.inverse_name = s;
                folded[i] = true;
            } else if (second.inverse_name.empty() || second.inverse_name == r) {
                second.inverse_name = r;
                folded[i] = true;
            } else {
                throw DloError(ErrorCategory::Wellformed,
                               "role '" + r + "' has several declared inverses");
            }
        }
    }

    auto push_decl = [&m](NameKind kind, const std::string& name) -> AstDecl& {
        AstDecl d;
        d.kind = kind;
        d.name = name;
        m.decls.push_back(std::move(d));
        return m.decls.back();
    };
    for (uint32_t i = 0; i < kb.n_classes(); ++i) {
        push_decl(NameKind::Class, kb.class_name(i));
    }
    for (auto& d : role_decls) m.decls.push_back(std::move(d));
    for (uint32_t i = 0; i < kb.n_attributes(); ++i) {
        push_decl(NameKind::Attribute, kb.attribute_name(i)).attr_type =
            kb.attribute_type(i);
    }
    for (uint32_t i = 0; i < kb.n_individuals(); ++i) {
        push_decl(NameKind::Individual, kb.individual_name(i));
    }

    for (size_t i = 0; i < kb.axioms().size(); ++i) {
        if (folded[i]) continue;
        const Axiom& a = kb.axioms()[i];
        AstAxiom out;
        switch (a.kind) {
            case AxiomKind::SubClassOf:
                out.kind = AstAxiomKind::SubClass;
                out.concepts = {ast_of_concept(kb, a.lhs), ast_of_concept(kb, a.rhs)};
                break;
            case AxiomKind::EquivalentClasses:
                out.kind = AstAxiomKind::Equiv;
                out.concepts = {ast_of_concept(kb, a.lhs), ast_of_concept(kb, a.rhs)};
                break;
            case AxiomKind::DisjointClasses:
                out.kind = AstAxiomKind::Disjoint;
                for (uint32_t c : a.classes) out.names.push_back(kb.class_name(c));
                break;
            case AxiomKind::SubRoleOf:
                out.kind = AstAxiomKind::SubRole;
                out.roles = {ast_of_role(kb, a.role1), ast_of_role(kb, a.role2)};
                break;
            case AxiomKind::RoleDomain:
            case AxiomKind::RoleRange:
                out.kind = a.kind == AxiomKind::RoleDomain ? AstAxiomKind::Domain
                                                           : AstAxiomKind::Range;
                out.roles = {ast_of_role(kb, a.role1)};
                out.concepts = {ast_of_concept(kb, a.lhs)};
                break;
            case AxiomKind::ClassAssertion:
                out.kind = AstAxiomKind::Instance;
                out.names = {kb.individual_name(a.ind1)};
                out.concepts = {ast_of_concept(kb, a.lhs)};
                break;
            case AxiomKind::RoleAssertion:
                out.kind = AstAxiomKind::Rel;
                out.names = {kb.individual_name(a.ind1), kb.individual_name(a.ind2)};
                out.roles = {ast_of_role(kb, a.role1)};
                break;
            case AxiomKind::DataAssertion:
                out.kind = AstAxiomKind::Data;
                out.names = {kb.individual_name(a.ind1), kb.attribute_name(a.attr)};
                if (a.is_string_value) {
                    out.literal = a.text_value;
                    out.literal_is_string = true;
                } else {
                    out.literal = a.value.to_string();
                    out.unit = a.unit;
                }
                break;
            default:
                internal_error("to_source_module: unexpected axiom kind");
        }
        m.axioms.push_back(std::move(out));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Files

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DloError(ErrorCategory::Io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DloError(ErrorCategory::Io, "cannot write '" + path + "'");
    out << content;
}

RenamePairs load_pairs_tsv(const std::string& path) {
    RenamePairs pairs;
    std::istringstream in(read_file(path));
    std::string line;
    uint32_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw DloError(ErrorCategory::Value, "expected two tab-separated columns",
                           {lineno, 1}, path);
        }
        pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return pairs;
}

Signature load_signature_file(const KnowledgeBase& kb, const std::string& path) {
    Signature s;
    std::istringstream in(read_file(path));
    std::string line;
    uint32_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') continue;
        auto kind = kb.kind_of(line);
        if (!kind) {
            throw DloError(ErrorCategory::Name, "unknown name '" + line + "'",
                           {lineno, 1}, path);
        }
        switch (*kind) {
            case NameKind::Class: s.classes.insert(line); break;
            case NameKind::Role: s.roles.insert(line); break;
            case NameKind::Attribute: s.attributes.insert(line); break;
            case NameKind::Individual: s.individuals.insert(line); break;
        }
    }
    return s;
}

}  // namespace defectont
