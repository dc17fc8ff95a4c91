#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "defectont/ast.hpp"
#include "defectont/model.hpp"

namespace defectont::testing {

// Random well-formed SourceModule: every name used in an axiom is declared.
// Used by the parser round-trip property.
inline SourceModule random_module(std::mt19937& rng) {
    SourceModule m;
    m.name = "gen" + std::to_string(rng() % 1000);
    auto count = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<uint32_t>(hi - lo + 1));
    };
    int n_classes = count(1, 5), n_roles = count(1, 3);
    int n_attrs = count(0, 2), n_inds = count(0, 3);
    std::vector<std::string> classes, roles, attrs, inds;
    for (int i = 0; i < n_classes; ++i) classes.push_back("C" + std::to_string(i));
    for (int i = 0; i < n_roles; ++i) roles.push_back("r" + std::to_string(i));
    for (int i = 0; i < n_attrs; ++i) attrs.push_back("t" + std::to_string(i));
    for (int i = 0; i < n_inds; ++i) inds.push_back("i" + std::to_string(i));

    for (const auto& c : classes) m.decls.push_back({NameKind::Class, c});
    for (int i = 0; i < n_roles; ++i) {
        AstDecl d{NameKind::Role, roles[i]};
        if (rng() % 4 == 0) d.symmetric = true;
        m.decls.push_back(std::move(d));
    }
    for (const auto& a : attrs) {
        AstDecl d{NameKind::Attribute, a};
        d.attr_type = rng() % 2 ? AttrType::Decimal : AttrType::String;
        m.decls.push_back(std::move(d));
    }
    for (const auto& i : inds) m.decls.push_back({NameKind::Individual, i});

    auto role = [&]() {
        AstRole r{roles[rng() % roles.size()]};
        r.inverse = rng() % 3 == 0;
        return r;
    };
    std::function<AstConcept(int)> concept_at = [&](int depth) {
        AstConcept c;
        switch (rng() % (depth <= 0 ? 4u : 9u)) {
            case 0: c.kind = AstConceptKind::Top; break;
            case 1: c.kind = AstConceptKind::Bottom; break;
            case 2:
            case 3:
                c.kind = AstConceptKind::Named;
                c.name = classes[rng() % classes.size()];
                break;
            case 4:
                c.kind = AstConceptKind::Not;
                c.kids.push_back(concept_at(depth - 1));
                break;
            case 5:
            case 6: {
                c.kind = rng() % 2 ? AstConceptKind::And : AstConceptKind::Or;
                size_t n = 2 + rng() % 2;
                for (size_t i = 0; i < n; ++i) c.kids.push_back(concept_at(depth - 1));
                break;
            }
            case 7:
                c.kind = rng() % 2 ? AstConceptKind::Some : AstConceptKind::All;
                c.role = role();
                c.kids.push_back(concept_at(depth - 1));
                break;
            default:
                if (!inds.empty()) {
                    c.kind = AstConceptKind::Nominal;
                    c.name = inds[rng() % inds.size()];
                } else {
                    c.kind = AstConceptKind::Top;
                }
                break;
        }
        return c;
    };

    int n_axioms = count(0, 8);
    for (int i = 0; i < n_axioms; ++i) {
        AstAxiom a;
        switch (rng() % 9) {
            case 0:
                a.kind = AstAxiomKind::SubClass;
                a.concepts = {concept_at(3), concept_at(3)};
                break;
            case 1:
                a.kind = AstAxiomKind::Equiv;
                a.concepts = {concept_at(3), concept_at(3)};
                break;
            case 2: {
                if (classes.size() < 2) continue;
                a.kind = AstAxiomKind::Disjoint;
                a.names = {classes[rng() % classes.size()],
                           classes[rng() % classes.size()]};
                while (a.names[0] == a.names[1]) {
                    a.names[1] = classes[rng() % classes.size()];
                }
                break;
            }
            case 3:
                a.kind = AstAxiomKind::SubRole;
                a.roles = {role(), role()};
                break;
            case 4:
                a.kind = rng() % 2 ? AstAxiomKind::Domain : AstAxiomKind::Range;
                a.roles = {role()};
                a.concepts = {concept_at(2)};
                break;
            case 5:
                if (inds.empty()) continue;
                a.kind = AstAxiomKind::Instance;
                a.names = {inds[rng() % inds.size()]};
                a.concepts = {concept_at(3)};
                break;
            case 6:
                if (inds.empty()) continue;
                a.kind = AstAxiomKind::Rel;
                a.names = {inds[rng() % inds.size()], inds[rng() % inds.size()]};
                a.roles = {role()};
                break;
            default: {
                if (inds.empty() || attrs.empty()) continue;
                a.kind = AstAxiomKind::Data;
                size_t attr_idx = rng() % attrs.size();
                a.names = {inds[rng() % inds.size()], attrs[attr_idx]};
                AttrType type = AttrType::Decimal;
                for (const auto& d : m.decls) {
                    if (d.kind == NameKind::Attribute && d.name == attrs[attr_idx]) {
                        type = d.attr_type;
                    }
                }
                if (type == AttrType::String) {
                    a.literal = "text " + std::to_string(rng() % 100);
                    a.literal_is_string = true;
                } else {
                    a.literal = std::to_string(static_cast<int>(rng() % 2000) - 1000);
                    if (rng() % 2) a.literal += "." + std::to_string(rng() % 100);
                    if (rng() % 2) a.unit = "mm";
                }
                break;
            }
        }
        m.axioms.push_back(std::move(a));
    }
    return m;
}

}  // namespace defectont::testing
