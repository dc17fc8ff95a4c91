#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "defectont/model.hpp"
#include "support/helpers.hpp"

using namespace defectont;
using defectont::testing::kb_from_text;

namespace {

const char* kTinyModule = R"(ontology t
class A
class B
class C
role R
individual i
)";

// Random concept trees over the tiny module's signature, depth-bounded.
ConceptId random_concept(const KnowledgeBase& kb, std::mt19937& rng, int depth) {
    const ConceptPool& p = kb.pool();
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 8);
    switch (pick(rng)) {
        case 0: return p.top();
        case 1: return p.bottom();
        case 2: return p.named(rng() % kb.n_classes());
        case 3: return p.nominal(0);
        case 4: return p.negation(random_concept(kb, rng, depth - 1));
        case 5: {
            std::vector<ConceptId> kids;
            size_t n = 2 + rng() % 2;
            for (size_t i = 0; i < n; ++i) {
                kids.push_back(random_concept(kb, rng, depth - 1));
            }
            return p.conjunction(std::move(kids));
        }
        case 6: {
            std::vector<ConceptId> kids;
            size_t n = 2 + rng() % 2;
            for (size_t i = 0; i < n; ++i) {
                kids.push_back(random_concept(kb, rng, depth - 1));
            }
            return p.disjunction(std::move(kids));
        }
        case 7:
            return p.some(Role{0, rng() % 2 == 0}, random_concept(kb, rng, depth - 1));
        default:
            return p.all(Role{0, rng() % 2 == 0}, random_concept(kb, rng, depth - 1));
    }
}

bool in_nnf(const KnowledgeBase& kb, ConceptId c) {
    const ConceptNode& n = kb.pool().node(c);
    if (n.kind == ConceptKind::Not) {
        ConceptKind inner = kb.pool().node(n.kids[0]).kind;
        return inner == ConceptKind::Named || inner == ConceptKind::Nominal;
    }
    for (ConceptId k : n.kids) {
        if (!in_nnf(kb, k)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("nnf pushes negation through De Morgan") {
    KnowledgeBase kb = kb_from_text(kTinyModule);
    const ConceptPool& p = kb.pool();
    ConceptId a = kb.named("A"), b = kb.named("B");
    ConceptId c = p.negation(p.conjunction({a, b}));
    ConceptId expect = p.disjunction({p.negation(a), p.negation(b)});
    CHECK(nnf(kb, c) == expect);
}

TEST_CASE("nnf dualizes quantifiers") {
    KnowledgeBase kb = kb_from_text(kTinyModule);
    const ConceptPool& p = kb.pool();
    Role r = kb.role("R");
    ConceptId c = p.negation(p.some(r, kb.named("C")));
    CHECK(nnf(kb, c) == p.all(r, p.negation(kb.named("C"))));
}

TEST_CASE("nnf is the identity on named classes") {
    KnowledgeBase kb = kb_from_text(kTinyModule);
    ConceptId a = kb.named("A");
    CHECK(nnf(kb, a) == a);
}

TEST_CASE("nnf is idempotent and yields NNF on random trees") {
    KnowledgeBase kb = kb_from_text(kTinyModule);
    std::mt19937 rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        ConceptId c = random_concept(kb, rng, 6);
        ConceptId once = nnf(kb, c);
        CHECK(in_nnf(kb, once));
        CHECK(nnf(kb, once) == once);
    }
}

TEST_CASE("toGCIs splits equivalences") {
    KnowledgeBase kb = kb_from_text(R"(ontology t
class A
class B
equiv A B
)");
    KnowledgeBase g = to_gcis(kb);
    REQUIRE(g.axioms().size() == 2);
    CHECK(g.axioms()[0].kind == AxiomKind::SubClassOf);
    CHECK(render_axiom(g, g.axioms()[0]) == "subclass A B");
    CHECK(render_axiom(g, g.axioms()[1]) == "subclass B A");
}

TEST_CASE("toGCIs expands disjointness pairwise") {
    KnowledgeBase kb = kb_from_text(R"(ontology t
class X
class Y
class Z
disjoint X Y Z
)");
    KnowledgeBase g = to_gcis(kb);
    REQUIRE(g.axioms().size() == 3);
    CHECK(render_axiom(g, g.axioms()[0]) == "subclass (and X Y) bot");
    CHECK(render_axiom(g, g.axioms()[1]) == "subclass (and X Z) bot");
    CHECK(render_axiom(g, g.axioms()[2]) == "subclass (and Y Z) bot");
}

TEST_CASE("toGCIs rewrites domain, range and symmetric roles") {
    KnowledgeBase kb = kb_from_text(R"(ontology t
class Defect
role affects
role sfOverlaps symmetric
domain affects Defect
range affects Defect
)");
    KnowledgeBase g = to_gcis(kb);
    REQUIRE(g.axioms().size() == 3);
    CHECK(g.axioms()[0].kind == AxiomKind::InverseRoles);
    CHECK(g.axioms()[0].role1.name == g.axioms()[0].role2.name);
    CHECK(render_axiom(g, g.axioms()[1]) == "subclass (some affects top) Defect");
    CHECK(render_axiom(g, g.axioms()[2]) == "subclass top (all affects Defect)");
}

TEST_CASE("signatureOf partitions declared names") {
    KnowledgeBase empty = kb_from_text("ontology empty\n");
    CHECK(signature_of(empty).empty());

    KnowledgeBase one = kb_from_text("ontology one\nclass Defect\n");
    Signature s = signature_of(one);
    CHECK(s.classes == std::set<std::string>{"Defect"});
    CHECK(s.roles.empty());
    CHECK(s.individuals.empty());
}

TEST_CASE("and/or children compare as multisets") {
    KnowledgeBase kb = kb_from_text(kTinyModule);
    const ConceptPool& p = kb.pool();
    ConceptId ab = p.conjunction({kb.named("A"), kb.named("B")});
    ConceptId ba = p.conjunction({kb.named("B"), kb.named("A")});
    CHECK(ab != ba);  // source order is preserved
    CHECK(structurally_equal(kb, ab, ba));
    ConceptId ac = p.conjunction({kb.named("A"), kb.named("C")});
    CHECK(!structurally_equal(kb, ab, ac));
    CHECK(!structurally_equal(kb, ab, p.disjunction({kb.named("A"), kb.named("B")})));
}

TEST_CASE("construction rejects ill-formed values") {
    KnowledgeBase kb = kb_from_text(kTinyModule);
    CHECK_THROWS_AS(kb.pool().conjunction({kb.named("A")}), DloError);
    CHECK_THROWS_AS((void)kb.named("NoSuch"), DloError);
    CHECK_THROWS_AS((void)kb.role("A"), DloError);  // declared, but as a class

    KnowledgeBase dup;
    dup.declare_class("x");
    CHECK_THROWS_AS(dup.declare_role("x"), DloError);
    CHECK(dup.declare_class("x") == 0);  // same kind merges silently
}

TEST_CASE("string attributes hold strings only") {
    KnowledgeBase kb;
    kb.declare_individual("d");
    kb.declare_attribute("note", AttrType::String);
    kb.declare_attribute("len", AttrType::Decimal);
    CHECK_THROWS_AS(
        kb.add_axiom(Axiom::data_assertion(0, 0, Decimal::parse("1"), "mm")),
        DloError);
    CHECK_THROWS_AS(kb.add_axiom(Axiom::string_assertion(0, 1, "text")), DloError);
    kb.add_axiom(Axiom::string_assertion(0, 0, "found by ct scan"));
    kb.add_axiom(Axiom::data_assertion(0, 1, Decimal::parse("1.5"), "m"));
    CHECK(kb.axioms().size() == 2);
}
