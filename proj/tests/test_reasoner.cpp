#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "defectont/reasoner.hpp"
#include "support/helpers.hpp"

using namespace defectont;
using defectont::testing::kb_from_text;

namespace {

ConceptId concept_of(const KnowledgeBase& kb, const char* text) {
    return resolve_concept(kb, parse_concept_text(text));
}

bool entails(const Reasoner& r, const char* c, const char* d) {
    return r.entails_subsumption(concept_of(r.kb(), c), concept_of(r.kb(), d));
}

}  // namespace

TEST_CASE("the empty KB is consistent") {
    Reasoner r(kb_from_text("ontology t\n"));
    CHECK(r.is_consistent());
}

TEST_CASE("an instance of an unsatisfiable class forces a clash") {
    Reasoner r(kb_from_text("ontology t\nclass A\nindividual d\nsubclass A bot\ninstance d A\n"));
    CHECK(!r.is_consistent());
}

TEST_CASE("basic satisfiability") {
    Reasoner r(kb_from_text("ontology t\nclass A\nrole R\n"));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "top")));
    CHECK(!r.is_satisfiable(concept_of(r.kb(), "bot")));
    CHECK(!r.is_satisfiable(concept_of(r.kb(), "(and A (not A))")));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "(or A (not A))")));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "(and (some R A) (all R A))")));
    CHECK(!r.is_satisfiable(concept_of(r.kb(), "(and (some R A) (all R (not A)))")));
}

TEST_CASE("subsumption is reflexive and follows told chains") {
    Reasoner r(kb_from_text("ontology t\nclass A\nclass B\nclass C\nsubclass A B\nsubclass B C\n"));
    CHECK(entails(r, "A", "A"));
    CHECK(entails(r, "A", "B"));
    CHECK(entails(r, "A", "C"));
    CHECK(!entails(r, "C", "A"));
    CHECK(!entails(r, "B", "A"));
}

TEST_CASE("equivalences give mutual subsumption") {
    Reasoner r(kb_from_text("ontology t\nclass A\nclass B\nrole R\nequiv A (some R B)\n"));
    CHECK(entails(r, "A", "(some R B)"));
    CHECK(entails(r, "(some R B)", "A"));
}

TEST_CASE("disjointness makes the conjunction unsatisfiable") {
    Reasoner r(kb_from_text("ontology t\nclass X\nclass Y\nclass Z\ndisjoint X Y Z\n"));
    CHECK(!r.is_satisfiable(concept_of(r.kb(), "(and X Y)")));
    CHECK(!r.is_satisfiable(concept_of(r.kb(), "(and Y Z)")));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "X")));
}

TEST_CASE("domain and range constraints propagate") {
    Reasoner r(kb_from_text(R"(ontology t
class D
class P
role affects
domain affects D
range affects P
individual a
individual b
rel a affects b
)"));
    CHECK(r.is_consistent());
    CHECK(r.entails_instance("a", concept_of(r.kb(), "D")));
    CHECK(r.entails_instance("b", concept_of(r.kb(), "P")));
    CHECK(!r.entails_instance("b", concept_of(r.kb(), "D")));
    CHECK(entails(r, "(some affects top)", "D"));
    // Domain of the inverse is the range.
    CHECK(entails(r, "(some (inv affects) top)", "P"));
}

TEST_CASE("inverse roles propagate universal restrictions backwards") {
    Reasoner r(kb_from_text(R"(ontology t
class C
role R inverse S
individual a
individual b
rel a R b
instance b (all S C)
)"));
    // S = R-, so S(b, a) holds and a must be a C.
    CHECK(r.entails_instance("a", concept_of(r.kb(), "C")));
    CHECK(!r.entails_instance("b", concept_of(r.kb(), "C")));
    CHECK(r.entails_instance("b", concept_of(r.kb(), "(some S (one a))")));
}

TEST_CASE("symmetric roles work in both directions") {
    Reasoner r(kb_from_text(R"(ontology t
class C
role touches symmetric
individual a
individual b
rel a touches b
)"));
    CHECK(r.entails_instance("b", concept_of(r.kb(), "(some touches (one a))")));
    CHECK(r.entails_instance("a", concept_of(r.kb(), "(some touches (one b))")));
}

TEST_CASE("subroles inherit assertions upward only") {
    Reasoner r(kb_from_text(R"(ontology t
class C
role child
role parent
subrole child parent
individual a
individual b
rel a child b
instance a (all parent C)
)"));
    CHECK(r.entails_instance("b", concept_of(r.kb(), "C")));
    CHECK(r.entails_instance("a", concept_of(r.kb(), "(some parent (one b))")));
    CHECK(!r.entails_instance("a", concept_of(r.kb(), "(some child (one a))")));
}

TEST_CASE("asserted nominal fillers are entailed as role successors") {
    Reasoner r(kb_from_text(R"(ontology t
role hasMaterialState
individual m
individual solidState
rel m hasMaterialState solidState
)"));
    CHECK(r.entails_instance(
        "m", concept_of(r.kb(), "(some hasMaterialState (one solidState))")));
    CHECK(!r.entails_instance(
        "solidState", concept_of(r.kb(), "(some hasMaterialState (one m))")));
}

TEST_CASE("nominal fillers force a merge with the named root") {
    Reasoner r(kb_from_text(R"(ontology t
class Marked
role R
individual a
individual b
instance a (some R (one b))
instance a (all R Marked)
)"));
    CHECK(r.is_consistent());
    CHECK(r.entails_instance("b", concept_of(r.kb(), "Marked")));
}

TEST_CASE("merging distinct individuals is consistent without UNA") {
    Reasoner r(kb_from_text(R"(ontology t
class A
class B
individual a
individual b
instance a (one b)
instance a A
instance b B
)"));
    CHECK(r.is_consistent());
    CHECK(r.entails_instance("b", concept_of(r.kb(), "(and A B)")));
}

TEST_CASE("an existential cycle terminates via pairwise blocking") {
    Reasoner r(kb_from_text("ontology t\nclass A\nrole R\nsubclass A (some R A)\n"));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "A")));
    SatResult res =
        run_tableau(prepare(r.kb()), {},
                    {r.canon_pool().import(r.kb(), concept_of(r.kb(), "A"), false)},
                    true);
    REQUIRE(res.consistent);
    bool any_blocked = false;
    for (const auto& n : res.graph->nodes) {
        if (n.blocked_by >= 0) any_blocked = true;
    }
    CHECK(any_blocked);
}

TEST_CASE("existential cycles through inverse obligations terminate") {
    Reasoner r(kb_from_text(R"(ontology t
class A
class B
role R
subclass A (some R A)
subclass A (all (inv R) B)
subclass B (some R A)
)"));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "A")));
}

TEST_CASE("a cyclic universal definition is no obstacle") {
    Reasoner r(kb_from_text(R"(ontology t
class Void
class Phys
role hasPart
equiv Void (and Phys (all hasPart Void))
)"));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "Void")));
    CHECK(entails(r, "Void", "Phys"));
    CHECK(!entails(r, "Phys", "Void"));
    // A Phys whose parts are all Void is itself Void.
    CHECK(entails(r, "(and Phys (all hasPart Void))", "Void"));
}

TEST_CASE("backjumping survives deeply disjunctive KBs") {
    // Each GCI adds a binary choice per node; the clash is independent of
    // most of them, which chronological backtracking would retry forever.
    std::string text = "ontology t\nclass A\nclass B\nrole R\n";
    for (int i = 0; i < 12; ++i) {
        std::string c = "C" + std::to_string(i);
        text += "class " + c + "\n";
    }
    for (int i = 0; i < 12; ++i) {
        std::string c = "C" + std::to_string(i);
        text += "subclass top (or " + c + " (not " + c + "))\n";
    }
    text += "subclass A (some R B)\nsubclass B bot\n";
    Reasoner r(kb_from_text(text));
    CHECK(!r.is_satisfiable(concept_of(r.kb(), "A")));
    CHECK(r.is_satisfiable(concept_of(r.kb(), "(not A)")));
}

TEST_CASE("classification groups equivalent classes") {
    Reasoner r(kb_from_text("ontology t\nclass A\nclass B\nequiv A B\n"));
    const Taxonomy& tax = r.classify();
    CHECK(tax.same_node("A", "B"));
    CHECK(tax.subsumed("A", "B"));
    CHECK(tax.subsumed("B", "A"));
}

TEST_CASE("classification places told subclasses under their parents") {
    Reasoner r(kb_from_text("ontology t\nclass A\nclass B\nsubclass A B\n"));
    const Taxonomy& tax = r.classify();
    CHECK(tax.subsumed("A", "B"));
    CHECK(!tax.subsumed("B", "A"));
    uint32_t a = tax.node_of.at("A"), b = tax.node_of.at("B");
    REQUIRE(tax.nodes[b].direct_subs.size() == 1);
    CHECK(tax.nodes[b].direct_subs[0] == a);
    CHECK(tax.nodes[tax.top_node].direct_subs ==
          std::vector<uint32_t>{b});
    CHECK(tax.render_text() == "top\n  B\n    A\n");
}

TEST_CASE("unsatisfiable classes land in the bottom node") {
    Reasoner r(kb_from_text(
        "ontology t\nclass A\nclass B\nclass C\ndisjoint A B\nsubclass C (and A B)\n"));
    const Taxonomy& tax = r.classify();
    CHECK(tax.unsatisfiable_classes() == std::vector<std::string>{"C"});
    CHECK(tax.subsumed("C", "A"));
    CHECK(tax.render_text().find("unsatisfiable: C") != std::string::npos);
}

TEST_CASE("classification requires a consistent KB") {
    Reasoner r(kb_from_text("ontology t\nclass A\nindividual d\nsubclass A bot\ninstance d A\n"));
    CHECK_THROWS_AS(r.classify(), DloError);
    CHECK_THROWS_AS(r.realize(0), DloError);
}

TEST_CASE("realization returns the most specific classes") {
    Reasoner r(kb_from_text(R"(ontology t
class A
class B
class C
individual d
individual e
subclass A B
subclass B C
instance d A
)"));
    CHECK(r.realize(r.kb().require_individual("d")) ==
          std::vector<std::string>{"A"});
    CHECK(r.realize(r.kb().require_individual("e")).empty());
}

TEST_CASE("realization is driven by entailment not assertion") {
    Reasoner r(kb_from_text(R"(ontology t
class Parent
class HasR
role R
individual x
individual y
equiv HasR (some R top)
subclass HasR Parent
rel x R y
)"));
    CHECK(r.realize(r.kb().require_individual("x")) ==
          std::vector<std::string>{"HasR"});
}

TEST_CASE("a consistency graph is available and clash free") {
    Reasoner r(kb_from_text(R"(ontology t
class A
role R
individual a
individual b
rel a R b
instance a A
subclass A (some R A)
)"));
    CompletionGraph g = r.consistency_graph();
    CHECK(!g.clash);
    CHECK(g.individual_node.size() == 2);
    // Pairwise blocking invariant: any directly blocked node repeats its
    // blocker's labels exactly.
    for (const auto& n : g.nodes) {
        if (n.blocked_by >= 0) {
            const auto& w = g.nodes[static_cast<size_t>(n.blocked_by)];
            CHECK(n.labels.size() == w.labels.size());
        }
    }
}

TEST_CASE("duality of subsumption and satisfiability holds on samples") {
    Reasoner r(kb_from_text(R"(ontology t
class A
class B
role R
subclass A (some R B)
)"));
    const KnowledgeBase& kb = r.kb();
    const char* concepts[] = {"A", "B", "(some R B)", "(not A)", "(and A B)",
                              "(or A (not B))", "(all R bot)", "top", "bot"};
    for (const char* c : concepts) {
        for (const char* d : concepts) {
            ConceptId ci = concept_of(kb, c), di = concept_of(kb, d);
            ConceptId test = kb.pool().conjunction({ci, nnf_negated(kb, di)});
            CHECK(r.entails_subsumption(ci, di) == !r.is_satisfiable(test));
        }
    }
}
