#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "support/helpers.hpp"

using namespace defectont;
using defectont::testing::kb_from_text;

namespace {

ModuleLoader map_loader(std::map<std::string, std::string> texts) {
    return [texts = std::move(texts)](const std::string& name)
               -> std::optional<SourceModule> {
        auto it = texts.find(name);
        if (it == texts.end()) return std::nullopt;
        return parse_module(it->second, name + ".dlo");
    };
}

std::multiset<std::string> axiom_texts(const KnowledgeBase& kb) {
    std::multiset<std::string> out;
    for (const Axiom& a : kb.axioms()) out.insert(render_axiom(kb, a));
    return out;
}

}  // namespace

TEST_CASE("a root with zero imports is that module alone") {
    KnowledgeBase kb = kb_from_text("ontology solo\nclass A\nsubclass A top\n");
    CHECK(kb.n_classes() == 1);
    CHECK(kb.axioms().size() == 1);
    CHECK(kb.module_name(kb.axioms()[0].origin) == "solo");
}

TEST_CASE("diamond imports load each module once") {
    auto loader = map_loader({
        {"root", "ontology root\nimport left\nimport right\nclass R\n"},
        {"left", "ontology left\nimport base\nclass L\nsubclass L B\n"},
        {"right", "ontology right\nimport base\nclass Rt\nsubclass Rt B\n"},
        {"base", "ontology base\nclass B\n"},
    });
    KnowledgeBase kb = resolve_imports("root", loader);
    CHECK(kb.n_modules() == 4);
    CHECK(kb.n_classes() == 4);  // B once, not twice
    CHECK(kb.axioms().size() == 2);
}

TEST_CASE("axioms are tagged with their module of origin") {
    auto loader = map_loader({
        {"root", "ontology root\nimport base\nsubclass B top\n"},
        {"base", "ontology base\nclass B\nsubclass B B\n"},
    });
    KnowledgeBase kb = resolve_imports("root", loader);
    REQUIRE(kb.axioms().size() == 2);
    CHECK(kb.module_name(kb.axioms()[0].origin) == "base");
    CHECK(kb.module_name(kb.axioms()[1].origin) == "root");
}

TEST_CASE("import cycles are reported with the cycle path") {
    auto loader = map_loader({
        {"a", "ontology a\nimport b\n"},
        {"b", "ontology b\nimport a\n"},
    });
    try {
        resolve_imports("a", loader);
        FAIL("expected an import cycle error");
    } catch (const DloError& e) {
        CHECK(e.category() == ErrorCategory::Import);
        CHECK(std::string(e.what()).find("a -> b -> a") != std::string::npos);
    }
}

TEST_CASE("missing imports name the importer") {
    auto loader = map_loader({{"a", "ontology a\nimport ghost\n"}});
    try {
        resolve_imports("a", loader);
        FAIL("expected a missing module error");
    } catch (const DloError& e) {
        CHECK(e.category() == ErrorCategory::Import);
        CHECK(std::string(e.what()).find("ghost") != std::string::npos);
        CHECK(std::string(e.what()).find("'a'") != std::string::npos);
    }
}

TEST_CASE("kind clashes across modules are errors") {
    auto loader = map_loader({
        {"a", "ontology a\nimport b\nclass X\n"},
        {"b", "ontology b\nrole X\n"},
    });
    CHECK_THROWS_AS(resolve_imports("a", loader), DloError);
}

TEST_CASE("undeclared names in axioms fail at link time") {
    CHECK_THROWS_AS(kb_from_text("ontology m\nclass A\nsubclass A Ghost\n"), DloError);
    CHECK_THROWS_AS(kb_from_text("ontology m\nclass A\nsubclass A (some r A)\n"),
                    DloError);
    CHECK_THROWS_AS(kb_from_text("ontology m\nclass A\ninstance d A\n"), DloError);
}

TEST_CASE("resolveImports is order independent up to axiom order") {
    std::map<std::string, std::string> files = {
        {"root", "ontology root\nimport m1\nimport m2\nimport m3\n"},
        {"m1", "ontology m1\nclass A\nsubclass A top\n"},
        {"m2", "ontology m2\nimport m3\nclass B\nsubclass B C\n"},
        {"m3", "ontology m3\nclass C\n"},
    };
    KnowledgeBase base = resolve_imports("root", map_loader(files));
    std::map<std::string, std::string> permuted = files;
    permuted["root"] = "ontology root\nimport m3\nimport m2\nimport m1\n";
    KnowledgeBase other = resolve_imports("root", map_loader(permuted));
    CHECK(signature_of(base) == signature_of(other));
    CHECK(axiom_texts(base) == axiom_texts(other));
}

TEST_CASE("inverse assertions normalize to the named direction") {
    KnowledgeBase kb = kb_from_text(
        "ontology m\nrole r\nindividual a\nindividual b\nrel a (inv r) b\n");
    REQUIRE(kb.axioms().size() == 1);
    CHECK(render_axiom(kb, kb.axioms()[0]) == "rel b r a");
}

static const char* kPruneModule = R"(ontology p
class A
class B
class C
class D
role r
individual i
subclass A (some r B)
subclass B C
subclass D D
instance i A
)";

TEST_CASE("pruning to the full signature keeps the KB unchanged") {
    KnowledgeBase kb = kb_from_text(kPruneModule);
    KnowledgeBase pruned = prune_to_signature(kb, signature_of(kb));
    CHECK(signature_of(pruned) == signature_of(kb));
    CHECK(axiom_texts(pruned) == axiom_texts(kb));
}

TEST_CASE("pruning to the empty seed yields the empty KB") {
    KnowledgeBase kb = kb_from_text(kPruneModule);
    KnowledgeBase pruned = prune_to_signature(kb, Signature{});
    CHECK(signature_of(pruned).empty());
    CHECK(pruned.axioms().empty());
}

TEST_CASE("pruning keeps the reachability closure only") {
    KnowledgeBase kb = kb_from_text(kPruneModule);
    Signature seed;
    seed.classes = {"A"};
    KnowledgeBase pruned = prune_to_signature(kb, seed);
    Signature s = signature_of(pruned);
    CHECK(s.classes == std::set<std::string>{"A", "B", "C"});
    CHECK(s.roles == std::set<std::string>{"r"});
    CHECK(s.individuals == std::set<std::string>{"i"});  // via `instance i A`
    CHECK(pruned.axioms().size() == 3);                  // D's axiom dropped

    Signature missing;
    missing.classes = {"Nope"};
    CHECK_THROWS_AS(prune_to_signature(kb, missing), DloError);
}

TEST_CASE("pruning is monotone in the seed and idempotent") {
    KnowledgeBase kb = kb_from_text(kPruneModule);
    std::mt19937 rng(555);
    std::vector<std::string> all = {"A", "B", "C", "D"};
    for (int trial = 0; trial < 50; ++trial) {
        Signature small, big;
        for (const auto& c : all) {
            bool in_small = rng() % 2 == 0;
            bool in_big = in_small || rng() % 2 == 0;
            if (in_small) small.classes.insert(c);
            if (in_big) big.classes.insert(c);
        }
        KnowledgeBase ps = prune_to_signature(kb, small);
        KnowledgeBase pb = prune_to_signature(kb, big);
        auto ts = axiom_texts(ps), tb = axiom_texts(pb);
        CHECK(std::includes(tb.begin(), tb.end(), ts.begin(), ts.end()));
        KnowledgeBase again = prune_to_signature(ps, small);
        CHECK(axiom_texts(again) == ts);
        CHECK(signature_of(again) == signature_of(ps));
    }
}

static const char* kRenameModule = R"(ontology n
class Geometry_entity
class Ball
role influencedBy
subclass Ball Geometry_entity
domain influencedBy Geometry_entity
)";

TEST_CASE("normalizeNames renames every occurrence") {
    KnowledgeBase kb = kb_from_text(kRenameModule);
    KnowledgeBase out = normalize_names(kb, {{"influencedBy", "isInfluencedBy"},
                                             {"Geometry_entity", "GeometricEntity"}});
    Signature s = signature_of(out);
    CHECK(s.classes == std::set<std::string>{"Ball", "GeometricEntity"});
    CHECK(s.roles == std::set<std::string>{"isInfluencedBy"});
    CHECK(axiom_texts(out) ==
          std::multiset<std::string>{"subclass Ball GeometricEntity",
                                     "domain isInfluencedBy GeometricEntity"});
}

TEST_CASE("normalizeNames rejects collisions and unknown names") {
    KnowledgeBase kb = kb_from_text(kRenameModule);
    CHECK_THROWS_AS(normalize_names(kb, {{"Ghost", "X"}}), DloError);
    CHECK_THROWS_AS(normalize_names(kb, {{"Ball", "Geometry_entity"}}), DloError);
    CHECK_THROWS_AS(normalize_names(
                        kb, {{"Ball", "Same"}, {"Geometry_entity", "Same"}}),
                    DloError);
    CHECK_THROWS_AS(normalize_names(kb, {{"Ball", "not"}}), DloError);
    // Swaps are renames of related names, hence legal.
    KnowledgeBase swapped =
        normalize_names(kb, {{"Ball", "Geometry_entity"}, {"Geometry_entity", "Ball"}});
    CHECK(signature_of(swapped).classes ==
          std::set<std::string>{"Ball", "Geometry_entity"});
}

TEST_CASE("normalizeNames composed with its inverse is the identity") {
    KnowledgeBase kb = kb_from_text(kRenameModule);
    RenamePairs fwd = {{"influencedBy", "isInfluencedBy"},
                       {"Geometry_entity", "GeometricEntity"}};
    RenamePairs bwd = {{"isInfluencedBy", "influencedBy"},
                       {"GeometricEntity", "Geometry_entity"}};
    KnowledgeBase out = normalize_names(normalize_names(kb, fwd), bwd);
    CHECK(signature_of(out) == signature_of(kb));
    CHECK(axiom_texts(out) == axiom_texts(kb));
    KnowledgeBase id = normalize_names(kb, {});
    CHECK(axiom_texts(id) == axiom_texts(kb));
}

TEST_CASE("bridgeEquivalences appends tagged equivalences") {
    KnowledgeBase kb = kb_from_text(
        "ontology m\nclass PhysicalObject\nclass SpatialObject\nrole r\n");
    KnowledgeBase out =
        bridge_equivalences(kb, {{"PhysicalObject", "SpatialObject"}});
    REQUIRE(out.axioms().size() == 1);
    CHECK(render_axiom(out, out.axioms()[0]) ==
          "equiv PhysicalObject SpatialObject");
    CHECK(out.module_name(out.axioms()[0].origin) == "bridge");

    CHECK(bridge_equivalences(kb, {}).axioms().empty());
    CHECK_THROWS_AS(bridge_equivalences(kb, {{"PhysicalObject", "Ghost"}}), DloError);
    CHECK_THROWS_AS(bridge_equivalences(kb, {{"PhysicalObject", "r"}}), DloError);
}

TEST_CASE("a KB flattens to a single serializable module") {
    KnowledgeBase kb = kb_from_text(R"(ontology m
class A
role r inverse s
role q symmetric
individual i
attr len : decimal
subclass A (some r A)
rel i q i
data i len 0.05 mm
)");
    SourceModule m = to_source_module(kb, "merged");
    KnowledgeBase back = link_single_module(m);
    CHECK(signature_of(back) == signature_of(kb));
    CHECK(axiom_texts(back) == axiom_texts(kb));
}
