#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "defectont/ast.hpp"
#include "defectont/model.hpp"

namespace defectont {

// Supplies modules by name; nullopt means "no such module".
using ModuleLoader = std::function<std::optional<SourceModule>(const std::string&)>;

// Loads `<dir>/<name>.dlo`; nullopt when the file does not exist.
ModuleLoader directory_loader(std::string dir);

// Depth-first union of the root module and everything it transitively
// imports. Diamonds load once (keyed by module name); duplicate declarations
// of the same kind merge silently; each axiom is tagged with its module of
// origin. Reports missing modules, import cycles, and kind clashes.
KnowledgeBase resolve_imports(const std::string& root_name, const ModuleLoader& loader);

// Convenience for a module with no imports.
KnowledgeBase link_single_module(const SourceModule& m);

// Parses the file at `path` and resolves its imports against sibling files.
KnowledgeBase load_knowledge_base(const std::string& path);

// Keeps exactly the axioms in the reachability fixpoint of `seed`: start from
// the seed names, keep any axiom mentioning a kept name, add every name a
// kept axiom mentions, repeat. Declarations are restricted to kept names.
KnowledgeBase prune_to_signature(const KnowledgeBase& kb, const Signature& seed);

using RenamePairs = std::vector<std::pair<std::string, std::string>>;

// Renames every occurrence, kind-preserving. A new name that collides with a
// name not itself renamed away is an error, as are duplicate targets.
KnowledgeBase normalize_names(const KnowledgeBase& kb, const RenamePairs& renames);

// Appends EquivalentClasses(a, b) per pair, tagged origin "bridge".
KnowledgeBase bridge_equivalences(const KnowledgeBase& kb, const RenamePairs& pairs);

// AST resolution against a KB's declarations; undeclared names are errors
// carrying the item's source position.
Role resolve_role(const KnowledgeBase& kb, const AstRole& r,
                  const std::string& file = {});
ConceptId resolve_concept(const KnowledgeBase& kb, const AstConcept& c,
                          const std::string& file = {});
// Inverse role assertions are normalized: `rel a (inv R) b` becomes R(b, a).
Axiom resolve_axiom(const KnowledgeBase& kb, const AstAxiom& a,
                    const std::string& file = {});

// Flattens a KB back into one import-free module. Inverse/symmetric role
// axioms are folded into the role declarations.
SourceModule to_source_module(const KnowledgeBase& kb, const std::string& name);

// Two-column tab-separated file (comments with '#', blank lines ignored).
RenamePairs load_pairs_tsv(const std::string& path);

// One name per line; kinds are inferred from the KB's declarations.
Signature load_signature_file(const KnowledgeBase& kb, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace defectont
