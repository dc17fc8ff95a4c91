#pragma once

#include <map>
#include <string>
#include <vector>

#include "defectont/model.hpp"

namespace defectont {

// Transitively reduced subsumption DAG over named classes. Mutually
// subsuming classes share a node; the top and bottom nodes are always
// present (possibly with no named members).
struct Taxonomy {
    struct Node {
        std::vector<std::string> members;  // sorted class names
        std::vector<uint32_t> direct_subs, direct_supers;
    };

    std::vector<Node> nodes;
    uint32_t top_node = 0, bottom_node = 0;
    std::map<std::string, uint32_t> node_of;

    bool same_node(const std::string& a, const std::string& b) const;
    // Entailed subsumption a <= b, read off the DAG (reflexive).
    bool subsumed(const std::string& sub, const std::string& super) const;
    // All named classes strictly or equivalently above cls, excluding cls.
    std::vector<std::string> ancestors_of(const std::string& cls) const;
    std::vector<std::string> unsatisfiable_classes() const;

    std::string render_text() const;
    std::string render_dot() const;
};

// Builds the taxonomy from per-class satisfiability and the full pairwise
// subsumption matrix (subsumes[i][j] == true iff class i is subsumed by j).
Taxonomy build_taxonomy(const std::vector<std::string>& names,
                        const std::vector<bool>& satisfiable,
                        const std::vector<std::vector<bool>>& subsumes,
                        const std::vector<bool>& equals_top);

}  // namespace defectont
