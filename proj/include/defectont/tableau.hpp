#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "defectont/model.hpp"

namespace defectont {

// Canonical NNF concept pool used by the tableau. Unlike the KB pool it
// flattens and sorts and/or children, absorbs top/bottom, and keeps a
// precomputed NNF complement per concept, so rule application and clash
// detection work on ids only. Inputs must already be in NNF.
//
// Mutation (interning) is serialized by an internal mutex; node() and
// complement_cached() are lock-free for ids interned before the reader
// started, so satisfiability checks may run concurrently with query
// compilation. Storage is chunked so existing slots never move.
class CanonPool {
  public:
    CanonPool();
    CanonPool(CanonPool&& o) noexcept;
    CanonPool& operator=(CanonPool&&) = delete;
    CanonPool(const CanonPool&) = delete;

    ConceptId top() const { return 0; }
    ConceptId bottom() const { return 1; }

    ConceptId named(uint32_t cls) const;
    ConceptId nominal(uint32_t ind) const;
    ConceptId negated_atom(ConceptId atom) const;
    ConceptId conjunction(std::vector<ConceptId> kids) const;
    ConceptId disjunction(std::vector<ConceptId> kids) const;
    ConceptId some(Role r, ConceptId filler) const;
    ConceptId all(Role r, ConceptId filler) const;

    // Translates a KB-pool concept; `negated` builds the complement. The
    // result is canonical NNF.
    ConceptId import(const KnowledgeBase& kb, ConceptId c, bool negated) const;

    // Computes (and memoizes) the canonical NNF complement.
    ConceptId complement(ConceptId c) const;

    // Lock-free: the memoized complement, or kNoConcept when it was never
    // built. A missing complement cannot occur in any label.
    ConceptId complement_cached(ConceptId id) const {
        return slot(id).comp.load(std::memory_order_acquire);
    }

    const ConceptNode& node(ConceptId id) const { return slot(id).node; }
    size_t size() const { return size_.load(std::memory_order_acquire); }

    std::string describe(const KnowledgeBase& kb, ConceptId c) const;

  private:
    static constexpr size_t kChunk = 512;
    static constexpr size_t kMaxChunks = 1 << 15;

    struct Slot {
        ConceptNode node;
        std::atomic<ConceptId> comp{kNoConcept};
    };

    Slot& slot(ConceptId id) const { return chunks_[id / kChunk][id % kChunk]; }

    ConceptId intern_unlocked(ConceptNode n) const;
    ConceptId negated_atom_unlocked(ConceptId atom) const;
    ConceptId conjunction_unlocked(std::vector<ConceptId> kids) const;
    ConceptId disjunction_unlocked(std::vector<ConceptId> kids) const;
    ConceptId import_unlocked(const KnowledgeBase& kb, ConceptId c, bool negated) const;
    ConceptId complement_unlocked(ConceptId c) const;

    mutable std::mutex mu_;
    mutable std::vector<std::unique_ptr<Slot[]>> chunks_;
    mutable std::atomic<size_t> size_{0};
    mutable std::unordered_map<std::string, ConceptId> index_;
};

// Directed role id: 2 * role + (inverse ? 1 : 0).
using DirRole = uint32_t;
inline DirRole dir_of(Role r) { return 2 * r.name + (r.inverse ? 1 : 0); }
inline DirRole flip(DirRole q) { return q ^ 1u; }
inline uint32_t role_of(DirRole q) { return q / 2; }

// Everything the tableau needs, computed once per knowledge base: canonical
// universal labels for the internalized GCIs, the reflexive-transitive role
// closure over directed roles, native domain/range tables, and the ABox.
struct PreparedKB {
    const KnowledgeBase* kb = nullptr;
    CanonPool pool;

    std::vector<ConceptId> universals;  // added to every node's label

    uint32_t n_dir_roles = 0;
    std::vector<std::vector<uint64_t>> super_bits;  // DirRole -> closure bitset
    std::vector<std::vector<ConceptId>> domain_of;  // role -> concepts for sources
    std::vector<std::vector<ConceptId>> range_of;   // role -> concepts for targets

    struct AboxLabel {
        uint32_t ind;
        ConceptId c;
    };
    struct AboxEdge {
        uint32_t from, to;
        DirRole role;
    };
    std::vector<AboxLabel> abox_labels;
    std::vector<AboxEdge> abox_edges;
    std::vector<ConceptId> nominal_of;  // individual -> canonical Nominal id

    bool trivially_inconsistent = false;  // some GCI internalized to bottom
};

PreparedKB prepare(const KnowledgeBase& kb);

// Final tableau state exposed for tests and the model-extraction oracle.
struct CompletionGraph {
    struct Node {
        std::vector<ConceptId> labels;
        std::vector<std::vector<uint32_t>> label_deps;  // branch points per label
        bool root = false;
        int individual = -1;           // >= 0 when this is the root of a named individual
        uint32_t parent = UINT32_MAX;  // tree predecessor
        bool merged = false;
        uint32_t merged_into = UINT32_MAX;
        int64_t blocked_by = -1;  // directly blocking witness, -1 if none
        bool indirectly_blocked = false;
    };
    struct Edge {
        uint32_t from, to;
        std::vector<DirRole> roles;  // closure of the edge label
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<uint32_t> individual_node;  // individual -> (possibly merged) node
    bool clash = false;
};

struct SatResult {
    bool consistent = false;
    std::optional<CompletionGraph> graph;  // present when consistent and requested
};

// One satisfiability test over a prepared KB. `extra_labels` are added to the
// given individuals' roots; `fresh_labels`, when nonempty, seed one fresh
// anonymous root. All concept ids must already live in prep.pool.
SatResult run_tableau(const PreparedKB& prep,
                      const std::vector<std::pair<uint32_t, ConceptId>>& extra_labels,
                      const std::vector<ConceptId>& fresh_labels, bool want_graph);

}  // namespace defectont
