#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string_view>

#include "defectont/model.hpp"
#include "defectont/tableau.hpp"
#include "defectont/taxonomy.hpp"

namespace defectont {

// Decision procedures over one knowledge base: consistency, concept
// satisfiability, subsumption and instance entailment, classification and
// realization. The KB is copied in and never changes afterwards; all query
// methods are const and safe to call from several threads.
class Reasoner {
  public:
    explicit Reasoner(KnowledgeBase kb);
    Reasoner(const Reasoner&) = delete;
    Reasoner& operator=(const Reasoner&) = delete;

    const KnowledgeBase& kb() const { return kb_; }

    bool is_consistent() const;

    // Concept arguments are ids in kb().pool().
    bool is_satisfiable(ConceptId c) const;
    bool entails_subsumption(ConceptId c, ConceptId d) const;
    bool entails_instance(uint32_t individual, ConceptId c) const;
    bool entails_instance(std::string_view individual, ConceptId c) const;

    // Requires a consistent KB; throws Reasoning otherwise.
    const Taxonomy& classify() const;

    // Most specific named classes of the individual (none subsumed by
    // another returned class). Requires a consistent KB.
    std::vector<std::string> realize(uint32_t individual) const;

    // The completion graph witnessing consistency; throws if inconsistent.
    CompletionGraph consistency_graph() const;

    const CanonPool& canon_pool() const { return prep_.pool; }

  private:
    bool run_sat(const std::vector<std::pair<uint32_t, ConceptId>>& extra,
                 const std::vector<ConceptId>& fresh) const;
    void require_consistent() const;

    KnowledgeBase kb_;
    PreparedKB prep_;
    mutable std::mutex mu_;  // guards the caches and canonical interning
    mutable std::optional<bool> consistent_;
    mutable std::optional<Taxonomy> taxonomy_;
};

}  // namespace defectont
