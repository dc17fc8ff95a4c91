#include <functional>
#include "defectont/reasoner.hpp"

#include <algorithm>
#include <future>
#include <thread>

namespace defectont {

Reasoner::Reasoner(KnowledgeBase kb) : kb_(std::move(kb)), prep_(prepare(kb_)) {
    prep_.kb = &kb_;  // prepare() saw the same object, but be explicit
    // Pre-intern every named class and its complement so classification and
    // instance checks never mutate the pool concurrently.
    for (uint32_t c = 0; c < kb_.n_classes(); ++c) {
        prep_.pool.negated_atom(prep_.pool.named(c));
    }
    for (uint32_t i = 0; i < kb_.n_individuals(); ++i) {
        prep_.pool.negated_atom(prep_.pool.nominal(i));
    }
}

bool Reasoner::run_sat(const std::vector<std::pair<uint32_t, ConceptId>>& extra,
                       const std::vector<ConceptId>& fresh) const {
    return run_tableau(prep_, extra, fresh, false).consistent;
}

bool Reasoner::is_consistent() const {
    {
        std::scoped_lock lk(mu_);
        if (consistent_) return *consistent_;
    }
    bool result = run_sat({}, {});
    std::scoped_lock lk(mu_);
    consistent_ = result;
    return result;
}

bool Reasoner::is_satisfiable(ConceptId c) const {
    ConceptId canon = prep_.pool.import(kb_, c, false);
    return run_sat({}, {canon});
}

bool Reasoner::entails_subsumption(ConceptId c, ConceptId d) const {
    ConceptId pos = prep_.pool.import(kb_, c, false);
    ConceptId neg = prep_.pool.import(kb_, d, true);
    return !run_sat({}, {pos, neg});
}

bool Reasoner::entails_instance(uint32_t individual, ConceptId c) const {
    if (individual >= kb_.n_individuals()) {
        throw DloError(ErrorCategory::Name, "unknown individual id");
    }
    ConceptId neg = prep_.pool.import(kb_, c, true);
    return !run_sat({{individual, neg}}, {});
}

bool Reasoner::entails_instance(std::string_view individual, ConceptId c) const {
    return entails_instance(kb_.require_individual(individual), c);
}

void Reasoner::require_consistent() const {
    if (!is_consistent()) {
        throw DloError(ErrorCategory::Reasoning, "knowledge base is inconsistent");
    }
}

namespace {

// Chunked parallel for; tasks write into preallocated slots, so the result
// does not depend on scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    size_t workers = std::min<size_t>(hw == 0 ? 1 : hw, 8);
    if (workers <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace

const Taxonomy& Reasoner::classify() const {
    require_consistent();
    std::scoped_lock lk(mu_);
    if (taxonomy_) return *taxonomy_;

    size_t n = kb_.n_classes();
    std::vector<std::string> names(n);
    std::vector<ConceptId> pos(n), neg(n);
    for (uint32_t i = 0; i < n; ++i) {
        names[i] = kb_.class_name(i);
        pos[i] = prep_.pool.named(i);
        neg[i] = prep_.pool.negated_atom(pos[i]);
    }

    std::vector<bool> satisfiable(n, false), equals_top(n, false);
    parallel_for(n, [&](size_t i) {
        satisfiable[i] = run_sat({}, {pos[i]});
        equals_top[i] = !run_sat({}, {neg[i]});
    });

    std::vector<std::vector<bool>> subsumes(n, std::vector<bool>(n, false));
    parallel_for(n, [&](size_t i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j) {
                subsumes[i][j] = true;
            } else if (!satisfiable[i]) {
                subsumes[i][j] = true;  // bottom is below everything
            } else if (!satisfiable[j]) {
                subsumes[i][j] = false;
            } else {
                subsumes[i][j] = !run_sat({}, {pos[i], neg[j]});
            }
        }
    });

    taxonomy_ = build_taxonomy(names, satisfiable, subsumes, equals_top);
    return *taxonomy_;
}

std::vector<std::string> Reasoner::realize(uint32_t individual) const {
    if (individual >= kb_.n_individuals()) {
        throw DloError(ErrorCategory::Name, "unknown individual id");
    }
    const Taxonomy& tax = classify();  // also checks consistency
    size_t n = kb_.n_classes();
    std::vector<ConceptId> neg(n);
    for (uint32_t i = 0; i < n; ++i) {
        neg[i] = prep_.pool.negated_atom(prep_.pool.named(i));
    }
    std::vector<bool> entailed(n, false);
    parallel_for(n, [&](size_t i) {
        const std::string& name = kb_.class_name(i);
        if (tax.node_of.at(name) == tax.top_node) return;  // trivially entailed
        entailed[i] = !run_sat({{individual, neg[i]}}, {});
    });
    std::vector<std::string> result;
    for (uint32_t i = 0; i < n; ++i) {
        if (!entailed[i]) continue;
        const std::string& ci = kb_.class_name(i);
        bool minimal = true;
        for (uint32_t j = 0; j < n && minimal; ++j) {
            if (j == i || !entailed[j]) continue;
            const std::string& cj = kb_.class_name(j);
            if (tax.subsumed(cj, ci) && !tax.subsumed(ci, cj)) minimal = false;
        }
        if (minimal) result.push_back(ci);
    }
    std::sort(result.begin(), result.end());
    return result;
}

CompletionGraph Reasoner::consistency_graph() const {
    SatResult res = run_tableau(prep_, {}, {}, true);
    if (!res.consistent) {
        throw DloError(ErrorCategory::Reasoning, "knowledge base is inconsistent");
    }
    return std::move(*res.graph);
}

}  // namespace defectont
