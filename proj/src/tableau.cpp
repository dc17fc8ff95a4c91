#include "defectont/tableau.hpp"

#include <algorithm>
#include <deque>

namespace defectont {

// ---------------------------------------------------------------------------
// CanonPool

namespace {
std::string canon_key(const ConceptNode& n) {
    switch (n.kind) {
        case ConceptKind::Top: return "T";
        case ConceptKind::Bottom: return "F";
        default: break;
    }
    std::string k;
    k += static_cast<char>('A' + static_cast<int>(n.kind));
    k += std::to_string(n.sym);
    k += n.role.inverse ? '-' : '+';
    k += std::to_string(n.role.name);
    for (ConceptId kid : n.kids) {
        k += ',';
        k += std::to_string(kid);
    }
    return k;
}
}  // namespace

CanonPool::CanonPool() {
    chunks_.reserve(kMaxChunks);
    intern_unlocked({ConceptKind::Top});
    intern_unlocked({ConceptKind::Bottom});
    slot(0).comp.store(1, std::memory_order_release);
    slot(1).comp.store(0, std::memory_order_release);
}

CanonPool::CanonPool(CanonPool&& o) noexcept
    : chunks_(std::move(o.chunks_)), index_(std::move(o.index_)) {
    size_.store(o.size_.load(std::memory_order_acquire), std::memory_order_release);
    o.size_.store(0, std::memory_order_release);
}

ConceptId CanonPool::intern_unlocked(ConceptNode n) const {
    std::string key = canon_key(n);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    size_t id = size_.load(std::memory_order_relaxed);
    if (id / kChunk >= kMaxChunks) internal_error("concept pool exhausted");
    if (id % kChunk == 0) chunks_.push_back(std::make_unique<Slot[]>(kChunk));
    slot(static_cast<ConceptId>(id)).node = std::move(n);
    size_.store(id + 1, std::memory_order_release);
    index_.emplace(std::move(key), static_cast<ConceptId>(id));
    return static_cast<ConceptId>(id);
}

ConceptId CanonPool::named(uint32_t cls) const {
    std::scoped_lock lk(mu_);
    return intern_unlocked({ConceptKind::Named, cls});
}

ConceptId CanonPool::nominal(uint32_t ind) const {
    std::scoped_lock lk(mu_);
    return intern_unlocked({ConceptKind::Nominal, ind});
}

ConceptId CanonPool::negated_atom_unlocked(ConceptId atom) const {
    ConceptKind k = slot(atom).node.kind;
    if (k != ConceptKind::Named && k != ConceptKind::Nominal) {
        internal_error("negated_atom: operand is not atomic");
    }
    ConceptId id = intern_unlocked({ConceptKind::Not, 0, {}, {atom}});
    // Atoms and their negations are complement-linked eagerly so the clash
    // check never has to intern on the hot path.
    slot(atom).comp.store(id, std::memory_order_release);
    slot(id).comp.store(atom, std::memory_order_release);
    return id;
}

ConceptId CanonPool::negated_atom(ConceptId atom) const {
    std::scoped_lock lk(mu_);
    return negated_atom_unlocked(atom);
}

ConceptId CanonPool::conjunction_unlocked(std::vector<ConceptId> kids) const {
    std::vector<ConceptId> flat;
    for (ConceptId k : kids) {
        if (slot(k).node.kind == ConceptKind::And) {
            const auto& inner = slot(k).node.kids;
            flat.insert(flat.end(), inner.begin(), inner.end());
        } else {
            flat.push_back(k);
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    std::erase(flat, top());
    for (ConceptId k : flat) {
        if (k == bottom()) return bottom();
    }
    if (flat.empty()) return top();
    if (flat.size() == 1) return flat[0];
    return intern_unlocked({ConceptKind::And, 0, {}, std::move(flat)});
}

ConceptId CanonPool::disjunction_unlocked(std::vector<ConceptId> kids) const {
    std::vector<ConceptId> flat;
    for (ConceptId k : kids) {
        if (slot(k).node.kind == ConceptKind::Or) {
            const auto& inner = slot(k).node.kids;
            flat.insert(flat.end(), inner.begin(), inner.end());
        } else {
            flat.push_back(k);
        }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    std::erase(flat, bottom());
    for (ConceptId k : flat) {
        if (k == top()) return top();
    }
    if (flat.empty()) return bottom();
    if (flat.size() == 1) return flat[0];
    return intern_unlocked({ConceptKind::Or, 0, {}, std::move(flat)});
}

ConceptId CanonPool::conjunction(std::vector<ConceptId> kids) const {
    std::scoped_lock lk(mu_);
    return conjunction_unlocked(std::move(kids));
}

ConceptId CanonPool::disjunction(std::vector<ConceptId> kids) const {
    std::scoped_lock lk(mu_);
    return disjunction_unlocked(std::move(kids));
}

ConceptId CanonPool::some(Role r, ConceptId filler) const {
    std::scoped_lock lk(mu_);
    return intern_unlocked({ConceptKind::Some, 0, r, {filler}});
}

ConceptId CanonPool::all(Role r, ConceptId filler) const {
    std::scoped_lock lk(mu_);
    return intern_unlocked({ConceptKind::All, 0, r, {filler}});
}

ConceptId CanonPool::import_unlocked(const KnowledgeBase& kb, ConceptId c,
                                     bool negated) const {
    const ConceptNode n = kb.pool().node(c);
    switch (n.kind) {
        case ConceptKind::Top: return negated ? bottom() : top();
        case ConceptKind::Bottom: return negated ? top() : bottom();
        case ConceptKind::Named: {
            ConceptId id = intern_unlocked({ConceptKind::Named, n.sym});
            return negated ? negated_atom_unlocked(id) : id;
        }
        case ConceptKind::Nominal: {
            ConceptId id = intern_unlocked({ConceptKind::Nominal, n.sym});
            return negated ? negated_atom_unlocked(id) : id;
        }
        case ConceptKind::Not:
            return import_unlocked(kb, n.kids[0], !negated);
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptId> kids;
            kids.reserve(n.kids.size());
            for (ConceptId k : n.kids) kids.push_back(import_unlocked(kb, k, negated));
            bool conj = (n.kind == ConceptKind::And) != negated;
            return conj ? conjunction_unlocked(std::move(kids))
                        : disjunction_unlocked(std::move(kids));
        }
        case ConceptKind::Some:
        case ConceptKind::All: {
            ConceptId filler = import_unlocked(kb, n.kids[0], negated);
            bool ex = (n.kind == ConceptKind::Some) != negated;
            return ex ? intern_unlocked({ConceptKind::Some, 0, n.role, {filler}})
                      : intern_unlocked({ConceptKind::All, 0, n.role, {filler}});
        }
    }
    internal_error("CanonPool::import: bad kind");
}

ConceptId CanonPool::import(const KnowledgeBase& kb, ConceptId c, bool negated) const {
    std::scoped_lock lk(mu_);
    return import_unlocked(kb, c, negated);
}

ConceptId CanonPool::complement_unlocked(ConceptId c) const {
    ConceptId cached = slot(c).comp.load(std::memory_order_acquire);
    if (cached != kNoConcept) return cached;
    const ConceptNode n = slot(c).node;
    ConceptId out = kNoConcept;
    switch (n.kind) {
        case ConceptKind::Top: out = bottom(); break;
        case ConceptKind::Bottom: out = top(); break;
        case ConceptKind::Named:
        case ConceptKind::Nominal: return negated_atom_unlocked(c);
        case ConceptKind::Not: out = n.kids[0]; break;
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::vector<ConceptId> kids;
            kids.reserve(n.kids.size());
            for (ConceptId k : n.kids) kids.push_back(complement_unlocked(k));
            out = n.kind == ConceptKind::And ? disjunction_unlocked(std::move(kids))
                                             : conjunction_unlocked(std::move(kids));
            break;
        }
        case ConceptKind::Some:
            out = intern_unlocked(
                {ConceptKind::All, 0, n.role, {complement_unlocked(n.kids[0])}});
            break;
        case ConceptKind::All:
            out = intern_unlocked(
                {ConceptKind::Some, 0, n.role, {complement_unlocked(n.kids[0])}});
            break;
    }
    slot(c).comp.store(out, std::memory_order_release);
    slot(out).comp.store(c, std::memory_order_release);
    return out;
}

ConceptId CanonPool::complement(ConceptId c) const {
    std::scoped_lock lk(mu_);
    return complement_unlocked(c);
}

std::string CanonPool::describe(const KnowledgeBase& kb, ConceptId c) const {
    const ConceptNode& n = node(c);
    switch (n.kind) {
        case ConceptKind::Top: return "top";
        case ConceptKind::Bottom: return "bot";
        case ConceptKind::Named: return kb.class_name(n.sym);
        case ConceptKind::Nominal: return "(one " + kb.individual_name(n.sym) + ")";
        case ConceptKind::Not: return "(not " + describe(kb, n.kids[0]) + ")";
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::string out = n.kind == ConceptKind::And ? "(and" : "(or";
            for (ConceptId k : n.kids) out += " " + describe(kb, k);
            return out + ")";
        }
        case ConceptKind::Some:
        case ConceptKind::All: {
            std::string out = n.kind == ConceptKind::Some ? "(some " : "(all ";
            if (n.role.inverse) {
                out += "(inv " + kb.role_name(n.role.name) + ")";
            } else {
                out += kb.role_name(n.role.name);
            }
            return out + " " + describe(kb, n.kids[0]) + ")";
        }
    }
    internal_error("describe: bad kind");
}

// ---------------------------------------------------------------------------
// PreparedKB

PreparedKB prepare(const KnowledgeBase& kb) {
    PreparedKB prep;
    prep.kb = &kb;
    uint32_t nd = static_cast<uint32_t>(2 * kb.n_roles());
    prep.n_dir_roles = nd;

    std::vector<std::vector<bool>> sub(nd, std::vector<bool>(nd, false));
    for (uint32_t q = 0; q < nd; ++q) sub[q][q] = true;
    auto add_sub = [&](DirRole a, DirRole b) {
        sub[a][b] = true;
        sub[flip(a)][flip(b)] = true;
    };

    prep.domain_of.resize(kb.n_roles());
    prep.range_of.resize(kb.n_roles());

    auto add_universal = [&](ConceptId lhs, ConceptId rhs) {
        ConceptId u = prep.pool.disjunction({prep.pool.complement(lhs), rhs});
        if (u == prep.pool.top()) return;
        if (u == prep.pool.bottom()) prep.trivially_inconsistent = true;
        prep.universals.push_back(u);
    };

    for (const Axiom& a : kb.axioms()) {
        switch (a.kind) {
            case AxiomKind::SubClassOf:
                add_universal(prep.pool.import(kb, a.lhs, false),
                              prep.pool.import(kb, a.rhs, false));
                break;
            case AxiomKind::EquivalentClasses: {
                ConceptId l = prep.pool.import(kb, a.lhs, false);
                ConceptId r = prep.pool.import(kb, a.rhs, false);
                add_universal(l, r);
                add_universal(r, l);
                break;
            }
            case AxiomKind::DisjointClasses:
                for (size_t i = 0; i < a.classes.size(); ++i) {
                    for (size_t j = i + 1; j < a.classes.size(); ++j) {
                        prep.universals.push_back(prep.pool.disjunction(
                            {prep.pool.negated_atom(prep.pool.named(a.classes[i])),
                             prep.pool.negated_atom(prep.pool.named(a.classes[j]))}));
                    }
                }
                break;
            case AxiomKind::SubRoleOf:
                add_sub(dir_of(a.role1), dir_of(a.role2));
                break;
            case AxiomKind::InverseRoles: {
                DirRole r = dir_of(a.role1);
                DirRole s_inv = flip(dir_of(a.role2));
                add_sub(r, s_inv);
                add_sub(s_inv, r);
                break;
            }
            case AxiomKind::SymmetricRole:
                add_sub(dir_of(a.role1), flip(dir_of(a.role1)));
                break;
            case AxiomKind::RoleDomain: {
                ConceptId c = prep.pool.import(kb, a.lhs, false);
                if (a.role1.inverse) {
                    prep.range_of[a.role1.name].push_back(c);
                } else {
                    prep.domain_of[a.role1.name].push_back(c);
                }
                break;
            }
            case AxiomKind::RoleRange: {
                ConceptId c = prep.pool.import(kb, a.lhs, false);
                if (a.role1.inverse) {
                    prep.domain_of[a.role1.name].push_back(c);
                } else {
                    prep.range_of[a.role1.name].push_back(c);
                }
                break;
            }
            case AxiomKind::ClassAssertion:
                prep.abox_labels.push_back(
                    {a.ind1, prep.pool.import(kb, a.lhs, false)});
                break;
            case AxiomKind::RoleAssertion:
                prep.abox_edges.push_back(
                    {a.ind1, a.ind2, dir_of(Role{a.role1.name, false})});
                break;
            case AxiomKind::DataAssertion:
                break;  // syntactic typing only
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t a = 0; a < nd; ++a) {
            for (uint32_t b = 0; b < nd; ++b) {
                if (a == b || !sub[a][b]) continue;
                for (uint32_t c = 0; c < nd; ++c) {
                    if (sub[b][c] && !sub[a][c]) {
                        sub[a][c] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    size_t words = nd == 0 ? 0 : (nd + 63) / 64;
    prep.super_bits.assign(nd, std::vector<uint64_t>(words, 0));
    for (uint32_t a = 0; a < nd; ++a) {
        for (uint32_t b = 0; b < nd; ++b) {
            if (sub[a][b]) prep.super_bits[a][b >> 6] |= 1ull << (b & 63);
        }
    }

    std::sort(prep.universals.begin(), prep.universals.end());
    prep.universals.erase(std::unique(prep.universals.begin(), prep.universals.end()),
                          prep.universals.end());

    prep.nominal_of.resize(kb.n_individuals());
    for (uint32_t i = 0; i < kb.n_individuals(); ++i) {
        prep.nominal_of[i] = prep.pool.nominal(i);
    }
    return prep;
}

// ---------------------------------------------------------------------------
// Tableau engine

namespace {

constexpr uint32_t kNone = UINT32_MAX;
constexpr size_t kNodeLimit = 500000;

struct Bits {
    std::vector<uint64_t> w;
    Bits() = default;
    explicit Bits(size_t n) : w((n + 63) / 64, 0) {}
    bool test(uint32_t i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
    void set(uint32_t i) { w[i >> 6] |= 1ull << (i & 63); }
    void clear(uint32_t i) { w[i >> 6] &= ~(1ull << (i & 63)); }
    void or_with(const std::vector<uint64_t>& o) {
        for (size_t i = 0; i < o.size(); ++i) w[i] |= o[i];
    }
    bool operator==(const Bits&) const = default;
};

// Immutable shared set of branch-point ids, sorted ascending.
class DepSet {
  public:
    DepSet() = default;
    bool empty() const { return !v_ || v_->empty(); }
    uint32_t max() const { return v_->back(); }

    static DepSet join(const DepSet& a, const DepSet& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        if (a.v_ == b.v_) return a;
        auto out = std::make_shared<std::vector<uint32_t>>();
        std::set_union(a.v_->begin(), a.v_->end(), b.v_->begin(), b.v_->end(),
                       std::back_inserter(*out));
        DepSet d;
        d.v_ = std::move(out);
        return d;
    }

    DepSet with(uint32_t bp) const {
        auto out = std::make_shared<std::vector<uint32_t>>();
        if (v_) *out = *v_;
        auto it = std::lower_bound(out->begin(), out->end(), bp);
        if (it == out->end() || *it != bp) out->insert(it, bp);
        DepSet d;
        d.v_ = std::move(out);
        return d;
    }

    DepSet without(uint32_t bp) const {
        if (empty()) return {};
        auto out = std::make_shared<std::vector<uint32_t>>(*v_);
        std::erase(*out, bp);
        DepSet d;
        d.v_ = std::move(out);
        return d;
    }

    std::vector<uint32_t> to_vector() const {
        return v_ ? *v_ : std::vector<uint32_t>{};
    }

  private:
    std::shared_ptr<const std::vector<uint32_t>> v_;
};

struct LabelEntry {
    ConceptId c;
    DepSet deps;
};

struct TNode {
    Bits labels;
    std::vector<LabelEntry> entries;
    uint32_t parent = kNone;
    uint32_t parent_edge = kNone;
    bool root = false;
    int individual = -1;
    uint32_t merged_into = kNone;
    std::vector<uint32_t> edges;  // incident edge ids, including deactivated
    uint32_t cursor = 0;          // entries below this index are decomposed
};

struct BaseRole {
    DirRole q;
    DepSet deps;
};

struct TEdge {
    uint32_t from, to;
    std::vector<BaseRole> bases;
    Bits closed;  // directed roles carried from->to
    bool active = true;
};

struct TrailEntry {
    enum Kind : uint8_t {
        Label,
        NewNode,
        NewEdge,
        AddBase,
        Deactivate,
        Merged,
        Cursor,
        IndRoot,
        Reparent,
    };
    Kind kind;
    uint32_t a = 0, b = 0, c = 0;
};

struct Branch {
    size_t mark;
    size_t or_cursor, some_cursor;
    uint32_t node;
    ConceptId or_concept;
    DepSet or_deps;
    uint32_t next_alt = 0;
    DepSet fail_deps;
    uint32_t id;
};

class Tableau {
  public:
    explicit Tableau(const PreparedKB& prep)
        : prep_(prep),
          pool_size_(prep.pool.size()),
          n_dir_(prep.n_dir_roles) {}

    SatResult run(const std::vector<std::pair<uint32_t, ConceptId>>& extra_labels,
                  const std::vector<ConceptId>& fresh_labels, bool want_graph);

  private:
    const ConceptNode& cnode(ConceptId c) const { return prep_.pool.node(c); }

    uint32_t find(uint32_t x) const {
        while (nodes_[x].merged_into != kNone) x = nodes_[x].merged_into;
        return x;
    }

    void enqueue(uint32_t n) {
        if (!queued_[n]) {
            queued_[n] = true;
            queue_.push_back(n);
        }
    }

    void set_clash(DepSet d) {
        if (!clash_) clash_ = std::move(d);
    }

    DepSet deps_of(uint32_t n, ConceptId c) const {
        const auto& es = nodes_[n].entries;
        for (auto it = es.rbegin(); it != es.rend(); ++it) {
            if (it->c == c) return it->deps;
        }
        return {};
    }

    uint32_t new_node(bool root, int individual, uint32_t parent) {
        if (nodes_.size() >= kNodeLimit) {
            internal_error("tableau node limit exceeded; nontermination suspected");
        }
        TNode n;
        n.labels = Bits(pool_size_);
        n.root = root;
        n.individual = individual;
        n.parent = parent;
        nodes_.push_back(std::move(n));
        queued_.push_back(false);
        trail_.push_back({TrailEntry::NewNode, 0, 0, 0});
        return static_cast<uint32_t>(nodes_.size() - 1);
    }

    void seed(uint32_t n) {
        for (ConceptId u : prep_.universals) add_label(n, u, {});
        if (nodes_[n].individual >= 0) {
            add_label(n, prep_.nominal_of[nodes_[n].individual], {});
        }
    }

    void add_label(uint32_t n, ConceptId c, const DepSet& deps);
    void merge(uint32_t x, uint32_t target, const DepSet& mdeps);
    uint32_t add_edge_base(uint32_t x, uint32_t y, DirRole q, const DepSet& deps);
    void apply_edge_delta(uint32_t eid, const Bits& delta);
    DepSet base_dep_for(const TEdge& e, DirRole p) const;

    void process_entry(uint32_t n, uint32_t idx);
    void drain();
    bool or_pick();
    bool some_pick();
    bool some_satisfied(uint32_t n, DirRole p, ConceptId filler) const;
    void expand_some(uint32_t n, DirRole p, ConceptId filler, const DepSet& deps);
    bool blocked(uint32_t n) const;
    bool pair_condition(uint32_t w, uint32_t m) const;
    void take_alt(Branch& b);
    bool handle_clash();
    void restore_to(size_t mark);
    void requeue_all();

    CompletionGraph snapshot() const;

    const PreparedKB& prep_;
    size_t pool_size_;
    uint32_t n_dir_;
    std::vector<TNode> nodes_;
    std::vector<TEdge> edges_;
    std::vector<TrailEntry> trail_;
    std::vector<Branch> stack_;
    uint32_t next_branch_id_ = 1;
    std::vector<std::pair<uint32_t, uint32_t>> pending_or_, pending_some_;
    size_t or_cursor_ = 0, some_cursor_ = 0;
    std::deque<uint32_t> queue_;
    std::vector<bool> queued_;
    std::optional<DepSet> clash_;
    std::vector<uint32_t> ind_node_;
};

void Tableau::add_label(uint32_t n_in, ConceptId c, const DepSet& deps) {
    uint32_t n = find(n_in);
    if (nodes_[n].labels.test(c)) return;
    nodes_[n].labels.set(c);
    nodes_[n].entries.push_back({c, deps});
    trail_.push_back({TrailEntry::Label, n, 0, 0});
    const ConceptNode& cn = cnode(c);
    if (cn.kind == ConceptKind::Or) {
        pending_or_.emplace_back(n, static_cast<uint32_t>(nodes_[n].entries.size() - 1));
    } else if (cn.kind == ConceptKind::Some) {
        pending_some_.emplace_back(n,
                                   static_cast<uint32_t>(nodes_[n].entries.size() - 1));
    }
    enqueue(n);

    if (c == prep_.pool.bottom()) {
        set_clash(deps);
        return;
    }
    if (cn.kind == ConceptKind::Named || cn.kind == ConceptKind::Nominal ||
        cn.kind == ConceptKind::Not) {
        // kNoConcept means the complement was never interned, so it cannot
        // occur in any label.
        ConceptId neg = prep_.pool.complement_cached(c);
        if (neg != kNoConcept && neg < pool_size_ && nodes_[n].labels.test(neg)) {
            set_clash(DepSet::join(deps, deps_of(n, neg)));
            return;
        }
    }
    if (cn.kind == ConceptKind::Nominal) {
        uint32_t root = find(ind_node_[cn.sym]);
        if (root != n) merge(n, root, deps);
    }
}

void Tableau::merge(uint32_t x, uint32_t target, const DepSet& mdeps) {
    // Copy labels, reroute edges, tombstone x. The target is always a root.
    for (size_t i = 0; i < nodes_[x].entries.size(); ++i) {
        LabelEntry e = nodes_[x].entries[i];
        add_label(target, e.c, DepSet::join(e.deps, mdeps));
    }
    for (size_t i = 0; i < nodes_[x].edges.size(); ++i) {
        uint32_t eid = nodes_[x].edges[i];
        if (!edges_[eid].active) continue;
        edges_[eid].active = false;
        trail_.push_back({TrailEntry::Deactivate, eid, 0, 0});
        uint32_t t = find(target);
        uint32_t nf = edges_[eid].from == x ? t : edges_[eid].from;
        uint32_t nt = edges_[eid].to == x ? t : edges_[eid].to;
        uint32_t child = kNone;
        if (edges_[eid].from == x && nt != t && nodes_[nt].parent_edge == eid) {
            child = nt;
        }
        uint32_t nid = kNone;
        std::vector<BaseRole> bases = edges_[eid].bases;
        for (const BaseRole& b : bases) {
            nid = add_edge_base(nf, nt, b.q, DepSet::join(b.deps, mdeps));
        }
        if (child != kNone && nid != kNone) {
            trail_.push_back({TrailEntry::Reparent, child, nodes_[child].parent,
                              nodes_[child].parent_edge});
            nodes_[child].parent = find(target);
            nodes_[child].parent_edge = nid;
        }
    }
    for (uint32_t i = 0; i < ind_node_.size(); ++i) {
        if (ind_node_[i] == x) {
            trail_.push_back({TrailEntry::IndRoot, i, x, 0});
            ind_node_[i] = find(target);
        }
    }
    nodes_[x].merged_into = find(target);
    trail_.push_back({TrailEntry::Merged, x, 0, 0});
    enqueue(find(target));
}

DepSet Tableau::base_dep_for(const TEdge& e, DirRole p) const {
    for (const BaseRole& b : e.bases) {
        if ((prep_.super_bits[b.q][p >> 6] >> (p & 63)) & 1u) return b.deps;
    }
    return {};
}

uint32_t Tableau::add_edge_base(uint32_t x_in, uint32_t y_in, DirRole q,
                                const DepSet& deps) {
    uint32_t x = find(x_in), y = find(y_in);
    uint32_t eid = kNone;
    for (uint32_t cand : nodes_[x].edges) {
        if (!edges_[cand].active) continue;
        if (edges_[cand].from == x && edges_[cand].to == y) {
            eid = cand;
            break;
        }
        if (edges_[cand].from == y && edges_[cand].to == x) {
            eid = cand;
            q = flip(q);
            break;
        }
    }
    if (eid == kNone) {
        TEdge e;
        e.from = x;
        e.to = y;
        e.closed = Bits(n_dir_);
        edges_.push_back(std::move(e));
        eid = static_cast<uint32_t>(edges_.size() - 1);
        nodes_[x].edges.push_back(eid);
        if (y != x) nodes_[y].edges.push_back(eid);
        trail_.push_back({TrailEntry::NewEdge, eid, 0, 0});
    }
    for (const BaseRole& b : edges_[eid].bases) {
        if (b.q == q) return eid;
    }
    edges_[eid].bases.push_back({q, deps});
    trail_.push_back({TrailEntry::AddBase, eid, 0, 0});
    Bits delta(n_dir_);
    for (size_t i = 0; i < delta.w.size(); ++i) {
        delta.w[i] = prep_.super_bits[q][i] & ~edges_[eid].closed.w[i];
    }
    edges_[eid].closed.or_with(prep_.super_bits[q]);
    apply_edge_delta(eid, delta);
    return eid;
}

void Tableau::apply_edge_delta(uint32_t eid, const Bits& delta) {
    // Domain/range for the newly carried roles, then forall propagation.
    for (uint32_t p = 0; p < n_dir_; ++p) {
        if (!delta.test(p)) continue;
        uint32_t from = edges_[eid].from, to = edges_[eid].to;
        DepSet d = base_dep_for(edges_[eid], p);
        uint32_t r = role_of(p);
        bool fwd = (p & 1u) == 0;
        uint32_t src = fwd ? from : to;
        uint32_t dst = fwd ? to : from;
        for (ConceptId c : prep_.domain_of[r]) {
            add_label(src, c, d);
            if (clash_) return;
        }
        for (ConceptId c : prep_.range_of[r]) {
            add_label(dst, c, d);
            if (clash_) return;
        }
    }
    for (int side = 0; side < 2; ++side) {
        uint32_t self = side == 0 ? edges_[eid].from : edges_[eid].to;
        uint32_t other = side == 0 ? edges_[eid].to : edges_[eid].from;
        for (size_t i = 0; i < nodes_[self].entries.size(); ++i) {
            LabelEntry e = nodes_[self].entries[i];
            const ConceptNode& cn = cnode(e.c);
            if (cn.kind != ConceptKind::All) continue;
            DirRole p = dir_of(cn.role);
            DirRole carried = side == 0 ? p : flip(p);
            if (!delta.test(carried)) continue;
            add_label(other, cn.kids[0],
                      DepSet::join(e.deps, base_dep_for(edges_[eid], carried)));
            if (clash_) return;
        }
    }
}

void Tableau::process_entry(uint32_t n, uint32_t idx) {
    LabelEntry e = nodes_[n].entries[idx];
    const ConceptNode& cn = cnode(e.c);
    if (cn.kind == ConceptKind::And) {
        for (ConceptId kid : cn.kids) {
            add_label(n, kid, e.deps);
            if (clash_) return;
        }
    } else if (cn.kind == ConceptKind::All) {
        DirRole p = dir_of(cn.role);
        for (size_t i = 0; i < nodes_[n].edges.size(); ++i) {
            uint32_t eid = nodes_[n].edges[i];
            if (!edges_[eid].active) continue;
            if (edges_[eid].from == n && edges_[eid].closed.test(p)) {
                add_label(edges_[eid].to, cn.kids[0],
                          DepSet::join(e.deps, base_dep_for(edges_[eid], p)));
            } else if (edges_[eid].to == n && edges_[eid].closed.test(flip(p))) {
                add_label(edges_[eid].from, cn.kids[0],
                          DepSet::join(e.deps, base_dep_for(edges_[eid], flip(p))));
            }
            if (clash_) return;
        }
    }
}

void Tableau::drain() {
    while (!queue_.empty() && !clash_) {
        uint32_t n = queue_.front();
        queue_.pop_front();
        queued_[n] = false;
        if (nodes_[n].merged_into != kNone) continue;
        while (nodes_[n].cursor < nodes_[n].entries.size() && !clash_) {
            uint32_t idx = nodes_[n].cursor;
            trail_.push_back({TrailEntry::Cursor, n, idx, 0});
            nodes_[n].cursor = idx + 1;
            process_entry(n, idx);
            if (nodes_[n].merged_into != kNone) break;
        }
    }
}

bool Tableau::or_pick() {
    while (or_cursor_ < pending_or_.size()) {
        auto [n, idx] = pending_or_[or_cursor_];
        if (nodes_[n].merged_into != kNone) {
            ++or_cursor_;
            continue;
        }
        const LabelEntry& e = nodes_[n].entries[idx];
        const ConceptNode& cn = cnode(e.c);
        bool satisfied = false;
        for (ConceptId kid : cn.kids) {
            if (nodes_[n].labels.test(kid)) {
                satisfied = true;
                break;
            }
        }
        if (satisfied) {
            ++or_cursor_;
            continue;
        }
        Branch b;
        b.mark = trail_.size();
        b.or_cursor = or_cursor_;
        b.some_cursor = some_cursor_;
        b.node = n;
        b.or_concept = e.c;
        b.or_deps = e.deps;
        b.id = next_branch_id_++;
        stack_.push_back(std::move(b));
        take_alt(stack_.back());
        return true;
    }
    return false;
}

void Tableau::take_alt(Branch& b) {
    ConceptId kid = cnode(b.or_concept).kids[b.next_alt];
    ++b.next_alt;
    add_label(b.node, kid, b.or_deps.with(b.id));
}

bool Tableau::some_satisfied(uint32_t n, DirRole p, ConceptId filler) const {
    for (uint32_t eid : nodes_[n].edges) {
        const TEdge& e = edges_[eid];
        if (!e.active) continue;
        if (e.from == n && e.closed.test(p) && nodes_[e.to].labels.test(filler)) {
            return true;
        }
        if (e.to == n && e.closed.test(flip(p)) && nodes_[e.from].labels.test(filler)) {
            return true;
        }
    }
    return false;
}

bool Tableau::some_pick() {
    size_t i = some_cursor_;
    bool prefix = true;
    while (i < pending_some_.size()) {
        auto [n, idx] = pending_some_[i];
        bool done = false;
        if (nodes_[n].merged_into != kNone) {
            done = true;  // the merge target carries a copy of this label
        } else {
            const LabelEntry& e = nodes_[n].entries[idx];
            const ConceptNode& cn = cnode(e.c);
            DirRole p = dir_of(cn.role);
            if (some_satisfied(n, p, cn.kids[0])) {
                done = true;
            } else if (!blocked(n)) {
                expand_some(n, p, cn.kids[0], e.deps);
                return true;
            }
        }
        if (done && prefix) {
            some_cursor_ = i + 1;
        } else if (!done) {
            prefix = false;  // blocked: keep rechecking from here
        }
        ++i;
    }
    return false;
}

void Tableau::expand_some(uint32_t n, DirRole p, ConceptId filler,
                          const DepSet& deps) {
    uint32_t y = new_node(false, -1, n);
    uint32_t eid = add_edge_base(n, y, p, deps);
    nodes_[y].parent_edge = eid;
    seed(y);
    if (!clash_) add_label(y, filler, deps);
}

bool Tableau::pair_condition(uint32_t w, uint32_t m) const {
    if (nodes_[w].labels != nodes_[m].labels) return false;
    uint32_t wp = nodes_[w].parent, mp = nodes_[m].parent;
    if (nodes_[wp].labels != nodes_[mp].labels) return false;
    return edges_[nodes_[w].parent_edge].closed ==
           edges_[nodes_[m].parent_edge].closed;
}

bool Tableau::blocked(uint32_t n) const {
    if (nodes_[n].root) return false;
    std::vector<uint32_t> path;  // n up to, excluding, its root ancestor
    uint32_t cur = n;
    while (!nodes_[cur].root) {
        path.push_back(cur);
        cur = nodes_[cur].parent;
        if (cur == kNone) internal_error("blockable node without a root ancestor");
    }
    // Walk top-down; witnesses are unblocked blockable ancestors.
    std::vector<uint32_t> witnesses;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        uint32_t m = *it;
        for (uint32_t w : witnesses) {
            if (pair_condition(w, m)) return true;  // m and all below are blocked
        }
        witnesses.push_back(m);
    }
    return false;
}

bool Tableau::handle_clash() {
    DepSet d = *clash_;
    clash_.reset();
    for (;;) {
        if (d.empty()) return false;
        uint32_t bp = d.max();
        while (!stack_.empty() && stack_.back().id > bp) stack_.pop_back();
        if (stack_.empty() || stack_.back().id != bp) {
            internal_error("clash depends on an inactive branch point");
        }
        Branch& b = stack_.back();
        restore_to(b.mark);
        or_cursor_ = b.or_cursor;
        some_cursor_ = b.some_cursor;
        b.fail_deps = DepSet::join(b.fail_deps, d.without(bp));
        if (b.next_alt < cnode(b.or_concept).kids.size()) {
            requeue_all();
            take_alt(b);
            if (clash_) {
                d = *clash_;
                clash_.reset();
                continue;
            }
            return true;
        }
        d = DepSet::join(b.fail_deps, b.or_deps);
        stack_.pop_back();
    }
}

void Tableau::restore_to(size_t mark) {
    queue_.clear();
    std::fill(queued_.begin(), queued_.end(), false);
    while (trail_.size() > mark) {
        TrailEntry t = trail_.back();
        trail_.pop_back();
        switch (t.kind) {
            case TrailEntry::Label: {
                TNode& n = nodes_[t.a];
                const LabelEntry& e = n.entries.back();
                ConceptKind k = cnode(e.c).kind;
                if (k == ConceptKind::Or) {
                    pending_or_.pop_back();
                } else if (k == ConceptKind::Some) {
                    pending_some_.pop_back();
                }
                n.labels.clear(e.c);
                n.entries.pop_back();
                break;
            }
            case TrailEntry::NewNode:
                nodes_.pop_back();
                queued_.pop_back();
                break;
            case TrailEntry::NewEdge: {
                const TEdge& e = edges_.back();
                nodes_[e.from].edges.pop_back();
                if (e.to != e.from) nodes_[e.to].edges.pop_back();
                edges_.pop_back();
                break;
            }
            case TrailEntry::AddBase: {
                TEdge& e = edges_[t.a];
                e.bases.pop_back();
                e.closed = Bits(n_dir_);
                for (const BaseRole& b : e.bases) {
                    e.closed.or_with(prep_.super_bits[b.q]);
                }
                break;
            }
            case TrailEntry::Deactivate:
                edges_[t.a].active = true;
                break;
            case TrailEntry::Merged:
                nodes_[t.a].merged_into = kNone;
                break;
            case TrailEntry::Cursor:
                nodes_[t.a].cursor = t.b;
                break;
            case TrailEntry::IndRoot:
                ind_node_[t.a] = t.b;
                break;
            case TrailEntry::Reparent:
                nodes_[t.a].parent = t.b;
                nodes_[t.a].parent_edge = t.c;
                break;
        }
    }
}

void Tableau::requeue_all() {
    for (uint32_t n = 0; n < nodes_.size(); ++n) {
        if (nodes_[n].merged_into != kNone) continue;
        if (nodes_[n].cursor < nodes_[n].entries.size()) enqueue(n);
    }
}

SatResult Tableau::run(
    const std::vector<std::pair<uint32_t, ConceptId>>& extra_labels,
    const std::vector<ConceptId>& fresh_labels, bool want_graph) {
    if (prep_.trivially_inconsistent) return {false, std::nullopt};

    size_t n_ind = prep_.kb->n_individuals();
    ind_node_.resize(n_ind);
    for (uint32_t i = 0; i < n_ind; ++i) {
        ind_node_[i] = new_node(true, static_cast<int>(i), kNone);
    }
    for (uint32_t i = 0; i < n_ind; ++i) {
        if (clash_) break;
        seed(ind_node_[i]);
    }
    for (const auto& al : prep_.abox_labels) {
        if (clash_) break;
        add_label(ind_node_[al.ind], al.c, {});
    }
    for (const auto& ae : prep_.abox_edges) {
        if (clash_) break;
        add_edge_base(ind_node_[ae.from], ind_node_[ae.to], ae.role, {});
    }
    for (const auto& [ind, c] : extra_labels) {
        if (clash_) break;
        add_label(ind_node_[ind], c, {});
    }
    if (!fresh_labels.empty() || n_ind == 0) {
        uint32_t fresh = new_node(true, -1, kNone);
        seed(fresh);
        for (ConceptId c : fresh_labels) {
            if (clash_) break;
            add_label(fresh, c, {});
        }
    }

    for (;;) {
        if (clash_) {
            if (!handle_clash()) return {false, std::nullopt};
            continue;
        }
        if (!queue_.empty()) {
            drain();
            continue;
        }
        if (or_pick()) continue;
        if (some_pick()) continue;
        break;
    }

    SatResult res;
    res.consistent = true;
    if (want_graph) res.graph = snapshot();
    return res;
}

CompletionGraph Tableau::snapshot() const {
    CompletionGraph g;
    g.nodes.resize(nodes_.size());
    std::vector<bool> blocked_flag(nodes_.size(), false);
    for (uint32_t id = 0; id < nodes_.size(); ++id) {
        const TNode& n = nodes_[id];
        CompletionGraph::Node& out = g.nodes[id];
        out.root = n.root;
        out.individual = n.individual;
        out.parent = n.parent;
        out.merged = n.merged_into != kNone;
        out.merged_into = n.merged_into;
        for (const LabelEntry& e : n.entries) {
            out.labels.push_back(e.c);
            out.label_deps.push_back(e.deps.to_vector());
        }
        if (n.root || out.merged) continue;
        // Creation order puts ancestors first, so their status is final.
        if (g.nodes[n.parent].blocked_by >= 0 ||
            g.nodes[n.parent].indirectly_blocked) {
            out.indirectly_blocked = true;
            blocked_flag[id] = true;
            continue;
        }
        uint32_t w = n.parent;
        while (w != kNone && !nodes_[w].root) {
            if (!blocked_flag[w] && pair_condition(w, id)) {
                out.blocked_by = w;
                blocked_flag[id] = true;
                break;
            }
            w = nodes_[w].parent;
        }
    }
    for (const TEdge& e : edges_) {
        if (!e.active) continue;
        CompletionGraph::Edge out;
        out.from = e.from;
        out.to = e.to;
        for (uint32_t p = 0; p < n_dir_; ++p) {
            if (e.closed.test(p)) out.roles.push_back(p);
        }
        g.edges.push_back(std::move(out));
    }
    for (uint32_t i = 0; i < ind_node_.size(); ++i) {
        g.individual_node.push_back(find(ind_node_[i]));
    }
    return g;
}

}  // namespace

SatResult run_tableau(const PreparedKB& prep,
                      const std::vector<std::pair<uint32_t, ConceptId>>& extra_labels,
                      const std::vector<ConceptId>& fresh_labels, bool want_graph) {
    Tableau t(prep);
    return t.run(extra_labels, fresh_labels, want_graph);
}

}  // namespace defectont
