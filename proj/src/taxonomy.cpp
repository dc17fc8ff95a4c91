#include "defectont/taxonomy.hpp"

#include <algorithm>

namespace defectont {

bool Taxonomy::same_node(const std::string& a, const std::string& b) const {
    return node_of.at(a) == node_of.at(b);
}

bool Taxonomy::subsumed(const std::string& sub, const std::string& super) const {
    uint32_t from = node_of.at(sub), to = node_of.at(super);
    if (from == to) return true;
    // DFS upward over direct supers.
    std::vector<uint32_t> work{from};
    std::vector<bool> seen(nodes.size(), false);
    seen[from] = true;
    while (!work.empty()) {
        uint32_t n = work.back();
        work.pop_back();
        for (uint32_t s : nodes[n].direct_supers) {
            if (s == to) return true;
            if (!seen[s]) {
                seen[s] = true;
                work.push_back(s);
            }
        }
    }
    return false;
}

std::vector<std::string> Taxonomy::ancestors_of(const std::string& cls) const {
    uint32_t start = node_of.at(cls);
    std::vector<bool> seen(nodes.size(), false);
    std::vector<uint32_t> work{start};
    seen[start] = true;
    std::vector<std::string> out;
    for (const std::string& m : nodes[start].members) {
        if (m != cls) out.push_back(m);
    }
    while (!work.empty()) {
        uint32_t n = work.back();
        work.pop_back();
        for (uint32_t s : nodes[n].direct_supers) {
            if (seen[s]) continue;
            seen[s] = true;
            work.push_back(s);
            out.insert(out.end(), nodes[s].members.begin(), nodes[s].members.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> Taxonomy::unsatisfiable_classes() const {
    return nodes[bottom_node].members;
}

Taxonomy build_taxonomy(const std::vector<std::string>& names,
                        const std::vector<bool>& satisfiable,
                        const std::vector<std::vector<bool>>& subsumes,
                        const std::vector<bool>& equals_top) {
    size_t n = names.size();
    Taxonomy tax;

    // Group mutually subsuming classes. Unsatisfiable classes form the
    // bottom group; classes subsuming top form the top group.
    std::vector<int> group_of(n, -1);
    std::vector<std::vector<uint32_t>> groups;  // member class indices
    constexpr int kBottomGroup = -2, kTopGroup = -3;
    std::vector<int> special(n, 0);
    for (size_t i = 0; i < n; ++i) {
        if (!satisfiable[i]) special[i] = kBottomGroup;
        else if (equals_top[i]) special[i] = kTopGroup;
    }
    for (size_t i = 0; i < n; ++i) {
        if (special[i] != 0 || group_of[i] >= 0) continue;
        uint32_t g = static_cast<uint32_t>(groups.size());
        groups.emplace_back();
        for (size_t j = i; j < n; ++j) {
            if (special[j] != 0 || group_of[j] >= 0) continue;
            if (subsumes[i][j] && subsumes[j][i]) {
                group_of[j] = static_cast<int>(g);
                groups[g].push_back(static_cast<uint32_t>(j));
            }
        }
    }

    // Node layout: 0 = top, 1 = bottom, then one node per proper group.
    tax.top_node = 0;
    tax.bottom_node = 1;
    tax.nodes.resize(2 + groups.size());
    for (size_t i = 0; i < n; ++i) {
        uint32_t node;
        if (special[i] == kBottomGroup) node = tax.bottom_node;
        else if (special[i] == kTopGroup) node = tax.top_node;
        else node = 2 + static_cast<uint32_t>(group_of[i]);
        tax.nodes[node].members.push_back(names[i]);
        tax.node_of[names[i]] = node;
    }
    for (auto& node : tax.nodes) std::sort(node.members.begin(), node.members.end());

    // Subsumption between proper groups, from the matrix.
    size_t g = groups.size();
    auto rep = [&](size_t gi) { return groups[gi][0]; };
    std::vector<std::vector<bool>> below(g, std::vector<bool>(g, false));
    for (size_t a = 0; a < g; ++a) {
        for (size_t b = 0; b < g; ++b) {
            if (a != b) below[a][b] = subsumes[rep(a)][rep(b)];
        }
    }
    // Transitive reduction.
    for (size_t a = 0; a < g; ++a) {
        for (size_t b = 0; b < g; ++b) {
            if (!below[a][b]) continue;
            bool direct = true;
            for (size_t c = 0; c < g; ++c) {
                if (c != a && c != b && below[a][c] && below[c][b]) {
                    direct = false;
                    break;
                }
            }
            if (direct) {
                tax.nodes[2 + b].direct_subs.push_back(2 + static_cast<uint32_t>(a));
                tax.nodes[2 + a].direct_supers.push_back(2 + static_cast<uint32_t>(b));
            }
        }
    }
    // Anchor maximal groups under top and minimal groups above bottom.
    for (size_t a = 0; a < g; ++a) {
        if (tax.nodes[2 + a].direct_supers.empty()) {
            tax.nodes[2 + a].direct_supers.push_back(tax.top_node);
            tax.nodes[tax.top_node].direct_subs.push_back(2 + static_cast<uint32_t>(a));
        }
        if (tax.nodes[2 + a].direct_subs.empty()) {
            tax.nodes[2 + a].direct_subs.push_back(tax.bottom_node);
            tax.nodes[tax.bottom_node].direct_supers.push_back(
                2 + static_cast<uint32_t>(a));
        }
    }
    if (g == 0) {
        tax.nodes[tax.top_node].direct_subs.push_back(tax.bottom_node);
        tax.nodes[tax.bottom_node].direct_supers.push_back(tax.top_node);
    }

    // Deterministic edge order: by the smallest member name, empty nodes last.
    auto node_key = [&](uint32_t id) {
        const auto& m = tax.nodes[id].members;
        return m.empty() ? std::string("\x7f") : m.front();
    };
    for (auto& node : tax.nodes) {
        auto by_key = [&](uint32_t a, uint32_t b) { return node_key(a) < node_key(b); };
        std::sort(node.direct_subs.begin(), node.direct_subs.end(), by_key);
        std::sort(node.direct_supers.begin(), node.direct_supers.end(), by_key);
    }
    return tax;
}

namespace {

std::string node_label(const Taxonomy& tax, uint32_t id) {
    if (id == tax.top_node && tax.nodes[id].members.empty()) return "top";
    if (id == tax.bottom_node && tax.nodes[id].members.empty()) return "bot";
    std::string out;
    const auto& m = tax.nodes[id].members;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) out += " = ";
        out += m[i];
    }
    if (id == tax.top_node) out += " = top";
    if (id == tax.bottom_node) out += " = bot";
    return out;
}

void render_subtree(const Taxonomy& tax, uint32_t id, int depth, std::string& out) {
    out.append(static_cast<size_t>(depth) * 2, ' ');
    out += node_label(tax, id);
    out += "\n";
    for (uint32_t sub : tax.nodes[id].direct_subs) {
        if (sub == tax.bottom_node) continue;  // printed separately
        render_subtree(tax, sub, depth + 1, out);
    }
}

}  // namespace

std::string Taxonomy::render_text() const {
    std::string out;
    render_subtree(*this, top_node, 0, out);
    const auto& unsat = nodes[bottom_node].members;
    if (!unsat.empty()) {
        out += "unsatisfiable:";
        for (const auto& m : unsat) out += " " + m;
        out += "\n";
    }
    return out;
}

std::string Taxonomy::render_dot() const {
    std::string out = "digraph taxonomy {\n  rankdir=BT;\n";
    for (uint32_t id = 0; id < nodes.size(); ++id) {
        out += "  n" + std::to_string(id) + " [label=\"" + node_label(*this, id) +
               "\"];\n";
    }
    for (uint32_t id = 0; id < nodes.size(); ++id) {
        for (uint32_t super : nodes[id].direct_supers) {
            out += "  n" + std::to_string(id) + " -> n" + std::to_string(super) +
                   ";\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace defectont
