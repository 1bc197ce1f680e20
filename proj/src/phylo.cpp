#include "unets/phylo.hpp"

#include <algorithm>
#include <vector>

namespace unets {

namespace {

struct BridgeInfo {
    EdgeId edge;
    std::size_t below;  // labelled vertices on the child side
};

// Iterative Tarjan over edge ids (parallel edges are not bridges, loops are
// skipped). Returns bridges of the components reached from every vertex;
// `reached` receives the number of vertices visited from the first root.
std::vector<BridgeInfo> bridges(const MultiGraph& g, std::size_t* first_component_size) {
    const VertexId bound = g.vertex_bound();
    std::vector<int> disc(bound, -1), low(bound, 0);
    std::vector<std::size_t> below(bound, 0);
    std::vector<BridgeInfo> out;
    struct Frame {
        VertexId v;
        EdgeId via;
        std::size_t next;
    };
    std::vector<Frame> stack;
    int clock = 0;
    bool first = true;
    for (VertexId root = 0; root < bound; ++root) {
        if (!g.has_vertex(root) || disc[root] >= 0) continue;
        const int start_clock = clock;
        disc[root] = low[root] = clock++;
        below[root] = g.label(root) ? 1 : 0;
        stack.push_back({root, kNoEdge, 0});
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto inc = g.incident(f.v);
            if (f.next < inc.size()) {
                const EdgeId e = inc[f.next++];
                if (e == f.via || g.is_loop(e)) continue;
                const VertexId w = g.other_end(e, f.v);
                if (disc[w] < 0) {
                    disc[w] = low[w] = clock++;
                    below[w] = g.label(w) ? 1 : 0;
                    stack.push_back({w, e, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[w]);
                }
                continue;
            }
            const Frame done = f;
            stack.pop_back();
            if (stack.empty()) break;
            Frame& parent = stack.back();
            low[parent.v] = std::min(low[parent.v], low[done.v]);
            below[parent.v] += below[done.v];
            if (low[done.v] > disc[parent.v]) out.push_back({done.via, below[done.v]});
        }
        if (first && first_component_size) *first_component_size = static_cast<std::size_t>(clock - start_clock);
        first = false;
    }
    return out;
}

// Degree and labelling clauses. Returns the number of leaves or throws.
std::size_t check_degrees_and_labels(const MultiGraph& g) {
    std::size_t labelled = 0;
    Label max_label = 0;
    std::vector<char> seen;
    for (VertexId v : g.vertices()) {
        const Label l = g.label(v);
        const std::size_t d = g.degree(v);
        if (l != 0) {
            if (d != 1)
                throw NetworkError(NetworkClause::Degree, "labelled vertex " + std::to_string(v) + " has degree " +
                                                              std::to_string(d) + ", expected 1");
            ++labelled;
            max_label = std::max(max_label, l);
            if (seen.size() <= l) seen.resize(l + 1, 0);
            if (seen[l]) throw NetworkError(NetworkClause::Labelling, "label " + std::to_string(l) + " used twice");
            seen[l] = 1;
        } else if (d == 1) {
            throw NetworkError(NetworkClause::Labelling, "vertex " + std::to_string(v) + " is an unlabelled leaf");
        } else if (d != 3) {
            throw NetworkError(NetworkClause::Degree, "unlabelled vertex " + std::to_string(v) + " has degree " +
                                                          std::to_string(d) + ", expected 3");
        }
    }
    if (max_label != labelled)
        throw NetworkError(NetworkClause::Labelling, "leaf labels are not exactly 1.." + std::to_string(labelled));
    if (labelled == 0) throw NetworkError(NetworkClause::Labelling, "network has no leaves");
    return labelled;
}

}  // namespace

const char* clause_name(NetworkClause c) {
    switch (c) {
        case NetworkClause::Connectivity: return "connectivity";
        case NetworkClause::Degree: return "degree";
        case NetworkClause::Labelling: return "labelling";
        case NetworkClause::Properness: return "properness";
    }
    return "unknown";
}

std::size_t cyclomatic_number(const MultiGraph& g) {
    return g.edge_count() + component_count(g) - g.vertex_count();
}

long ReplugNetwork::tier() const {
    return static_cast<long>(graph_.edge_count()) - static_cast<long>(graph_.vertex_count()) + 1;
}

std::size_t tier(const PhyloNetwork& n) { return n.tier(); }

bool is_tree(const PhyloNetwork& n) { return n.tier() == 0; }

PhyloNetwork detail_trust(MultiGraph g, std::size_t leaves) {
    const std::size_t r = g.edge_count() + 1 - g.vertex_count();
    return PhyloNetwork(std::move(g), leaves, r);
}

ReplugNetwork detail_trust_replug(MultiGraph g, std::size_t leaves) { return ReplugNetwork(std::move(g), leaves); }

std::vector<EdgeId> cut_edges(const MultiGraph& g) {
    std::vector<EdgeId> out;
    for (const auto& b : bridges(g, nullptr)) out.push_back(b.edge);
    std::sort(out.begin(), out.end());
    return out;
}

ProperResult is_proper(const MultiGraph& g) {
    std::size_t reached = 0;
    auto bs = bridges(g, &reached);
    if (g.vertex_count() == 0 || reached != g.vertex_count())
        throw NetworkError(NetworkClause::Connectivity, "is_proper requires a connected graph");
    const std::size_t total = g.labelled_vertices().size();
    std::optional<EdgeId> witness;
    for (const auto& b : bs)
        if (b.below == 0 || b.below == total)
            if (!witness || b.edge < *witness) witness = b.edge;
    return {!witness.has_value(), witness};
}

PhyloNetwork validate_network(const MultiGraph& g) {
    if (g.vertex_count() == 0) throw NetworkError(NetworkClause::Connectivity, "graph is empty");
    if (!is_connected(g))
        throw NetworkError(NetworkClause::Connectivity,
                           "graph has " + std::to_string(component_count(g)) + " connected components");
    const std::size_t n = check_degrees_and_labels(g);
    const ProperResult p = is_proper(g);
    if (!p.proper)
        throw NetworkError(NetworkClause::Properness,
                           "cut-edge " + std::to_string(*p.witness) + " does not separate two labelled leaves",
                           p.witness);
    const std::size_t r = g.edge_count() + 1 - g.vertex_count();
    return PhyloNetwork(g, n, r);
}

ReplugNetwork validate_replug(const MultiGraph& g) {
    std::size_t labelled = 0;
    Label max_label = 0;
    std::vector<char> seen;
    for (VertexId v : g.vertices()) {
        const Label l = g.label(v);
        const std::size_t d = g.degree(v);
        if (l != 0) {
            if (d > 1) throw NetworkError(NetworkClause::Degree, "labelled vertex " + std::to_string(v) + " has degree " + std::to_string(d));
            ++labelled;
            max_label = std::max(max_label, l);
            if (seen.size() <= l) seen.resize(l + 1, 0);
            if (seen[l]) throw NetworkError(NetworkClause::Labelling, "label " + std::to_string(l) + " used twice");
            seen[l] = 1;
        } else if (d == 1) {
            throw NetworkError(NetworkClause::Labelling, "vertex " + std::to_string(v) + " is an unlabelled leaf");
        } else if (d != 3) {
            throw NetworkError(NetworkClause::Degree, "unlabelled vertex " + std::to_string(v) + " has degree " + std::to_string(d));
        }
    }
    if (max_label != labelled || labelled == 0)
        throw NetworkError(NetworkClause::Labelling, "labels are not exactly 1.." + std::to_string(labelled));
    return ReplugNetwork(g, labelled);
}

namespace detail {

bool valid_network(const MultiGraph& g, std::size_t n) {
    std::size_t leaves = 0;
    for (VertexId v = 0; v < g.vertex_bound(); ++v) {
        if (!g.has_vertex(v)) continue;
        if (g.label(v) != 0) {
            if (g.degree(v) != 1) return false;
            ++leaves;
        } else if (g.degree(v) != 3) {
            return false;
        }
    }
    if (leaves != n) return false;
    std::size_t reached = 0;
    auto bs = bridges(g, &reached);
    if (reached != g.vertex_count()) return false;
    for (const auto& b : bs)
        if (b.below == 0 || b.below == n) return false;
    return true;
}

bool valid_replug(const MultiGraph& g, std::size_t n) {
    std::size_t labelled = 0;
    for (VertexId v = 0; v < g.vertex_bound(); ++v) {
        if (!g.has_vertex(v)) continue;
        if (g.label(v) != 0) {
            if (g.degree(v) > 1) return false;
            ++labelled;
        } else if (g.degree(v) != 3) {
            return false;
        }
    }
    return labelled == n;
}

}  // namespace detail

}  // namespace unets
