#pragma once

// Helpers shared by the unit tests. Nothing here calls into canonical_form:
// these are the independent oracles.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "unets/multigraph.hpp"

namespace testing_support {

using unets::EdgeId;
using unets::Label;
using unets::MultiGraph;
using unets::VertexId;

inline MultiGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges,
                             const std::map<int, Label>& labels = {}) {
    MultiGraph g;
    for (int i = 0; i < n; ++i) {
        auto it = labels.find(i);
        g.add_vertex(it == labels.end() ? 0 : it->second);
    }
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

// Unrooted quartet ab|cd: leaves 0..3 labelled a,b,c,d; internal 4,5.
inline MultiGraph quartet(Label a, Label b, Label c, Label d) {
    return make_graph(6, {{0, 4}, {1, 4}, {4, 5}, {2, 5}, {3, 5}}, {{0, a}, {1, b}, {2, c}, {3, d}});
}

// Rebuilds g with vertices and edges inserted in a random order.
template <class Rng>
MultiGraph shuffled(const MultiGraph& g, Rng& rng) {
    auto vs = g.vertices();
    std::shuffle(vs.begin(), vs.end(), rng);
    std::map<VertexId, VertexId> to;
    MultiGraph h;
    for (VertexId v : vs) to[v] = h.add_vertex(g.label(v));
    auto es = g.edges();
    std::shuffle(es.begin(), es.end(), rng);
    for (EdgeId e : es) {
        auto [u, v] = g.ends(e);
        if (rng() & 1) std::swap(u, v);
        h.add_edge(to[u], to[v]);
    }
    return h;
}

// Adjacency multiplicity matrix over dense indices.
inline std::vector<std::vector<int>> adjacency(const MultiGraph& g, std::vector<VertexId>& ids) {
    ids = g.vertices();
    std::map<VertexId, int> idx;
    for (std::size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> a(ids.size(), std::vector<int>(ids.size(), 0));
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        ++a[idx[u]][idx[v]];
        if (u != v) ++a[idx[v]][idx[u]];
    }
    return a;
}

// Backtracking over label-preserving bijections.
inline bool brute_isomorphic(const MultiGraph& g, const MultiGraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
    std::vector<VertexId> gi, hi;
    auto A = adjacency(g, gi);
    auto B = adjacency(h, hi);
    const int n = static_cast<int>(gi.size());
    std::vector<int> map(n, -1), used(n, 0);
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            if (g.label(gi[i]) != h.label(hi[j])) continue;
            bool ok = A[i][i] == B[j][j];
            for (int k = 0; ok && k < i; ++k) ok = A[i][k] == B[j][map[k]];
            if (!ok) continue;
            map[i] = j;
            used[j] = 1;
            if (self(self, i + 1)) return true;
            used[j] = 0;
        }
        map[i] = -1;
        return false;
    };
    return rec(rec, 0);
}

// Random multigraph with loops, parallel edges and a few labelled vertices
// of degree at most one.
template <class Rng>
MultiGraph random_multigraph(Rng& rng, int max_vertices = 9) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    const int n = nv(rng);
    const int core = std::max(1, n - static_cast<int>(rng() % 4));
    MultiGraph g;
    for (int i = 0; i < core; ++i) g.add_vertex();
    const int m = static_cast<int>(rng() % (2 * core + 1));
    for (int i = 0; i < m; ++i) g.add_edge(static_cast<VertexId>(rng() % core), static_cast<VertexId>(rng() % core));
    Label next = 1;
    for (int i = core; i < n; ++i) {
        const VertexId v = g.add_vertex(next++);
        if (rng() % 3 != 0) g.add_edge(v, static_cast<VertexId>(rng() % core));
    }
    return g;
}

// Binary tree on leaves 1..n from a leaf-insertion order: leaf k is attached
// by subdividing edge choice[k-4] of the current edge list.
inline MultiGraph tree_from_choices(int n, const std::vector<int>& choice) {
    MultiGraph g;
    const VertexId c = g.add_vertex();
    for (Label l = 1; l <= 3 && l <= static_cast<Label>(n); ++l) g.add_edge(c, g.add_vertex(l));
    for (int k = 4; k <= n; ++k) {
        auto es = g.edges();
        const VertexId w = g.subdivide(es[choice[k - 4] % es.size()]);
        g.add_edge(w, g.add_vertex(static_cast<Label>(k)));
    }
    return g;
}

// Random tree on n leaves plus r random edge additions (test-local
// generator, independent of the corpus module).
template <class Rng>
MultiGraph random_test_network(Rng& rng, int n, int r) {
    std::vector<int> choice;
    for (int k = 4; k <= n; ++k) choice.push_back(static_cast<int>(rng() % (2 * k - 5)));
    MultiGraph g = tree_from_choices(n, choice);
    for (int i = 0; i < r; ++i) {
        auto es = g.edges();
        const VertexId a = g.subdivide(es[rng() % es.size()]);
        es = g.edges();
        const VertexId b = g.subdivide(es[rng() % es.size()]);
        g.add_edge(a, b);
    }
    return g;
}

// Cuts k random edges of a network and cleans up: unlabelled vertices of
// degree at most one are deleted and degree-2 vertices suppressed. Returns
// the components, or nothing when a bare cycle is left over.
template <class Rng>
std::optional<std::vector<MultiGraph>> random_agreement_parts(Rng& rng, MultiGraph g, int k) {
    for (int i = 0; i < k; ++i) {
        auto es = g.edges();
        g.erase_edge(es[rng() % es.size()]);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (VertexId v : g.vertices()) {
            if (g.label(v) != 0) continue;
            if (g.degree(v) <= 1) {
                while (!g.incident(v).empty()) g.erase_edge(g.incident(v)[0]);
                g.erase_vertex(v);
                changed = true;
            } else if (g.degree(v) == 2) {
                if (g.incident(v)[0] == g.incident(v)[1]) return std::nullopt;
                g.suppress(v);
                changed = true;
            }
            if (changed) break;
        }
    }
    std::size_t count = 0;
    const auto comp = unets::component_index(g, &count);
    std::vector<MultiGraph> parts(count);
    std::map<VertexId, VertexId> to;
    for (VertexId v : g.vertices()) to[v] = parts[comp[v]].add_vertex(g.label(v));
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.ends(e);
        parts[comp[u]].add_edge(to[u], to[v]);
    }
    return parts;
}

}  // namespace testing_support
