#pragma once

// Raw neighbourhood enumeration shared by the public generators and the
// search engines. Visitors receive every valid candidate in increasing Move
// order; duplicates and the source itself are not filtered here.

#include <vector>

#include "unets/multigraph.hpp"
#include "unets/phylo.hpp"
#include "unets/rearrange.hpp"

namespace unets::gen {

enum class Space { Network, Replug };

inline bool valid(Space s, const MultiGraph& g, std::size_t n) {
    return s == Space::Network ? detail::valid_network(g, n) : detail::valid_replug(g, n);
}

// Subdivides f1 and then each admissible second edge, joining the two new
// vertices. Pairs are unordered: the second edge is a later original edge
// or the first half of f1 (both halves give the same graph).
template <class Visit>
void add_edge_pairs(const MultiGraph& base, Space space, std::size_t n, MoveKind kind, const Move& proto,
                    bool with_singletons, Visit&& visit) {
    const EdgeId bound = base.edge_bound();
    std::vector<VertexId> singletons;
    if (with_singletons)
        for (VertexId v : base.vertices())
            if (base.label(v) != 0 && base.degree(v) == 0) singletons.push_back(v);
    for (EdgeId f1 = 0; f1 < bound; ++f1) {
        if (!base.has_edge(f1)) continue;
        MultiGraph h1 = base;
        EdgeId half = kNoEdge;
        const VertexId u = h1.subdivide(f1, &half, nullptr);
        auto emit = [&](MultiGraph& h, Attachment second) {
            if (!valid(space, h, n)) return;
            Move m = proto;
            m.kind = kind;
            m.first = Attachment::edge(f1);
            m.second = second;
            visit(m, h);
        };
        for (EdgeId f2 = f1 + 1; f2 < bound; ++f2) {
            if (!h1.has_edge(f2)) continue;
            MultiGraph h2 = h1;
            const VertexId w = h2.subdivide(f2);
            h2.add_edge(u, w);
            emit(h2, Attachment::edge(f2));
        }
        {
            MultiGraph h2 = h1;
            const VertexId w = h2.subdivide(half);
            h2.add_edge(u, w);
            emit(h2, Attachment::edge(half));
        }
        for (VertexId y : singletons) {
            MultiGraph h2 = h1;
            h2.add_edge(u, y);
            emit(h2, Attachment::singleton(y));
        }
    }
    for (std::size_t i = 0; i < singletons.size(); ++i)
        for (std::size_t j = i + 1; j < singletons.size(); ++j) {
            MultiGraph h = base;
            h.add_edge(singletons[i], singletons[j]);
            if (!valid(space, h, n)) continue;
            Move m = proto;
            m.kind = kind;
            m.first = Attachment::singleton(singletons[i]);
            m.second = Attachment::singleton(singletons[j]);
            visit(m, h);
        }
}

// Prunes e at x and regrafts the sprout to every edge (optionally to its own
// stem) and, if requested, to every labelled singleton.
template <class Visit>
void prune_regraft(const MultiGraph& g, Space space, std::size_t n, MoveKind kind, EdgeId e, VertexId x,
                   bool allow_own_stem, bool with_singletons, Visit&& visit) {
    MultiGraph h = g;
    const PruneResult pr = detail::prune_in_place(h, e, x);
    const EdgeId bound = h.edge_bound();
    for (EdgeId f = 0; f < bound; ++f) {
        if (!h.has_edge(f)) continue;
        if (f == pr.edge && !allow_own_stem) continue;
        MultiGraph k = h;
        detail::regraft_in_place(k, pr.sprout, f);
        if (!valid(space, k, n)) continue;
        visit(Move{kind, e, x, Attachment::edge(f), {}}, k);
    }
    if (!with_singletons) return;
    for (VertexId y = 0; y < h.vertex_bound(); ++y) {
        if (!h.has_vertex(y) || h.label(y) == 0 || h.degree(y) != 0) continue;
        MultiGraph k = h;
        detail::regraft_singleton_in_place(k, pr.sprout, y);
        if (!valid(space, k, n)) continue;
        visit(Move{kind, e, x, Attachment::singleton(y), {}}, k);
    }
}

template <class Visit>
void tbr0(const MultiGraph& g, std::size_t n, Visit&& visit) {
    for (EdgeId e = 0; e < g.edge_bound(); ++e) {
        if (!g.has_edge(e)) continue;
        const auto [u, v] = g.ends(e);
        const bool lu = g.label(u) != 0;
        const bool lv = g.label(v) != 0;
        if (lu && lv) continue;
        if (lu || lv) {
            prune_regraft(g, Space::Network, n, MoveKind::TBR0, e, lu ? v : u, false, false, visit);
            continue;
        }
        MultiGraph h = g;
        detail::remove_in_place(h, e);
        Move proto;
        proto.edge = e;
        add_edge_pairs(h, Space::Network, n, MoveKind::TBR0, proto, false, visit);
    }
}

template <class Visit>
void plus(const MultiGraph& g, Space space, std::size_t n, Visit&& visit) {
    const MoveKind kind = space == Space::Network ? MoveKind::TBRplus : MoveKind::ReplugPlus;
    add_edge_pairs(g, space, n, kind, Move{}, space == Space::Replug, visit);
}

template <class Visit>
void minus(const MultiGraph& g, Space space, std::size_t n, Visit&& visit) {
    const MoveKind kind = space == Space::Network ? MoveKind::TBRminus : MoveKind::ReplugMinus;
    for (EdgeId e = 0; e < g.edge_bound(); ++e) {
        if (!g.has_edge(e)) continue;
        MultiGraph h = g;
        detail::remove_in_place(h, e);
        if (!valid(space, h, n)) continue;
        visit(Move{kind, e, kNoVertex, {}, {}}, h);
    }
}

template <class Visit>
void pr0(const MultiGraph& g, std::size_t n, Visit&& visit) {
    for (EdgeId e = 0; e < g.edge_bound(); ++e) {
        if (!g.has_edge(e)) continue;
        auto [u, v] = g.ends(e);
        if (u > v) std::swap(u, v);
        for (VertexId x : {u, v}) {
            if (g.label(x) != 0) continue;
            prune_regraft(g, Space::Network, n, MoveKind::PR0, e, x, false, false, visit);
        }
    }
}

template <class Visit>
void replug_horizontal(const MultiGraph& g, std::size_t n, Visit&& visit) {
    for (EdgeId e = 0; e < g.edge_bound(); ++e) {
        if (!g.has_edge(e)) continue;
        auto [u, v] = g.ends(e);
        if (u > v) std::swap(u, v);
        for (int side = 0; side < (u == v ? 1 : 2); ++side) {
            const VertexId x = side == 0 ? u : v;
            const bool leaf = g.label(x) != 0 && g.degree(x) == 1;
            const bool inner = g.label(x) == 0 && g.degree(x) == 3;
            if (!leaf && !inner) continue;
            prune_regraft(g, Space::Replug, n, MoveKind::ReplugH, e, x, true, true, visit);
        }
    }
}

// All requested kinds in increasing kind order.
template <class Visit>
void neighbours(const MultiGraph& g, Space space, std::size_t n, KindSet kinds, Visit&& visit) {
    if (space == Space::Network) {
        if (kinds.has(MoveKind::TBR0)) tbr0(g, n, visit);
        if (kinds.has(MoveKind::TBRplus)) plus(g, space, n, visit);
        if (kinds.has(MoveKind::TBRminus)) minus(g, space, n, visit);
        if (kinds.has(MoveKind::PR0)) pr0(g, n, visit);
    } else {
        if (kinds.has(MoveKind::ReplugH)) replug_horizontal(g, n, visit);
        if (kinds.has(MoveKind::ReplugPlus)) plus(g, space, n, visit);
        if (kinds.has(MoveKind::ReplugMinus)) minus(g, space, n, visit);
    }
}

}  // namespace unets::gen
