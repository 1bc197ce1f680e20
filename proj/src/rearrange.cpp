#include "unets/rearrange.hpp"

#include <unordered_map>

#include "generate.hpp"

namespace unets {

const char* kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::TBR0: return "TBR0";
        case MoveKind::TBRplus: return "TBRplus";
        case MoveKind::TBRminus: return "TBRminus";
        case MoveKind::PR0: return "PR0";
        case MoveKind::ReplugH: return "ReplugH";
        case MoveKind::ReplugPlus: return "ReplugPlus";
        case MoveKind::ReplugMinus: return "ReplugMinus";
    }
    return "unknown";
}

namespace {

std::string attachment_text(const Attachment& a) {
    switch (a.kind) {
        case Attachment::Kind::Edge: return "e" + std::to_string(a.id);
        case Attachment::Kind::Singleton: return "v" + std::to_string(a.id);
        case Attachment::Kind::None: break;
    }
    return "-";
}

std::vector<Neighbor> collect(const MultiGraph& g, gen::Space space, std::size_t n, KindSet kinds) {
    const CanonicalCode self = canonical_form(g);
    std::vector<Neighbor> out;
    std::unordered_map<CanonicalCode, std::size_t, CodeHash> index;
    gen::neighbours(g, space, n, kinds, [&](const Move& m, const MultiGraph& h) {
        CanonicalCode c = canonical_form(h);
        if (c == self) return;
        auto it = index.find(c);
        if (it != index.end()) {
            if (m < out[it->second].move) {
                out[it->second].move = m;
                out[it->second].graph = h;
            }
            return;
        }
        index.emplace(c, out.size());
        out.push_back({m, h, std::move(c)});
    });
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) { return a.move < b.move; });
    return out;
}

VertexId attach(MultiGraph& g, const Attachment& a) {
    switch (a.kind) {
        case Attachment::Kind::Edge: return g.subdivide(a.id);
        case Attachment::Kind::Singleton:
            if (!g.has_vertex(a.id) || g.label(a.id) == 0 || g.degree(a.id) != 0)
                throw GraphError("attachment vertex is not a labelled singleton");
            return a.id;
        case Attachment::Kind::None: break;
    }
    throw GraphError("missing attachment");
}

}  // namespace

std::string Move::describe() const {
    std::string s = kind_name(kind);
    if (edge != kNoEdge) s += " edge=e" + std::to_string(edge);
    if (at != kNoVertex) s += " at=v" + std::to_string(at);
    if (first.kind != Attachment::Kind::None) s += " first=" + attachment_text(first);
    if (second.kind != Attachment::Kind::None) s += " second=" + attachment_text(second);
    return s;
}

std::vector<Neighbor> tbr_neighbors(const PhyloNetwork& n, KindSet kinds) {
    kinds.remove(MoveKind::PR0);
    return collect(n.graph(), gen::Space::Network, n.leaf_count(), kinds);
}

std::vector<Neighbor> pr_neighbors(const PhyloNetwork& n, KindSet kinds) {
    kinds.remove(MoveKind::TBR0);
    return collect(n.graph(), gen::Space::Network, n.leaf_count(), kinds);
}

std::vector<Neighbor> replug_neighbors(const ReplugNetwork& m, KindSet kinds) {
    return collect(m.graph(), gen::Space::Replug, m.leaf_count(), kinds);
}

MultiGraph apply(const Move& m, const MultiGraph& src) {
    try {
        MultiGraph g = src;
        switch (m.kind) {
            case MoveKind::TBR0:
                if (m.at == kNoVertex) {
                    if (!g.has_edge(m.edge)) throw GraphError("unknown edge");
                    const auto [u, v] = g.ends(m.edge);
                    if (g.label(u) != 0 || g.label(v) != 0) throw GraphError("TBR0 without endpoint needs an internal edge");
                    detail::remove_in_place(g, m.edge);
                    const VertexId a = attach(g, m.first);
                    const VertexId b = attach(g, m.second);
                    g.add_edge(a, b);
                    return g;
                }
                [[fallthrough]];
            case MoveKind::PR0:
            case MoveKind::ReplugH: {
                if (m.kind == MoveKind::TBR0 || m.kind == MoveKind::PR0) {
                    if (!g.has_vertex(m.at) || g.label(m.at) != 0)
                        throw GraphError("prune endpoint must be an internal vertex");
                }
                const PruneResult pr = detail::prune_in_place(g, m.edge, m.at);
                if (m.first.kind == Attachment::Kind::Edge)
                    detail::regraft_in_place(g, pr.sprout, m.first.id);
                else if (m.first.kind == Attachment::Kind::Singleton)
                    detail::regraft_singleton_in_place(g, pr.sprout, m.first.id);
                else
                    throw GraphError("missing regraft target");
                return g;
            }
            case MoveKind::TBRplus:
            case MoveKind::ReplugPlus: {
                const VertexId a = attach(g, m.first);
                const VertexId b = attach(g, m.second);
                g.add_edge(a, b);
                return g;
            }
            case MoveKind::TBRminus:
            case MoveKind::ReplugMinus:
                detail::remove_in_place(g, m.edge);
                return g;
        }
    } catch (const GraphError& e) {
        throw MoveError(m.describe() + ": " + e.what());
    }
    throw MoveError("unknown move kind");
}

PhyloNetwork apply(const Move& m, const PhyloNetwork& src) {
    if (m.kind == MoveKind::ReplugH || m.kind == MoveKind::ReplugPlus || m.kind == MoveKind::ReplugMinus)
        throw MoveError(m.describe() + ": replug move applied to a network");
    MultiGraph g = apply(m, src.graph());
    if (!detail::valid_network(g, src.leaf_count())) {
        try {
            validate_network(g);
        } catch (const NetworkError& e) {
            throw MoveError(m.describe() + ": result is not a valid network (" + e.what() + ")");
        }
        throw MoveError(m.describe() + ": result is not a valid network");
    }
    return detail_trust(std::move(g), src.leaf_count());
}

ReplugNetwork apply(const Move& m, const ReplugNetwork& src) {
    if (m.kind != MoveKind::ReplugH && m.kind != MoveKind::ReplugPlus && m.kind != MoveKind::ReplugMinus)
        throw MoveError(m.describe() + ": network move applied to a replug network");
    MultiGraph g = apply(m, src.graph());
    if (!detail::valid_replug(g, src.leaf_count()))
        throw MoveError(m.describe() + ": result is not a valid replug network");
    return detail_trust_replug(std::move(g), src.leaf_count());
}

std::vector<MultiGraph> RearrangementSequence::replay() const {
    std::vector<MultiGraph> out{start};
    const std::size_t n = start.labelled_vertices().size();
    for (const Move& m : moves) {
        MultiGraph next = apply(m, out.back());
        const bool ok = replug ? detail::valid_replug(next, n) : detail::valid_network(next, n);
        if (!ok) throw MoveError(m.describe() + ": intermediate is not valid");
        out.push_back(std::move(next));
    }
    if (canonical_form(out.back()) != canonical_form(end)) throw MoveError("sequence does not end at its target");
    return out;
}

}  // namespace unets
