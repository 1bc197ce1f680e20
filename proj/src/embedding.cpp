#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "unets/agreement.hpp"
#include "unets/canonical.hpp"

namespace unets {

namespace {

bool is_sprout(const MultiGraph& g, VertexId v) { return g.label(v) == 0 && g.degree(v) == 1; }

// Vertices visited by a trail of host edges starting at `start`.
std::optional<std::vector<VertexId>> walk(const MultiGraph& host, const std::vector<EdgeId>& trail, VertexId start) {
    std::vector<VertexId> out{start};
    VertexId cur = start;
    for (EdgeId h : trail) {
        if (!host.has_edge(h)) return std::nullopt;
        const auto [u, v] = host.ends(h);
        if (u == cur)
            cur = v;
        else if (v == cur)
            cur = u;
        else
            return std::nullopt;
        out.push_back(cur);
    }
    return out;
}

std::vector<EdgeId> reversed(std::vector<EdgeId> t) {
    std::reverse(t.begin(), t.end());
    return t;
}

// Trail of pattern edge e read from its end `from`.
std::vector<EdgeId> trail_from(const AgreementEmbedding& emb, EdgeId e, VertexId from) {
    return emb.pattern.ends(e).u == from ? emb.edge_image[e] : reversed(emb.edge_image[e]);
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

std::set<Label> labels_of(const MultiGraph& g) {
    std::set<Label> out;
    for (VertexId v : g.labelled_vertices()) out.insert(g.label(v));
    return out;
}

// For every host vertex, the pattern edge whose trail passes through it.
std::vector<EdgeId> passing_edges(const AgreementEmbedding& emb, const MultiGraph& host) {
    std::vector<EdgeId> pass(host.vertex_bound(), kNoEdge);
    for (EdgeId e : emb.pattern.edges()) {
        auto vs = walk(host, emb.edge_image[e], emb.vertex_image[emb.pattern.ends(e).u]);
        for (std::size_t i = 1; i + 1 < vs->size(); ++i) pass[(*vs)[i]] = e;
    }
    return pass;
}

}  // namespace

std::size_t AgreementGraph::sprouts() const {
    std::size_t s = 0;
    for (const MultiGraph& g : subgraphs) s += sprout_count(g);
    return s;
}

MultiGraph AgreementGraph::assemble(std::size_t disagreement) const {
    MultiGraph out;
    for (const MultiGraph& g : subgraphs) {
        std::vector<VertexId> map(g.vertex_bound(), kNoVertex);
        for (VertexId v : g.vertices()) map[v] = out.add_vertex(g.label(v));
        for (EdgeId e : g.edges()) out.add_edge(map[g.ends(e).u], map[g.ends(e).v]);
    }
    for (std::size_t i = 0; i < disagreement; ++i) {
        const VertexId a = out.add_vertex();
        out.add_edge(a, out.add_vertex());
    }
    return out;
}

std::size_t AgreementEmbedding::subgraph_count() const { return component_count(pattern) - disagreement.size(); }

std::optional<std::string> embedding_defect(const AgreementEmbedding& emb, const MultiGraph& host,
                                            AgreementMode mode) {
    const MultiGraph& p = emb.pattern;
    if (emb.vertex_image.size() != p.vertex_bound() || emb.edge_image.size() != p.edge_bound())
        return "image tables do not match the pattern";
    std::vector<char> is_dis(p.edge_bound(), 0);
    for (EdgeId e : emb.disagreement) {
        if (!p.has_edge(e) || is_dis[e]) return "bad disagreement edge list";
        const auto [u, v] = p.ends(e);
        if (u == v || !is_sprout(p, u) || !is_sprout(p, v)) return "disagreement edge e" + std::to_string(e) + " is not a single edge on two sprouts";
        is_dis[e] = 1;
    }
    if (labels_of(p) != labels_of(host)) return "labels differ";
    std::vector<std::vector<VertexId>> at(host.vertex_bound());
    for (VertexId x : p.vertices()) {
        const VertexId h = emb.vertex_image[x];
        if (!host.has_vertex(h)) return "vertex v" + std::to_string(x) + " has no image";
        if (p.label(x) != 0 && host.label(h) != p.label(x)) return "label " + std::to_string(p.label(x)) + " misplaced";
        if (p.label(x) == 0 && p.degree(x) != 1 && p.degree(x) != 3)
            return "unlabelled pattern vertex v" + std::to_string(x) + " of degree " + std::to_string(p.degree(x));
        if (p.label(x) == 0 && p.degree(x) == 3 && (host.label(h) != 0 || host.degree(h) != 3))
            return "branch vertex v" + std::to_string(x) + " on a leaf";
        at[h].push_back(x);
    }
    std::vector<int> cover(host.edge_bound(), 0);
    std::vector<int> passes(host.vertex_bound(), 0);
    for (EdgeId e : p.edges()) {
        const auto [u, v] = p.ends(e);
        if (emb.edge_image[e].empty()) return "edge e" + std::to_string(e) + " has an empty image";
        auto vs = walk(host, emb.edge_image[e], emb.vertex_image[u]);
        if (!vs || vs->back() != emb.vertex_image[v]) return "image of e" + std::to_string(e) + " is not a trail between its ends";
        for (EdgeId h : emb.edge_image[e]) ++cover[h];
        for (std::size_t i = 1; i + 1 < vs->size(); ++i) ++passes[(*vs)[i]];
    }
    for (EdgeId h : host.edges())
        if (cover[h] != 1) return "host edge e" + std::to_string(h) + " covered " + std::to_string(cover[h]) + " times";
    for (EdgeId h = 0; h < host.edge_bound(); ++h)
        if (!host.has_edge(h) && h < cover.size() && cover[h]) return "image uses a missing host edge";
    for (VertexId h : host.vertices()) {
        const auto& xs = at[h];
        if (xs.size() > 2) return "more than two vertices on host v" + std::to_string(h);
        if (xs.size() == 2) {
            const bool ok = host.degree(h) == 1 &&
                            ((is_sprout(p, xs[0]) && p.label(xs[1]) != 0 && p.degree(xs[1]) == 0) ||
                             (is_sprout(p, xs[1]) && p.label(xs[0]) != 0 && p.degree(xs[0]) == 0));
            if (!ok) return "host v" + std::to_string(h) + " carries two vertices that are not a sprout and a singleton";
        }
    }
    for (VertexId x : p.vertices()) {
        if (!is_sprout(p, x)) continue;
        const VertexId h = emb.vertex_image[x];
        const bool on_singleton = at[h].size() == 2;
        if (passes[h] == 0 && !on_singleton) return "sprout v" + std::to_string(x) + " is not attached";
        if (mode == AgreementMode::MAG && !is_dis[p.incident(x)[0]])
            return "agreement subgraph has a sprout (v" + std::to_string(x) + ")";
    }
    return std::nullopt;
}

std::optional<std::string> ordered_defect(const AgreementEmbedding& emb, const MultiGraph& host, AgreementMode mode) {
    if (auto d = embedding_defect(emb, host, mode)) return d;
    const MultiGraph& p = emb.pattern;
    const std::vector<EdgeId> pass = passing_edges(emb, host);
    std::size_t ncomp = 0;
    const std::vector<std::size_t> comp = component_index(p, &ncomp);
    std::vector<std::size_t> order(p.edge_bound(), 0);  // 1-based position among disagreement edges
    for (std::size_t i = 0; i < emb.disagreement.size(); ++i) order[emb.disagreement[i]] = i + 1;

    // Target of a sprout: the pattern edge passing its image, or kNoEdge for
    // a singleton leaf (then *single gets the singleton).
    auto target = [&](VertexId x, VertexId* single) {
        const VertexId h = emb.vertex_image[x];
        if (pass[h] != kNoEdge) return pass[h];
        for (VertexId y : p.vertices())
            if (y != x && emb.vertex_image[y] == h) *single = y;
        return kNoEdge;
    };

    if (mode == AgreementMode::MEAG) {
        for (VertexId x : p.vertices()) {
            if (!is_sprout(p, x)) continue;
            VertexId single = kNoVertex;
            const EdgeId t = target(x, &single);
            const std::size_t own = order[p.incident(x)[0]];
            if (t == kNoEdge || order[t] == 0) continue;
            if (own == 0) return "subgraph sprout v" + std::to_string(x) + " attached to a disagreement edge";
            if (order[t] > own) return "E_" + std::to_string(own) + " attached to the later E_" + std::to_string(order[t]);
        }
        return std::nullopt;
    }

    const std::size_t m = emb.subgraph_count();
    // Nodes 0..ncomp-1 are pattern components (disagreement edges are their
    // own components), merged as disagreement edges are placed.
    UnionFind uf(ncomp);
    for (std::size_t i = 0; i < emb.disagreement.size(); ++i) {
        const EdgeId e = emb.disagreement[i];
        const auto [a, b] = p.ends(e);
        std::size_t nodes[2];
        int idx = 0;
        for (VertexId x : {a, b}) {
            VertexId single = kNoVertex;
            const EdgeId t = target(x, &single);
            const std::string name = "E_" + std::to_string(i + 1);
            if (t != kNoEdge && order[t] != 0 && order[t] >= i + 1) {
                if (order[t] == i + 1) return name + " is attached to itself";
                return name + " is attached to the later E_" + std::to_string(order[t]);
            }
            if (i == 0 && t != kNoEdge && order[t] != 0) return "E_1 is attached to a disagreement edge";
            nodes[idx++] = comp[t != kNoEdge ? p.ends(t).u : single];
        }
        if (i + 1 < m) {
            if (uf.find(nodes[0]) == uf.find(nodes[1]))
                return "E_" + std::to_string(i + 1) + " does not join two components";
        }
        uf.unite(nodes[0], comp[a]);
        uf.unite(nodes[1], comp[a]);
    }
    return std::nullopt;
}

std::optional<AgreementEmbedding> check_agreement_embedding(const AgreementGraph& g, const PhyloNetwork& net,
                                                            std::size_t allowed) {
    const MultiGraph& host = net.graph();
    {
        std::vector<Label> ls;
        for (const MultiGraph& s : g.subgraphs)
            for (VertexId v : s.labelled_vertices()) ls.push_back(s.label(v));
        std::sort(ls.begin(), ls.end());
        std::vector<Label> hl;
        for (Label l : labels_of(host)) hl.push_back(l);
        if (ls != hl) throw AgreementError("check_agreement_embedding: labels of the agreement graph and the host differ");
    }
    if (g.mode == AgreementMode::MAG && g.sprouts() != 0) return std::nullopt;
    const MultiGraph pattern = g.assemble(allowed);

    std::size_t sprouts = 0, singles = 0, branches = 0;
    std::set<Label> singleton_labels;
    for (VertexId x : pattern.vertices()) {
        if (is_sprout(pattern, x)) ++sprouts;
        else if (pattern.label(x) == 0 && pattern.degree(x) == 3) ++branches;
        else if (pattern.label(x) == 0) return std::nullopt;
        if (pattern.label(x) != 0 && pattern.degree(x) == 0) {
            ++singles;
            singleton_labels.insert(pattern.label(x));
        }
    }
    if (singles > sprouts) return std::nullopt;
    const std::size_t junctions = sprouts - singles;
    std::vector<VertexId> internal;
    for (VertexId v : host.vertices())
        if (host.label(v) == 0) internal.push_back(v);
    if (internal.size() != junctions + branches) return std::nullopt;
    const std::uint64_t target_hash = invariant_hash(pattern);

    // Roles: every internal host vertex is the image of a branch vertex or a
    // junction where one trail passes and one ends (with a sprout). Leaves
    // carrying a singleton hold a sprout, other leaves a labelled leaf.
    std::vector<int> end_slot(host.vertex_bound(), -1);  // -1 = branch
    std::vector<std::size_t> chosen(junctions);

    struct Trail {
        std::vector<EdgeId> edges;
        VertexId from, to;
        bool from_end_slot, to_end_slot;
    };

    auto stops = [&](VertexId v, EdgeId h, bool* at_slot) {
        *at_slot = false;
        if (host.label(v) != 0 || end_slot[v] < 0) return true;
        if (host.incident(v)[end_slot[v]] == h) {
            *at_slot = true;
            return true;
        }
        return false;
    };
    auto pass_on = [&](VertexId v, EdgeId h) {
        auto inc = host.incident(v);
        for (int s = 0; s < 3; ++s)
            if (s != end_slot[v] && inc[s] != h) return inc[s];
        return kNoEdge;
    };

    auto attempt = [&]() -> std::optional<AgreementEmbedding> {
        std::vector<char> seen(host.edge_bound(), 0);
        std::vector<Trail> trails;
        for (EdgeId h : host.edges()) {
            if (seen[h]) continue;
            seen[h] = 1;
            Trail t;
            std::deque<EdgeId> seq{h};
            // forward from ends(h).v, then backward from ends(h).u
            VertexId fwd = host.ends(h).v, back = host.ends(h).u;
            EdgeId cur = h;
            bool slot = false;
            while (!stops(fwd, cur, &slot)) {
                cur = pass_on(fwd, cur);
                if (seen[cur]) return std::nullopt;  // closed without ends
                seen[cur] = 1;
                seq.push_back(cur);
                fwd = host.other_end(cur, fwd);
            }
            t.to = fwd;
            t.to_end_slot = slot;
            cur = h;
            while (!stops(back, cur, &slot)) {
                cur = pass_on(back, cur);
                if (seen[cur]) return std::nullopt;
                seen[cur] = 1;
                seq.push_front(cur);
                back = host.other_end(cur, back);
            }
            t.from = back;
            t.from_end_slot = slot;
            t.edges.assign(seq.begin(), seq.end());
            trails.push_back(std::move(t));
        }
        MultiGraph q;
        std::vector<VertexId> image;  // q vertex -> host vertex
        std::vector<VertexId> main_vertex(host.vertex_bound(), kNoVertex), sprout_vertex(host.vertex_bound(), kNoVertex);
        auto add = [&](VertexId h, Label l) {
            image.push_back(h);
            return q.add_vertex(l);
        };
        for (VertexId v : host.vertices()) {
            if (host.label(v) != 0) {
                main_vertex[v] = add(v, host.label(v));
                if (singleton_labels.count(host.label(v))) sprout_vertex[v] = add(v, 0);
            } else if (end_slot[v] < 0) {
                main_vertex[v] = add(v, 0);
            } else {
                sprout_vertex[v] = add(v, 0);
            }
        }
        auto end_vertex = [&](VertexId v, bool slot) {
            if (slot) return sprout_vertex[v];
            if (host.label(v) != 0 && sprout_vertex[v] != kNoVertex) return sprout_vertex[v];
            return main_vertex[v];
        };
        std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> by_ends;
        for (std::size_t i = 0; i < trails.size(); ++i) {
            const VertexId a = end_vertex(trails[i].from, trails[i].from_end_slot);
            const VertexId b = end_vertex(trails[i].to, trails[i].to_end_slot);
            q.add_edge(a, b);
            by_ends[{std::min(a, b), std::max(a, b)}].push_back(i);
        }
        if (invariant_hash(q) != target_hash) return std::nullopt;
        const std::vector<VertexId> map = isomorphism(pattern, q);
        if (map.empty()) return std::nullopt;
        AgreementEmbedding emb;
        emb.pattern = pattern;
        emb.vertex_image.assign(pattern.vertex_bound(), kNoVertex);
        emb.edge_image.assign(pattern.edge_bound(), {});
        for (VertexId x : pattern.vertices()) emb.vertex_image[x] = image[map[x]];
        std::map<std::pair<VertexId, VertexId>, std::size_t> used;
        for (EdgeId e : pattern.edges()) {
            const VertexId a = map[pattern.ends(e).u], b = map[pattern.ends(e).v];
            const auto key = std::make_pair(std::min(a, b), std::max(a, b));
            const std::size_t ti = by_ends[key][used[key]++];
            const Trail& t = trails[ti];
            const VertexId ta = end_vertex(t.from, t.from_end_slot);
            emb.edge_image[e] = ta == a ? t.edges : reversed(t.edges);
        }
        const std::size_t first_dis = pattern.edge_count() - allowed;
        for (std::size_t i = first_dis; i < pattern.edge_count(); ++i) emb.disagreement.push_back(static_cast<EdgeId>(i));
        if (embedding_defect(emb, host, g.mode)) return std::nullopt;
        return emb;
    };

    // Junction sets in lexicographic order, end slots as a base-3 counter.
    std::optional<AgreementEmbedding> found;
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> bool {
        if (depth == junctions) {
            std::size_t combos = 1;
            for (std::size_t i = 0; i < junctions; ++i) combos *= 3;
            for (std::size_t c = 0; c < combos; ++c) {
                std::size_t x = c;
                for (std::size_t i = 0; i < junctions; ++i) {
                    end_slot[internal[chosen[i]]] = static_cast<int>(x % 3);
                    x /= 3;
                }
                if ((found = attempt())) return true;
            }
            for (std::size_t i = 0; i < junctions; ++i) end_slot[internal[chosen[i]]] = -1;
            return false;
        }
        for (std::size_t i = start; i + (junctions - depth) <= internal.size(); ++i) {
            chosen[depth] = i;
            if (self(self, i + 1, depth + 1)) return true;
        }
        return false;
    };
    rec(rec, 0, 0);
    return found;
}

AgreementEmbedding ordered_embedding(const AgreementEmbedding& emb, const MultiGraph& host) {
    if (auto d = embedding_defect(emb, host, AgreementMode::MAG))
        throw AgreementError("ordered_embedding: invalid embedding: " + *d);
    const MultiGraph& p = emb.pattern;
    std::vector<char> dis(p.edge_bound(), 0);
    for (EdgeId e : emb.disagreement) dis[e] = 1;
    std::vector<char> black_edge(host.edge_bound(), 0), black(host.vertex_bound(), 0);
    UnionFind uf(host.vertex_bound());
    for (EdgeId e : p.edges()) {
        if (dis[e]) continue;
        const VertexId s = emb.vertex_image[p.ends(e).u];
        auto vs = walk(host, emb.edge_image[e], s);
        for (std::size_t i = 0; i < vs->size(); ++i) {
            black[(*vs)[i]] = 1;
            uf.unite((*vs)[i], s);
        }
        for (EdgeId h : emb.edge_image[e]) black_edge[h] = 1;
    }
    for (VertexId x : p.vertices())
        if (p.label(x) != 0 && p.degree(x) == 0) black[emb.vertex_image[x]] = 1;

    AgreementEmbedding out = emb;
    const std::size_t m = emb.subgraph_count();
    for (std::size_t i = 0; i < emb.disagreement.size(); ++i) {
        const bool joining = i + 1 < m;
        std::vector<EdgeId> path;
        VertexId from = kNoVertex, to = kNoVertex;
        for (VertexId s : host.vertices()) {
            if (!black[s]) continue;
            // Breadth-first through red vertices to another black vertex.
            std::vector<EdgeId> parent(host.vertex_bound(), kNoEdge);
            std::vector<char> seen(host.vertex_bound(), 0);
            std::deque<VertexId> queue{s};
            seen[s] = 1;
            while (!queue.empty() && to == kNoVertex) {
                const VertexId x = queue.front();
                queue.pop_front();
                for (EdgeId h : host.incident(x)) {
                    if (black_edge[h]) continue;
                    const VertexId y = host.other_end(h, x);
                    if (seen[y]) continue;
                    seen[y] = 1;
                    parent[y] = h;
                    if (!black[y]) {
                        queue.push_back(y);
                    } else if (!joining || uf.find(y) != uf.find(s)) {
                        to = y;
                        break;
                    }
                }
            }
            if (to == kNoVertex) continue;
            from = s;
            for (VertexId y = to; y != from;) {
                path.push_back(parent[y]);
                y = host.other_end(parent[y], y);
            }
            std::reverse(path.begin(), path.end());
            break;
        }
        if (to == kNoVertex) throw AgreementError("ordered_embedding: no red path between black vertices");
        const EdgeId e = emb.disagreement[i];
        out.vertex_image[p.ends(e).u] = from;
        out.vertex_image[p.ends(e).v] = to;
        out.edge_image[e] = path;
        auto vs = walk(host, path, from);
        for (VertexId y : *vs) {
            black[y] = 1;
            uf.unite(y, from);
        }
        for (EdgeId h : path) black_edge[h] = 1;
    }
    for (EdgeId h : host.edges())
        if (!black_edge[h]) throw AgreementError("ordered_embedding: red edges left over");
    if (auto d = ordered_defect(out, host, AgreementMode::MAG))
        throw AgreementError("ordered_embedding: result not ordered: " + *d);
    return out;
}

AgreementEmbedding embedding_change(const AgreementEmbedding& emb, const MultiGraph& host, VertexId u,
                                    VertexId v) {
    const MultiGraph& p = emb.pattern;
    if (!p.has_vertex(u) || !p.has_vertex(v) || u == v || !is_sprout(p, u) || !is_sprout(p, v))
        throw AgreementError("embedding_change: two distinct sprouts required");
    const EdgeId e = p.incident(u)[0];
    const EdgeId f = p.incident(v)[0];
    if (e == f) throw AgreementError("embedding_change: the sprouts share their edge");
    const std::vector<EdgeId> pf = trail_from(emb, f, v);
    auto vs = walk(host, pf, emb.vertex_image[v]);
    if (!vs) throw AgreementError("embedding_change: broken trail");
    const VertexId y = emb.vertex_image[u];
    std::size_t t = 0;
    for (std::size_t i = 1; i + 1 < vs->size(); ++i)
        if ((*vs)[i] == y) t = i;
    if (t == 0) throw AgreementError("embedding_change: sprout is not attached to the other sprout's edge");
    std::vector<EdgeId> ne(pf.begin(), pf.begin() + static_cast<std::ptrdiff_t>(t));
    const std::vector<EdgeId> pe = trail_from(emb, e, u);
    ne.insert(ne.end(), pe.begin(), pe.end());
    std::vector<EdgeId> nf(pf.begin() + static_cast<std::ptrdiff_t>(t), pf.end());
    AgreementEmbedding out = emb;
    out.vertex_image[u] = (*vs)[0];
    out.vertex_image[v] = y;
    out.edge_image[e] = p.ends(e).u == u ? ne : reversed(ne);
    out.edge_image[f] = p.ends(f).u == v ? nf : reversed(nf);
    return out;
}

}  // namespace unets
