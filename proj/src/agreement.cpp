#include <algorithm>
#include <map>
#include <unordered_map>

#include "unets/agreement.hpp"
#include "unets/canonical.hpp"

namespace unets {

namespace {

// A step shrinks a graph by one disagreement edge (Remove, LooseRemove) or
// one sprout (Prune). LooseRemove also deletes a loop left bare at an end.
enum class Step { Remove, LooseRemove, Prune };

bool bare_loop(const MultiGraph& g, VertexId x) {
    return g.has_vertex(x) && g.label(x) == 0 && g.degree(x) == 2 && g.loop_count(x) == 1;
}

bool end_ok(const MultiGraph& g, VertexId x) {
    return (g.label(x) != 0 && g.degree(x) == 1) || (g.label(x) == 0 && g.degree(x) == 3);
}

// One step applied in place; false if it is not allowed.
bool apply_step(MultiGraph& g, Step s, EdgeId e, VertexId at) {
    const auto [u, v] = g.ends(e);
    if (s == Step::Prune) {
        if (!end_ok(g, at)) return false;
        detail::prune_in_place(g, e, at);
        return !bare_loop(g, at);
    }
    if (u == v || !end_ok(g, u) || !end_ok(g, v)) return false;
    detail::remove_in_place(g, e);
    for (VertexId x : {u, v}) {
        if (!bare_loop(g, x)) continue;
        if (s != Step::LooseRemove) return false;
        g.erase_edge(g.incident(x)[0]);
        g.erase_vertex(x);
    }
    return true;
}

// All (edge, endpoint) choices of a step in a fixed order.
std::vector<std::pair<EdgeId, VertexId>> step_choices(const MultiGraph& g, Step s) {
    std::vector<std::pair<EdgeId, VertexId>> out;
    for (EdgeId e : g.edges()) {
        const auto [u, v] = g.ends(e);
        if (s != Step::Prune) {
            out.emplace_back(e, kNoVertex);
        } else {
            out.emplace_back(e, u);
            if (v != u) out.emplace_back(e, v);
        }
    }
    return out;
}

struct Layer {
    std::vector<MultiGraph> graphs;
    std::vector<CanonicalCode> codes;
    std::unordered_map<CanonicalCode, std::size_t, CodeHash> index;
    std::vector<std::vector<std::size_t>> children;

    std::size_t insert(MultiGraph g, const CanonicalCode& c) {
        auto [it, fresh] = index.emplace(c, graphs.size());
        if (fresh) {
            graphs.push_back(std::move(g));
            codes.push_back(c);
            children.emplace_back();
        }
        return it->second;
    }
};

class Side {
public:
    Side(const MultiGraph& start, std::size_t* budget) : budget_(budget) {
        layers_.emplace_back();
        layers_[0].insert(start, canonical_form(start));
    }

    const Layer& layer(std::size_t j) const { return layers_[j]; }
    std::size_t depth() const { return layers_.size() - 1; }
    Step step(std::size_t j) const { return steps_[j]; }

    void extend(Step s) {
        Layer next;
        Layer& cur = layers_.back();
        for (std::size_t i = 0; i < cur.graphs.size(); ++i) {
            for (auto [e, at] : step_choices(cur.graphs[i], s)) {
                MultiGraph h = cur.graphs[i];
                if (!apply_step(h, s, e, at)) continue;
                const CanonicalCode c = canonical_form(h);
                const std::size_t before = next.graphs.size();
                const std::size_t k = next.insert(std::move(h), c);
                if (next.graphs.size() > before) {
                    if (*budget_ == 0)
                        throw SearchError(SearchError::Kind::Budget, "agreement search: node budget exhausted");
                    --*budget_;
                }
                auto& ch = cur.children[i];
                if (std::find(ch.begin(), ch.end(), k) == ch.end()) ch.push_back(k);
            }
        }
        steps_.push_back(s);
        layers_.push_back(std::move(next));
    }

    // good[j]: nodes of layer j with a path to `target` in the last layer.
    std::vector<std::vector<char>> good_sets(std::size_t target) const {
        std::vector<std::vector<char>> good(layers_.size());
        good.back().assign(layers_.back().graphs.size(), 0);
        good.back()[target] = 1;
        for (std::size_t j = layers_.size() - 1; j-- > 0;) {
            good[j].assign(layers_[j].graphs.size(), 0);
            for (std::size_t i = 0; i < layers_[j].graphs.size(); ++i)
                for (std::size_t c : layers_[j].children[i])
                    if (good[j + 1][c]) good[j][i] = 1;
        }
        return good;
    }

private:
    std::vector<Layer> layers_;
    std::vector<Step> steps_;
    std::size_t* budget_;
};

// A graph whose edges stand for host trails and whose vertices sit on host
// vertices.
struct Traced {
    MultiGraph g;
    std::vector<std::vector<EdgeId>> path;  // from image of ends.u to image of ends.v
    std::vector<VertexId> image;

    explicit Traced(const MultiGraph& host) : g(host), path(host.edge_bound()), image(host.vertex_bound()) {
        for (EdgeId e : host.edges()) path[e] = {e};
        for (VertexId v : host.vertices()) image[v] = v;
    }

    std::vector<EdgeId> from(EdgeId e, VertexId x) const {
        if (g.ends(e).u == x) return path[e];
        return {path[e].rbegin(), path[e].rend()};
    }
    void set(EdgeId e, VertexId start, std::vector<EdgeId> p) {
        if (path.size() <= e) path.resize(e + 1);
        if (g.ends(e).u != start) std::reverse(p.begin(), p.end());
        path[e] = std::move(p);
    }
    VertexId add_vertex(VertexId at) {
        const VertexId v = g.add_vertex();
        if (image.size() <= v) image.resize(v + 1);
        image[v] = at;
        return v;
    }
    void suppress(VertexId x) {
        auto inc = g.incident(x);
        const EdgeId f1 = inc[0], f2 = inc[1];
        const VertexId a = g.other_end(f1, x);
        std::vector<EdgeId> p = from(f1, a);
        const std::vector<EdgeId> q = from(f2, x);
        p.insert(p.end(), q.begin(), q.end());
        const EdgeId m = g.suppress(x);
        set(m, a, std::move(p));
    }
    void settle(VertexId x) {
        if (g.has_vertex(x) && g.label(x) == 0 && g.degree(x) == 2 && g.loop_count(x) == 0) suppress(x);
    }
};

struct RemovedTrail {
    std::vector<EdgeId> path;
    VertexId from, to;  // host vertices holding the two sprouts
};

// Applies the step chosen by (e, at) to the traced graph. Removals return
// the host trail of the removed edge.
std::optional<RemovedTrail> traced_step(Traced& t, Step s, EdgeId e, VertexId at) {
    MultiGraph& g = t.g;
    const auto [u, v] = g.ends(e);
    if (s == Step::Prune) {
        const VertexId other = g.other_end(e, at);
        std::vector<EdgeId> p = t.from(e, at);
        g.erase_edge(e);
        const VertexId sprout = t.add_vertex(t.image[at]);
        const EdgeId ne = g.add_edge(sprout, other);
        t.set(ne, sprout, std::move(p));
        t.settle(at);
        return std::nullopt;
    }
    RemovedTrail r{t.path[e], t.image[u], t.image[v]};
    g.erase_edge(e);
    t.settle(u);
    t.settle(v);
    for (VertexId x : {u, v}) {
        if (!bare_loop(g, x)) continue;
        const EdgeId l = g.incident(x)[0];
        const std::vector<EdgeId> lp = t.path[l];
        if (x == v) {
            r.path.insert(r.path.end(), lp.begin(), lp.end());
        } else {
            r.path.insert(r.path.begin(), lp.begin(), lp.end());
        }
        g.erase_edge(l);
        g.erase_vertex(x);
    }
    return r;
}

// Replays a path through the layers of `side` on the real graph.
Traced realise(const Side& side, const MultiGraph& start, std::size_t target, std::vector<RemovedTrail>* removed) {
    const auto good = side.good_sets(target);
    Traced t(start);
    for (std::size_t j = 0; j < side.depth(); ++j) {
        const Step s = side.step(j);
        bool moved = false;
        for (auto [e, at] : step_choices(t.g, s)) {
            MultiGraph h = t.g;
            if (!apply_step(h, s, e, at)) continue;
            auto it = side.layer(j + 1).index.find(canonical_form(h));
            if (it == side.layer(j + 1).index.end() || !good[j + 1][it->second]) continue;
            auto r = traced_step(t, s, e, at);
            if (r) removed->push_back(std::move(*r));
            moved = true;
            break;
        }
        if (!moved) throw std::logic_error("agreement search: cannot replay a layer path");
    }
    return t;
}

std::vector<CanonicalCode> component_codes(const MultiGraph& g) {
    std::size_t nc = 0;
    const auto comp = component_index(g, &nc);
    std::vector<CanonicalCode> out;
    for (std::size_t c = 0; c < nc; ++c) {
        MultiGraph h;
        std::vector<VertexId> map(g.vertex_bound(), kNoVertex);
        for (VertexId v : g.vertices())
            if (comp[v] == c) map[v] = h.add_vertex(g.label(v));
        for (EdgeId e : g.edges())
            if (comp[g.ends(e).u] == c) h.add_edge(map[g.ends(e).u], map[g.ends(e).v]);
        out.push_back(canonical_form(h));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// The subgraphs of an agreement graph taken from a traced result, ordered by
// component code; *pv and *pe map the traced graph onto assemble() ids.
std::vector<MultiGraph> split(const MultiGraph& g, std::vector<VertexId>* pv, std::vector<EdgeId>* pe) {
    std::size_t nc = 0;
    const auto comp = component_index(g, &nc);
    struct Part {
        CanonicalCode code;
        VertexId first;
        std::size_t c;
        MultiGraph h;
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
    };
    std::vector<Part> parts(nc);
    std::vector<VertexId> local(g.vertex_bound(), kNoVertex);
    for (VertexId v : g.vertices()) {
        Part& p = parts[comp[v]];
        if (p.vs.empty()) p.first = v;
        local[v] = p.h.add_vertex(g.label(v));
        p.vs.push_back(v);
    }
    for (EdgeId e : g.edges()) {
        Part& p = parts[comp[g.ends(e).u]];
        p.h.add_edge(local[g.ends(e).u], local[g.ends(e).v]);
        p.es.push_back(e);
    }
    for (std::size_t c = 0; c < nc; ++c) {
        parts[c].c = c;
        parts[c].code = canonical_form(parts[c].h);
    }
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
        return std::tie(a.code, a.first) < std::tie(b.code, b.first);
    });
    pv->assign(g.vertex_bound(), kNoVertex);
    pe->assign(g.edge_bound(), kNoEdge);
    std::vector<MultiGraph> out;
    VertexId nv = 0;
    EdgeId ne = 0;
    for (Part& p : parts) {
        for (VertexId v : p.vs) (*pv)[v] = nv++;
        for (EdgeId e : p.es) (*pe)[e] = ne++;
        out.push_back(std::move(p.h));
    }
    return out;
}

// Embedding of `pattern` (subgraphs then disagreement edges) into the host
// of a traced result. `to_traced` maps pattern vertices of the subgraph
// part onto traced vertices.
AgreementEmbedding build_embedding(const MultiGraph& pattern, std::size_t dis, const Traced& t,
                                   const std::vector<VertexId>& to_traced,
                                   const std::vector<RemovedTrail>& removed) {
    AgreementEmbedding emb;
    emb.pattern = pattern;
    emb.vertex_image.assign(pattern.vertex_bound(), kNoVertex);
    emb.edge_image.assign(pattern.edge_bound(), {});
    const std::size_t sub_edges = pattern.edge_count() - dis;
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> traced_edges;
    for (EdgeId e : t.g.edges()) {
        const auto [u, v] = t.g.ends(e);
        traced_edges[{std::min(u, v), std::max(u, v)}].push_back(e);
    }
    std::map<std::pair<VertexId, VertexId>, std::size_t> used;
    for (EdgeId e = 0; e < sub_edges; ++e) {
        const VertexId x = to_traced[pattern.ends(e).u], y = to_traced[pattern.ends(e).v];
        const auto key = std::make_pair(std::min(x, y), std::max(x, y));
        const EdgeId te = traced_edges[key][used[key]++];
        emb.edge_image[e] = t.from(te, x);
    }
    for (VertexId x = 0; x < to_traced.size(); ++x) emb.vertex_image[x] = t.image[to_traced[x]];
    // E_1 is the last removed trail.
    for (std::size_t i = 0; i < dis; ++i) {
        const EdgeId e = static_cast<EdgeId>(sub_edges + i);
        const RemovedTrail& r = removed[removed.size() - 1 - i];
        emb.vertex_image[pattern.ends(e).u] = r.from;
        emb.vertex_image[pattern.ends(e).v] = r.to;
        emb.edge_image[e] = r.path;
        emb.disagreement.push_back(e);
    }
    return emb;
}

struct Meeting {
    std::size_t ia, ib;  // node indices in the last layers
};

std::optional<Meeting> meet(const Layer& la, const Layer& lb) {
    std::optional<Meeting> best;
    std::vector<CanonicalCode> best_key;
    for (std::size_t i = 0; i < la.graphs.size(); ++i) {
        auto it = lb.index.find(la.codes[i]);
        if (it == lb.index.end()) continue;
        std::vector<CanonicalCode> key = component_codes(la.graphs[i]);
        if (!best || key < best_key || (key == best_key && la.codes[i] < la.codes[best->ia])) {
            best = Meeting{i, it->second};
            best_key = std::move(key);
        }
    }
    return best;
}

struct Assembled {
    AgreementGraph graph;
    AgreementEmbedding lower, upper;
};

// Builds the agreement graph and both embeddings from replayed paths.
Assembled assemble_result(AgreementMode mode, const Traced& tl, const std::vector<RemovedTrail>& rl, const Traced& tu,
                          const std::vector<RemovedTrail>& ru) {
    Assembled out;
    std::vector<VertexId> pv;
    std::vector<EdgeId> pe;
    out.graph.mode = mode;
    out.graph.subgraphs = split(tl.g, &pv, &pe);
    out.graph.disagreement_count = ru.size();
    const MultiGraph pl = out.graph.assemble(rl.size());
    const MultiGraph pu = out.graph.assemble(ru.size());
    std::vector<VertexId> to_lower(tl.g.vertex_count(), kNoVertex);
    for (VertexId v : tl.g.vertices()) to_lower[pv[v]] = v;
    // The same subgraph vertices in the upper traced graph.
    MultiGraph cl, cu;
    std::vector<VertexId> cl_of(tl.g.vertex_bound(), kNoVertex), cu_back;
    for (VertexId v : tl.g.vertices()) cl_of[v] = cl.add_vertex(tl.g.label(v));
    for (EdgeId e : tl.g.edges()) cl.add_edge(cl_of[tl.g.ends(e).u], cl_of[tl.g.ends(e).v]);
    std::vector<VertexId> cu_of(tu.g.vertex_bound(), kNoVertex);
    for (VertexId v : tu.g.vertices()) {
        cu_of[v] = cu.add_vertex(tu.g.label(v));
        cu_back.push_back(v);
    }
    for (EdgeId e : tu.g.edges()) cu.add_edge(cu_of[tu.g.ends(e).u], cu_of[tu.g.ends(e).v]);
    const std::vector<VertexId> iso = isomorphism(cl, cu);
    if (iso.empty()) throw std::logic_error("agreement search: meeting graphs are not isomorphic");
    std::vector<VertexId> to_upper(to_lower.size(), kNoVertex);
    for (VertexId x = 0; x < to_lower.size(); ++x) to_upper[x] = cu_back[iso[cl_of[to_lower[x]]]];
    out.lower = build_embedding(pl, rl.size(), tl, to_lower, rl);
    out.upper = build_embedding(pu, ru.size(), tu, to_upper, ru);
    return out;
}

void require_same_leaves(const PhyloNetwork& a, const PhyloNetwork& b, const char* what) {
    if (a.leaf_count() != b.leaf_count()) throw AgreementError(std::string(what) + ": leaf sets differ");
}

}  // namespace

namespace detail {

std::size_t removal_meet(const PhyloNetwork& a, const PhyloNetwork& b, bool self_attached, std::size_t node_budget) {
    require_same_leaves(a, b, "removal_meet");
    const bool swap = a.tier() > b.tier();
    const PhyloNetwork& lo = swap ? b : a;
    const PhyloNetwork& hi = swap ? a : b;
    const std::size_t l = hi.tier() - lo.tier();
    std::size_t budget = node_budget;
    Side sl(lo.graph(), &budget), su(hi.graph(), &budget);
    const Step s = self_attached ? Step::LooseRemove : Step::Remove;
    for (std::size_t i = 0; i < l; ++i) su.extend(s);
    for (std::size_t k = l;; ++k) {
        if (meet(sl.layer(sl.depth()), su.layer(su.depth()))) return k;
        if (su.layer(su.depth()).graphs.empty()) throw std::logic_error("removal_meet: no common graph");
        sl.extend(s);
        su.extend(s);
    }
}

}  // namespace detail

AgreementResult agreement_distance(const PhyloNetwork& a, const PhyloNetwork& b, const AgreementOptions& opt) {
    require_same_leaves(a, b, "agreement_distance");
    const bool swap = a.tier() > b.tier();
    const PhyloNetwork& lo = swap ? b : a;
    const PhyloNetwork& hi = swap ? a : b;
    const std::size_t l = hi.tier() - lo.tier();
    std::size_t budget = opt.node_budget;
    Side sl(lo.graph(), &budget), su(hi.graph(), &budget);
    for (std::size_t i = 0; i < l; ++i) su.extend(Step::Remove);
    std::optional<Meeting> m;
    for (;;) {
        if ((m = meet(sl.layer(sl.depth()), su.layer(su.depth())))) break;
        if (su.layer(su.depth()).graphs.empty()) throw std::logic_error("agreement_distance: no common graph");
        sl.extend(Step::Remove);
        su.extend(Step::Remove);
    }
    std::vector<RemovedTrail> rl, ru;
    const Traced tl = realise(sl, lo.graph(), m->ia, &rl);
    const Traced tu = realise(su, hi.graph(), m->ib, &ru);
    Assembled as = assemble_result(AgreementMode::MAG, tl, rl, tu, ru);
    AgreementResult out;
    out.distance = ru.size();
    out.graph = std::move(as.graph);
    AgreementEmbedding el = ordered_embedding(as.lower, lo.graph());
    AgreementEmbedding eu = ordered_embedding(as.upper, hi.graph());
    if (opt.certify) {
        if (!check_agreement_embedding(out.graph, lo, rl.size()) || !check_agreement_embedding(out.graph, hi, ru.size()))
            throw std::logic_error("agreement_distance: result failed certification");
    }
    out.into_a = swap ? std::move(eu) : std::move(el);
    out.into_b = swap ? std::move(el) : std::move(eu);
    return out;
}

StabilityReport endpoint_agreement_distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg) {
    SearchConfig c = cfg;
    c.op = Operation::Replug;
    return window_stability(a, b, c);
}

EndpointResult meag_search(const PhyloNetwork& a, const PhyloNetwork& b, std::size_t node_budget, bool certify) {
    require_same_leaves(a, b, "meag_search");
    const bool swap = a.tier() > b.tier();
    const PhyloNetwork& lo = swap ? b : a;
    const PhyloNetwork& hi = swap ? a : b;
    const std::size_t l = hi.tier() - lo.tier();
    std::size_t budget = node_budget;
    Side sl(lo.graph(), &budget), su(hi.graph(), &budget);
    for (std::size_t i = 0; i < l; ++i) su.extend(Step::LooseRemove);
    std::optional<Meeting> m;
    for (;;) {
        if ((m = meet(sl.layer(sl.depth()), su.layer(su.depth())))) break;
        if (sl.layer(sl.depth()).graphs.empty() || su.layer(su.depth()).graphs.empty())
            throw std::logic_error("meag_search: no common graph");
        sl.extend(Step::Prune);
        su.extend(Step::Prune);
    }
    std::vector<RemovedTrail> rl, ru;
    const Traced tl = realise(sl, lo.graph(), m->ia, &rl);
    const Traced tu = realise(su, hi.graph(), m->ib, &ru);
    Assembled as = assemble_result(AgreementMode::MEAG, tl, rl, tu, ru);
    EndpointResult out;
    out.distance = as.graph.sprouts() + l;
    out.graph = std::move(as.graph);
    for (const auto* e : {&as.lower, &as.upper}) {
        const MultiGraph& host = e == &as.lower ? lo.graph() : hi.graph();
        if (auto d = ordered_defect(*e, host, AgreementMode::MEAG))
            throw std::logic_error("meag_search: embedding defect: " + *d);
    }
    if (certify) {
        if (!check_agreement_embedding(out.graph, lo, 0) || !check_agreement_embedding(out.graph, hi, l))
            throw std::logic_error("meag_search: result failed certification");
    }
    out.into_a = swap ? std::move(as.upper) : std::move(as.lower);
    out.into_b = swap ? std::move(as.lower) : std::move(as.upper);
    return out;
}

namespace {

// Deletes unlabelled vertices of degree at most one and suppresses
// unlabelled degree-2 vertices until none is left.
void clean_forest(MultiGraph& g) {
    for (bool changed = true; changed;) {
        changed = false;
        for (VertexId v : g.vertices()) {
            if (g.label(v) != 0) continue;
            if (g.degree(v) <= 1) {
                if (g.degree(v) == 1) g.erase_edge(g.incident(v)[0]);
                g.erase_vertex(v);
                changed = true;
            } else if (g.degree(v) == 2 && g.loop_count(v) == 0) {
                g.suppress(v);
                changed = true;
            }
        }
    }
}

std::map<CanonicalCode, MultiGraph> forests(const MultiGraph& t, std::size_t j) {
    std::map<CanonicalCode, MultiGraph> out;
    const std::vector<EdgeId> es = t.edges();
    std::vector<std::size_t> pick(j);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == j) {
            MultiGraph h = t;
            for (std::size_t i : pick) h.erase_edge(es[i]);
            clean_forest(h);
            out.emplace(canonical_form(h), std::move(h));
            return;
        }
        for (std::size_t i = start; i < es.size(); ++i) {
            pick[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace

MafResult maf_distance(const PhyloNetwork& t1, const PhyloNetwork& t2) {
    if (!is_tree(t1) || !is_tree(t2)) throw AgreementError("maf_distance: both inputs must be trees");
    require_same_leaves(t1, t2, "maf_distance");
    std::map<CanonicalCode, MultiGraph> f1, f2;
    for (std::size_t j = 0;; ++j) {
        for (auto& [c, g] : forests(t1.graph(), j)) f1.emplace(c, std::move(g));
        for (auto& [c, g] : forests(t2.graph(), j)) f2.emplace(c, std::move(g));
        const MultiGraph* best = nullptr;
        std::size_t fewest = 0;
        for (const auto& [c, g] : f1) {
            if (!f2.count(c)) continue;
            const std::size_t comps = component_count(g);
            if (!best || comps < fewest) {
                best = &g;
                fewest = comps;
            }
        }
        if (best) return MafResult{fewest - 1, *best};
    }
}

namespace {

// Current realisation of a pattern edge in the growing network: the vertex
// sequence along it, the edges between consecutive vertices, and for each
// inner vertex either -1 (a point of the host embedding) or the position of
// the other embedding's point it stands for.
struct Track {
    std::vector<VertexId> verts;
    std::vector<EdgeId> segs;
    std::vector<long> tags;
};

struct Growth {
    std::vector<MultiGraph> graphs;
    std::vector<Move> moves;
};

// Adds the disagreement edges of `other` to host, in order, attaching them
// where `other` attaches them. Points of `other` go after (or before) the
// host's own points on each subgraph edge.
Growth grow(const MultiGraph& host, const AgreementEmbedding& own, const MultiGraph& other_host,
            const AgreementEmbedding& other, bool before) {
    Growth out;
    MultiGraph g = host;
    out.graphs.push_back(g);
    const MultiGraph& p = other.pattern;
    std::vector<char> own_dis(own.pattern.edge_bound(), 0), other_dis(p.edge_bound(), 0);
    for (EdgeId e : own.disagreement) own_dis[e] = 1;
    for (EdgeId e : other.disagreement) other_dis[e] = 1;
    std::map<EdgeId, Track> tracks;
    for (EdgeId e : own.pattern.edges()) {
        if (own_dis[e]) continue;
        Track t;
        t.verts.push_back(own.vertex_image[own.pattern.ends(e).u]);
        for (EdgeId h : own.edge_image[e]) {
            t.segs.push_back(h);
            t.verts.push_back(host.other_end(h, t.verts.back()));
        }
        t.tags.assign(t.verts.size() - 2, -1);
        tracks[e] = std::move(t);
    }
    // Where each vertex of other_host lies on a trail of `other`.
    std::vector<std::pair<EdgeId, long>> on(other_host.vertex_bound(), {kNoEdge, 0});
    for (EdgeId e : p.edges()) {
        VertexId x = other.vertex_image[p.ends(e).u];
        const auto& tr = other.edge_image[e];
        for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
            x = other_host.other_end(tr[i], x);
            on[x] = {e, static_cast<long>(i + 1)};
        }
    }
    for (EdgeId d : other.disagreement) {
        Move mv;
        mv.kind = MoveKind::TBRplus;
        VertexId ends[2];
        int side = 0;
        for (VertexId s : {p.ends(d).u, p.ends(d).v}) {
            const VertexId ov = other.vertex_image[s];
            EdgeId seg;
            VertexId w;
            if (on[ov].first != kNoEdge) {
                auto it = tracks.find(on[ov].first);
                if (it == tracks.end()) throw AgreementError("mag_to_tbr_sequence: embedding is not ordered");
                Track& t = it->second;
                const long pos = on[ov].second;
                std::size_t idx = 0, own_points = 0;
                for (long tag : t.tags) {
                    if (tag < 0) ++own_points;
                    else if (tag < pos) ++idx;
                }
                if (!before) idx += own_points;
                seg = t.segs[idx];
                const bool forward = g.ends(seg).u == t.verts[idx];
                EdgeId f1, f2;
                w = g.subdivide(seg, &f1, &f2);
                t.segs[idx] = forward ? f1 : f2;
                t.segs.insert(t.segs.begin() + static_cast<std::ptrdiff_t>(idx) + 1, forward ? f2 : f1);
                t.verts.insert(t.verts.begin() + static_cast<std::ptrdiff_t>(idx) + 1, w);
                t.tags.insert(t.tags.begin() + static_cast<std::ptrdiff_t>(idx), pos);
            } else {
                const VertexId leaf = g.vertex_with_label(other_host.label(ov));
                if (leaf == kNoVertex || other_host.label(ov) == 0)
                    throw AgreementError("mag_to_tbr_sequence: unattached sprout");
                seg = g.incident(leaf)[0];
                w = g.subdivide(seg);
            }
            (side == 0 ? mv.first : mv.second) = Attachment::edge(seg);
            ends[side++] = w;
        }
        const EdgeId ne = g.add_edge(ends[0], ends[1]);
        tracks[d] = Track{{ends[0], ends[1]}, {ne}, {}};
        out.moves.push_back(mv);
        out.graphs.push_back(g);
    }
    return out;
}

}  // namespace

RearrangementSequence mag_to_tbr_sequence(const PhyloNetwork& a, const PhyloNetwork& b, const AgreementResult& mag) {
    require_same_leaves(a, b, "mag_to_tbr_sequence");
    for (const auto& [emb, host] : {std::pair{&mag.into_a, &a}, std::pair{&mag.into_b, &b}}) {
        if (auto d = ordered_defect(*emb, host->graph(), AgreementMode::MAG))
            throw AgreementError("mag_to_tbr_sequence: uncertified embedding: " + *d);
    }
    RearrangementSequence seq;
    seq.start = a.graph();
    seq.end = b.graph();
    const Growth fwd = grow(a.graph(), mag.into_a, b.graph(), mag.into_b, false);
    const Growth back = grow(b.graph(), mag.into_b, a.graph(), mag.into_a, true);
    if (canonical_form(fwd.graphs.back()) != canonical_form(back.graphs.back()))
        throw std::logic_error("mag_to_tbr_sequence: the two constructions disagree");
    seq.moves = fwd.moves;
    MultiGraph cur = fwd.graphs.back();
    for (std::size_t j = back.graphs.size() - 1; j-- > 0;) {
        const CanonicalCode want = canonical_form(back.graphs[j]);
        bool done = false;
        for (EdgeId e : cur.edges()) {
            MultiGraph h = cur;
            detail::remove_in_place(h, e);
            if (canonical_form(h) != want || !detail::valid_network(h, a.leaf_count())) continue;
            Move mv;
            mv.kind = MoveKind::TBRminus;
            mv.edge = e;
            seq.moves.push_back(mv);
            cur = std::move(h);
            done = true;
            break;
        }
        if (!done) throw std::logic_error("mag_to_tbr_sequence: no removal matches");
    }
    return seq;
}

}  // namespace unets
