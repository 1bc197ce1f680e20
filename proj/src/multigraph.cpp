#include "unets/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace unets {

VertexId MultiGraph::add_vertex(Label label) {
    VertexRec rec;
    rec.label = label;
    rec.alive = true;
    vertices_.push_back(std::move(rec));
    ++num_vertices_;
    return static_cast<VertexId>(vertices_.size() - 1);
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
    if (!has_vertex(u) || !has_vertex(v)) throw GraphError("add_edge: unknown endpoint");
    edges_.push_back({u, v, true});
    const EdgeId e = static_cast<EdgeId>(edges_.size() - 1);
    vertices_[u].incident.push_back(e);
    vertices_[v].incident.push_back(e);
    ++num_edges_;
    return e;
}

void MultiGraph::detach(VertexId v, EdgeId e) {
    auto& inc = vertices_[v].incident;
    auto it = std::find(inc.begin(), inc.end(), e);
    if (it != inc.end()) inc.erase(it);
}

void MultiGraph::erase_edge(EdgeId e) {
    if (!has_edge(e)) throw GraphError("unknown edge id " + std::to_string(e));
    EdgeRec& rec = edges_[e];
    detach(rec.u, e);
    detach(rec.v, e);
    rec.alive = false;
    --num_edges_;
}

void MultiGraph::erase_vertex(VertexId v) {
    if (!has_vertex(v)) throw GraphError("unknown vertex id " + std::to_string(v));
    if (!vertices_[v].incident.empty()) throw GraphError("erase_vertex: vertex is not isolated");
    vertices_[v].alive = false;
    vertices_[v].label = 0;
    --num_vertices_;
}

std::size_t MultiGraph::loop_count(VertexId v) const {
    std::size_t n = 0;
    for (EdgeId e : incident(v))
        if (is_loop(e)) ++n;
    return n / 2;
}

std::vector<VertexId> MultiGraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(num_vertices_);
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].alive) out.push_back(v);
    return out;
}

std::vector<EdgeId> MultiGraph::edges() const {
    std::vector<EdgeId> out;
    out.reserve(num_edges_);
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].alive) out.push_back(e);
    return out;
}

VertexId MultiGraph::vertex_with_label(Label label) const {
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].alive && vertices_[v].label == label) return v;
    return kNoVertex;
}

std::vector<VertexId> MultiGraph::labelled_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].alive && vertices_[v].label != 0) out.push_back(v);
    return out;
}

Label MultiGraph::max_label() const {
    Label m = 0;
    for (const auto& rec : vertices_)
        if (rec.alive) m = std::max(m, rec.label);
    return m;
}

EdgeId MultiGraph::suppress(VertexId v) {
    if (!has_vertex(v)) throw GraphError("suppress_vertex: unknown vertex " + std::to_string(v));
    if (label(v) != 0) throw GraphError("suppress_vertex: vertex is labelled");
    if (degree(v) != 2) throw GraphError("suppress_vertex: vertex degree is not 2");
    const EdgeId e1 = vertices_[v].incident[0];
    const EdgeId e2 = vertices_[v].incident[1];
    if (e1 == e2) throw GraphError("suppress_vertex: the only edge at the vertex is a loop");
    const VertexId a = other_end(e1, v);
    const VertexId b = other_end(e2, v);
    erase_edge(e1);
    erase_edge(e2);
    erase_vertex(v);
    return add_edge(a, b);
}

VertexId MultiGraph::subdivide(EdgeId e, EdgeId* first, EdgeId* second) {
    if (!has_edge(e)) throw GraphError("subdivide_edge: unknown edge id " + std::to_string(e));
    const auto [u, v] = ends(e);
    erase_edge(e);
    const VertexId w = add_vertex();
    const EdgeId f = add_edge(u, w);
    const EdgeId s = add_edge(w, v);
    if (first) *first = f;
    if (second) *second = s;
    return w;
}

void MultiGraph::check_invariants() const {
    std::set<Label> seen;
    std::size_t degree_sum = 0;
    for (VertexId v = 0; v < vertices_.size(); ++v) {
        if (!vertices_[v].alive) continue;
        degree_sum += degree(v);
        const Label l = vertices_[v].label;
        if (l == 0) continue;
        if (!seen.insert(l).second) throw GraphError("duplicate label " + std::to_string(l));
        if (degree(v) > 1) throw GraphError("labelled vertex with degree above one");
    }
    if (degree_sum != 2 * num_edges_) throw GraphError("degree sum mismatch");
}

namespace {

bool suppressible(const MultiGraph& g, VertexId v) {
    if (!g.has_vertex(v) || g.label(v) != 0 || g.degree(v) != 2) return false;
    auto inc = g.incident(v);
    return inc[0] != inc[1];
}

}  // namespace

namespace detail {

PruneResult prune_in_place(MultiGraph& g, EdgeId e, VertexId end) {
    if (!g.has_edge(e)) throw GraphError("prune_edge: unknown edge id " + std::to_string(e));
    const auto [u, v] = g.ends(e);
    if (end != u && end != v) throw GraphError("prune_edge: vertex is not an endpoint of the edge");
    const bool leaf = g.label(end) != 0 && g.degree(end) == 1;
    const bool inner = g.label(end) == 0 && g.degree(end) == 3;
    if (!leaf && !inner)
        throw GraphError("prune_edge: endpoint must be a labelled leaf or an unlabelled degree-3 vertex");
    const VertexId other = g.other_end(e, end);
    g.erase_edge(e);
    PruneResult out;
    out.sprout = g.add_vertex();
    out.edge = g.add_edge(out.sprout, other);
    if (suppressible(g, end)) {
        auto inc = g.incident(end);
        Suppression s{end, inc[0], inc[1], kNoEdge};
        s.merged = g.suppress(end);
        if (s.first == out.edge || s.second == out.edge) out.edge = s.merged;
        out.suppressed = s;
    }
    return out;
}

namespace {
void check_sprout(const MultiGraph& g, VertexId sprout) {
    if (!g.has_vertex(sprout) || g.label(sprout) != 0 || g.degree(sprout) != 1)
        throw GraphError("regraft_edge: vertex is not a sprout");
}

}  // namespace

RegraftResult regraft_in_place(MultiGraph& g, VertexId sprout, EdgeId target) {
    check_sprout(g, sprout);
    if (!g.has_edge(target)) throw GraphError("regraft_edge: unknown target edge " + std::to_string(target));
    RegraftResult out;
    out.vertex = g.subdivide(target, &out.first, &out.second);
    const EdgeId stem = g.incident(sprout)[0];
    const VertexId far = g.other_end(stem, sprout);
    g.erase_edge(stem);
    g.erase_vertex(sprout);
    out.stem = g.add_edge(out.vertex, far);
    return out;
}

RegraftResult regraft_singleton_in_place(MultiGraph& g, VertexId sprout, VertexId singleton) {
    check_sprout(g, sprout);
    if (!g.has_vertex(singleton) || g.label(singleton) == 0 || g.degree(singleton) != 0)
        throw GraphError("regraft_edge: target is not a labelled singleton");
    const EdgeId stem = g.incident(sprout)[0];
    const VertexId far = g.other_end(stem, sprout);
    g.erase_edge(stem);
    g.erase_vertex(sprout);
    RegraftResult out;
    out.stem = g.add_edge(singleton, far);
    out.vertex = singleton;
    return out;
}

std::vector<Suppression> remove_in_place(MultiGraph& g, EdgeId e) {
    if (!g.has_edge(e)) throw GraphError("remove_edge: unknown edge id " + std::to_string(e));
    const auto [u, v] = g.ends(e);
    g.erase_edge(e);
    std::vector<Suppression> out;
    for (VertexId x : {u, v}) {
        if (x == v && u == v && !out.empty()) break;
        if (!suppressible(g, x)) continue;
        auto inc = g.incident(x);
        Suppression s{x, inc[0], inc[1], kNoEdge};
        s.merged = g.suppress(x);
        out.push_back(s);
    }
    return out;
}

}  // namespace detail

MultiGraph suppress_vertex(const MultiGraph& g, VertexId v) {
    MultiGraph h = g;
    h.suppress(v);
    return h;
}

SubdivideResult subdivide_edge(const MultiGraph& g, EdgeId e) {
    SubdivideResult out{g, kNoVertex, kNoEdge, kNoEdge};
    out.vertex = out.graph.subdivide(e, &out.first, &out.second);
    return out;
}

PruneResult prune_edge(const MultiGraph& g, EdgeId e, VertexId end) {
    MultiGraph h = g;
    PruneResult r = detail::prune_in_place(h, e, end);
    r.graph = std::move(h);
    return r;
}

RegraftResult regraft_edge(const MultiGraph& g, VertexId sprout, EdgeId target) {
    MultiGraph h = g;
    RegraftResult r = detail::regraft_in_place(h, sprout, target);
    r.graph = std::move(h);
    return r;
}

RegraftResult regraft_to_singleton(const MultiGraph& g, VertexId sprout, VertexId singleton) {
    MultiGraph h = g;
    RegraftResult r = detail::regraft_singleton_in_place(h, sprout, singleton);
    r.graph = std::move(h);
    return r;
}

RemoveResult remove_edge(const MultiGraph& g, EdgeId e) {
    RemoveResult r{g, {}};
    r.suppressed = detail::remove_in_place(r.graph, e);
    return r;
}

std::size_t sprout_count(const MultiGraph& g) {
    std::size_t n = 0;
    for (VertexId v : g.vertices())
        if (g.label(v) == 0 && g.degree(v) == 1) ++n;
    return n;
}

std::vector<std::size_t> component_index(const MultiGraph& g, std::size_t* count) {
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> comp(g.vertex_bound(), kUnset);
    std::vector<VertexId> stack;
    std::size_t c = 0;
    for (VertexId s = 0; s < g.vertex_bound(); ++s) {
        if (!g.has_vertex(s) || comp[s] != kUnset) continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId x = stack.back();
            stack.pop_back();
            for (EdgeId e : g.incident(x)) {
                const VertexId y = g.other_end(e, x);
                if (comp[y] == kUnset) {
                    comp[y] = c;
                    stack.push_back(y);
                }
            }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

std::size_t component_count(const MultiGraph& g) {
    std::size_t c = 0;
    component_index(g, &c);
    return c;
}

bool is_connected(const MultiGraph& g) { return component_count(g) == 1; }

}  // namespace unets
