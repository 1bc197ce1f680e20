#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace unets {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::uint32_t;

inline constexpr VertexId kNoVertex = 0xffffffffu;
inline constexpr EdgeId kNoEdge = 0xffffffffu;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EdgeEnds {
    VertexId u;
    VertexId v;
};

// Undirected multigraph with stable ids. Label 0 means unlabelled.
// A loop appears twice in the incidence list of its vertex, so degree()
// counts it twice.
class MultiGraph {
public:
    using Incidence = boost::container::small_vector<EdgeId, 3>;

    VertexId add_vertex(Label label = 0);
    EdgeId add_edge(VertexId u, VertexId v);

    // Removes an edge without any suppression.
    void erase_edge(EdgeId e);
    // Removes an isolated vertex.
    void erase_vertex(VertexId v);

    bool has_vertex(VertexId v) const {
        return v < vertices_.size() && vertices_[v].alive;
    }
    bool has_edge(EdgeId e) const {
        return e < edges_.size() && edges_[e].alive;
    }

    std::size_t vertex_count() const { return num_vertices_; }
    std::size_t edge_count() const { return num_edges_; }
    VertexId vertex_bound() const { return static_cast<VertexId>(vertices_.size()); }
    EdgeId edge_bound() const { return static_cast<EdgeId>(edges_.size()); }

    Label label(VertexId v) const { return vertices_[v].label; }
    std::size_t degree(VertexId v) const { return vertices_[v].incident.size(); }
    std::span<const EdgeId> incident(VertexId v) const {
        return {vertices_[v].incident.data(), vertices_[v].incident.size()};
    }
    EdgeEnds ends(EdgeId e) const { return {edges_[e].u, edges_[e].v}; }
    bool is_loop(EdgeId e) const { return edges_[e].u == edges_[e].v; }
    VertexId other_end(EdgeId e, VertexId v) const {
        return edges_[e].u == v ? edges_[e].v : edges_[e].u;
    }
    std::size_t loop_count(VertexId v) const;

    // Ids in increasing order.
    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;

    VertexId vertex_with_label(Label label) const;
    std::vector<VertexId> labelled_vertices() const;
    Label max_label() const;

    // In-place forms of the suboperations. The free functions below copy.
    EdgeId suppress(VertexId v);
    VertexId subdivide(EdgeId e, EdgeId* first = nullptr, EdgeId* second = nullptr);

    // Checks the structural invariants of the type (labels injective,
    // labelled vertices of degree at most one).
    void check_invariants() const;

private:
    struct VertexRec {
        Label label = 0;
        bool alive = false;
        Incidence incident;
    };
    struct EdgeRec {
        VertexId u = 0;
        VertexId v = 0;
        bool alive = false;
    };

    void detach(VertexId v, EdgeId e);

    std::vector<VertexRec> vertices_;
    std::vector<EdgeRec> edges_;
    std::size_t num_vertices_ = 0;
    std::size_t num_edges_ = 0;
};

// A suppression performed as part of an operation: vertex v with edges
// `first` and `second` replaced by `merged`.
struct Suppression {
    VertexId vertex;
    EdgeId first;
    EdgeId second;
    EdgeId merged;
};

struct SubdivideResult {
    MultiGraph graph;
    VertexId vertex;
    // For e = {u, v}: first = {u, w}, second = {w, v}.
    EdgeId first;
    EdgeId second;
};

struct PruneResult {
    MultiGraph graph;
    VertexId sprout;
    EdgeId edge;  // the sprout's edge after any suppression
    std::optional<Suppression> suppressed;
};

struct RegraftResult {
    MultiGraph graph;
    VertexId vertex;  // the vertex the sprout became
    EdgeId stem = kNoEdge;  // replaces the sprout's edge
    EdgeId first = kNoEdge;
    EdgeId second = kNoEdge;
};

struct RemoveResult {
    MultiGraph graph;
    std::vector<Suppression> suppressed;
};

MultiGraph suppress_vertex(const MultiGraph& g, VertexId v);
SubdivideResult subdivide_edge(const MultiGraph& g, EdgeId e);
PruneResult prune_edge(const MultiGraph& g, EdgeId e, VertexId end);
RegraftResult regraft_edge(const MultiGraph& g, VertexId sprout, EdgeId target);
RegraftResult regraft_to_singleton(const MultiGraph& g, VertexId sprout, VertexId singleton);
RemoveResult remove_edge(const MultiGraph& g, EdgeId e);

namespace detail {
// In-place variants used by generators; same semantics as above.
PruneResult prune_in_place(MultiGraph& g, EdgeId e, VertexId end);
RegraftResult regraft_in_place(MultiGraph& g, VertexId sprout, EdgeId target);
RegraftResult regraft_singleton_in_place(MultiGraph& g, VertexId sprout, VertexId singleton);
std::vector<Suppression> remove_in_place(MultiGraph& g, EdgeId e);
}  // namespace detail

std::size_t sprout_count(const MultiGraph& g);
std::size_t component_count(const MultiGraph& g);
bool is_connected(const MultiGraph& g);
// Connected component index per vertex id (unused ids get SIZE_MAX).
std::vector<std::size_t> component_index(const MultiGraph& g, std::size_t* count = nullptr);

}  // namespace unets
