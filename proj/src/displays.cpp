#include <vector>

#include "unets/phylo.hpp"

namespace unets {

namespace {

// Backtracking search for a subdivision of `pat` inside `host`: pattern
// vertices go to distinct host vertices, pattern edges to paths whose inner
// vertices are otherwise unused. Labelled vertices are pinned by label.
class Homeomorphism {
public:
    Homeomorphism(const MultiGraph& host, const MultiGraph& pat) : h_(host), p_(pat) {}

    bool run() {
        img_.assign(p_.vertex_bound(), kNoVertex);
        used_v_.assign(h_.vertex_bound(), 0);
        used_e_.assign(h_.edge_bound(), 0);
        for (VertexId x : p_.labelled_vertices()) {
            const VertexId v = h_.vertex_with_label(p_.label(x));
            if (v == kNoVertex || h_.degree(v) < p_.degree(x)) return false;
            img_[x] = v;
            used_v_[v] = 1;
        }
        for (VertexId x : p_.vertices()) {
            if (img_[x] == kNoVertex) continue;
            for (EdgeId e : p_.incident(x))
                if (!queued(e)) order_.push_back(e);
        }
        // Unanchored pattern components are seeded by trying every host vertex.
        edge_done_.assign(p_.edge_bound(), 0);
        return place(0);
    }

private:
    bool queued(EdgeId e) const {
        for (EdgeId f : order_)
            if (f == e) return true;
        return false;
    }

    bool place(std::size_t i) {
        if (i == order_.size()) {
            for (EdgeId e : p_.edges())
                if (!edge_done_[e]) return seed(i);
            return true;
        }
        const EdgeId e = order_[i];
        if (edge_done_[e]) return place(i + 1);
        auto [x, y] = p_.ends(e);
        if (img_[x] == kNoVertex) std::swap(x, y);
        return route(i, e, y, img_[x]);
    }

    // Picks an unplaced pattern vertex and tries every free host vertex.
    bool seed(std::size_t i) {
        for (VertexId x : p_.vertices()) {
            if (img_[x] != kNoVertex) continue;
            for (VertexId v : h_.vertices()) {
                if (used_v_[v] || h_.label(v) != 0 || h_.degree(v) < p_.degree(x)) continue;
                img_[x] = v;
                used_v_[v] = 1;
                const std::size_t mark = order_.size();
                for (EdgeId e : p_.incident(x))
                    if (!queued(e)) order_.push_back(e);
                if (place(i)) return true;
                order_.resize(mark);
                used_v_[v] = 0;
                img_[x] = kNoVertex;
            }
            return false;
        }
        return false;
    }

    // Extends a path for pattern edge e from host vertex `at` towards y.
    bool route(std::size_t i, EdgeId e, VertexId y, VertexId at) {
        for (EdgeId he : h_.incident(at)) {
            if (used_e_[he]) continue;
            const VertexId w = h_.other_end(he, at);
            used_e_[he] = 1;
            if (img_[y] != kNoVertex) {
                if (w == img_[y]) {
                    edge_done_[e] = 1;
                    if (place(i + 1)) return true;
                    edge_done_[e] = 0;
                }
            } else if (!used_v_[w] && h_.label(w) == 0 && h_.degree(w) >= p_.degree(y)) {
                img_[y] = w;
                used_v_[w] = 1;
                edge_done_[e] = 1;
                const std::size_t mark = order_.size();
                for (EdgeId f : p_.incident(y))
                    if (!queued(f)) order_.push_back(f);
                if (place(i + 1)) return true;
                order_.resize(mark);
                edge_done_[e] = 0;
                used_v_[w] = 0;
                img_[y] = kNoVertex;
            }
            if (!used_v_[w] && h_.label(w) == 0) {
                used_v_[w] = 1;
                if (route(i, e, y, w)) return true;
                used_v_[w] = 0;
            }
            used_e_[he] = 0;
        }
        return false;
    }

    const MultiGraph& h_;
    const MultiGraph& p_;
    std::vector<VertexId> img_;
    std::vector<char> used_v_, used_e_, edge_done_;
    std::vector<EdgeId> order_;
};

}  // namespace

bool displays(const PhyloNetwork& host, const PhyloNetwork& pattern) {
    if (host.leaf_count() != pattern.leaf_count() || pattern.tier() > host.tier()) return false;
    return Homeomorphism(host.graph(), pattern.graph()).run();
}

}  // namespace unets
