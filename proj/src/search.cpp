#include "unets/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "generate.hpp"

namespace unets {

const char* operation_name(Operation op) {
    switch (op) {
        case Operation::TBR: return "tbr";
        case Operation::PR: return "pr";
        case Operation::Replug: return "replug";
    }
    return "unknown";
}

namespace {

using CodeMap = std::unordered_map<CanonicalCode, std::uint32_t, CodeHash>;

long signed_tier(const MultiGraph& g) {
    return static_cast<long>(g.edge_count()) - static_cast<long>(g.vertex_count()) + 1;
}

struct Space {
    Operation op;
    gen::Space space;
    KindSet kinds;
    MoveKind up, down;
    std::size_t n;
};

Space make_space(Operation op, std::size_t n) {
    switch (op) {
        case Operation::TBR:
            return {op, gen::Space::Network, KindSet::tbr(), MoveKind::TBRplus, MoveKind::TBRminus, n};
        case Operation::PR:
            return {op, gen::Space::Network, KindSet::pr(), MoveKind::TBRplus, MoveKind::TBRminus, n};
        case Operation::Replug:
            break;
    }
    return {op, gen::Space::Replug, KindSet::replug(), MoveKind::ReplugPlus, MoveKind::ReplugMinus, n};
}

KindSet window_kinds(const Space& sp, long t, long lo, long hi) {
    KindSet k = sp.kinds;
    if (t >= hi) k.remove(sp.up);
    if (t <= lo) k.remove(sp.down);
    return k;
}

// Half-step keys. Two nodes of one tier are one horizontal move apart iff
// their level keys intersect; x and y are one vertical move apart iff the
// code of one is a removal key of the other.
struct Keys {
    std::vector<CanonicalCode> level;
    std::vector<CanonicalCode> removal;
};

void sort_unique(std::vector<CanonicalCode>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

Keys compute_keys(const MultiGraph& g, Operation op) {
    Keys k;
    for (EdgeId e : g.edges()) {
        MultiGraph h = g;
        detail::remove_in_place(h, e);
        k.removal.push_back(canonical_form(h));
    }
    sort_unique(k.removal);
    if (op == Operation::TBR) {
        k.level = k.removal;
        return k;
    }
    for (EdgeId e : g.edges()) {
        const auto [u, v] = g.ends(e);
        for (int side = 0; side < (u == v ? 1 : 2); ++side) {
            const VertexId x = side == 0 ? u : v;
            const bool leaf = g.label(x) != 0 && g.degree(x) == 1;
            const bool inner = g.label(x) == 0 && g.degree(x) == 3;
            if (op == Operation::PR ? !inner : !(leaf || inner)) continue;
            MultiGraph h = g;
            const PruneResult pr = detail::prune_in_place(h, e, x);
            if (inner && !pr.suppressed) continue;
            k.level.push_back(canonical_form(h));
        }
    }
    sort_unique(k.level);
    return k;
}

struct Node {
    CanonicalCode code;
    std::uint32_t parent;
    long tier;
};

constexpr std::uint32_t kRoot = 0xffffffffu;

struct Side {
    std::vector<Node> nodes;
    CodeMap index;
    std::vector<std::uint32_t> layer;
    std::size_t depth = 0;
    CodeMap level_keys;
    CodeMap removal_keys;
    std::vector<Keys> layer_keys;

    std::uint32_t add(CanonicalCode c, std::uint32_t parent, long t) {
        const auto id = static_cast<std::uint32_t>(nodes.size());
        index.emplace(c, id);
        nodes.push_back({std::move(c), parent, t});
        return id;
    }
    // Codes from the root to node id.
    std::vector<CanonicalCode> chain(std::uint32_t id) const {
        std::vector<CanonicalCode> out;
        for (; id != kRoot; id = nodes[id].parent) out.push_back(nodes[id].code);
        std::reverse(out.begin(), out.end());
        return out;
    }
    void index_keys(Operation op) {
        level_keys.clear();
        removal_keys.clear();
        layer_keys.clear();
        for (std::uint32_t id : layer) {
            Keys k = compute_keys(decode(nodes[id].code), op);
            for (const auto& c : k.level) level_keys.emplace(c, id);
            for (const auto& c : k.removal) removal_keys.emplace(c, id);
            layer_keys.push_back(std::move(k));
        }
    }
};

struct Meet {
    bool found = false;
    std::uint32_t mine = kRoot;
    std::uint32_t theirs = kRoot;
};

// One move between the latest layer of s and any node of o.
Meet adjacent(const Side& s, const Side& o) {
    for (std::size_t i = 0; i < s.layer.size(); ++i) {
        const std::uint32_t x = s.layer[i];
        const Keys& k = s.layer_keys[i];
        for (const auto& c : k.level) {
            auto it = o.level_keys.find(c);
            if (it != o.level_keys.end()) return {true, x, it->second};
        }
        for (const auto& c : k.removal) {
            auto it = o.index.find(c);
            if (it != o.index.end()) return {true, x, it->second};
        }
        auto it = o.removal_keys.find(s.nodes[x].code);
        if (it != o.removal_keys.end()) return {true, x, it->second};
    }
    return {};
}

struct PathResult {
    std::vector<CanonicalCode> path;
    std::size_t explored;
};

PathResult shortest_path(const MultiGraph& a, const MultiGraph& b, const Space& sp, long lo, long hi,
                         std::size_t budget, bool bidirectional) {
    Side sides[2];
    sides[0].add(canonical_form(a), kRoot, signed_tier(a));
    sides[1].add(canonical_form(b), kRoot, signed_tier(b));
    if (sides[0].nodes[0].code == sides[1].nodes[0].code) return {{sides[0].nodes[0].code}, 1};
    for (Side& s : sides) {
        s.layer = {0};
        s.index_keys(sp.op);
    }
    auto total = [&] { return sides[0].nodes.size() + sides[1].nodes.size(); };
    auto join = [&](int s, std::uint32_t mine, std::uint32_t theirs, const CanonicalCode* extra) {
        std::vector<CanonicalCode> p = sides[s].chain(mine);
        if (extra) p.push_back(*extra);
        std::vector<CanonicalCode> q = sides[1 - s].chain(theirs);
        p.insert(p.end(), q.rbegin(), q.rend());
        if (s == 1) std::reverse(p.begin(), p.end());
        return PathResult{std::move(p), total()};
    };
    if (Meet m = adjacent(sides[0], sides[1]); m.found) return join(0, m.mine, m.theirs, nullptr);

    while (true) {
        int s = 0;
        if (bidirectional && sides[1].layer.size() < sides[0].layer.size()) s = 1;
        Side& me = sides[s];
        Side& other = sides[1 - s];
        std::vector<std::uint32_t> next;
        Meet hit;
        CanonicalCode hit_code;
        for (std::uint32_t u : me.layer) {
            const MultiGraph g = decode(me.nodes[u].code);
            const long t = me.nodes[u].tier;
            gen::neighbours(g, sp.space, sp.n, window_kinds(sp, t, lo, hi), [&](const Move& m, const MultiGraph& h) {
                if (hit.found) return;
                CanonicalCode c = canonical_form(h);
                if (me.index.count(c)) return;
                if (auto it = other.index.find(c); it != other.index.end()) {
                    hit = {true, u, it->second};
                    hit_code = std::move(c);
                    return;
                }
                long th = t;
                if (m.kind == sp.up) ++th;
                if (m.kind == sp.down) --th;
                next.push_back(me.add(std::move(c), u, th));
                if (total() > budget)
                    throw SearchError(SearchError::Kind::Budget,
                                      "node budget of " + std::to_string(budget) + " exhausted");
            });
            if (hit.found) return join(s, hit.mine, hit.theirs, &hit_code);
        }
        if (next.empty())
            throw SearchError(SearchError::Kind::Unreachable, "target not reachable inside the tier window");
        me.layer = std::move(next);
        ++me.depth;
        me.index_keys(sp.op);
        if (Meet m = adjacent(me, other); m.found) return join(s, m.mine, m.theirs, nullptr);
    }
}

// Least move from g producing each next code.
std::vector<Move> realise(const MultiGraph& start, const std::vector<CanonicalCode>& path, const Space& sp, long lo,
                          long hi) {
    std::vector<Move> moves;
    MultiGraph cur = start;
    for (std::size_t i = 1; i < path.size(); ++i) {
        bool found = false;
        Move best;
        MultiGraph next;
        gen::neighbours(cur, sp.space, sp.n, window_kinds(sp, signed_tier(cur), lo, hi),
                        [&](const Move& m, const MultiGraph& h) {
                            if (found) return;
                            if (canonical_form(h) != path[i]) return;
                            found = true;
                            best = m;
                            next = h;
                        });
        if (!found) throw std::logic_error("search path step has no realising move");
        moves.push_back(best);
        cur = std::move(next);
    }
    return moves;
}

DistanceResult run(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg, Operation op) {
    if (a.leaf_count() != b.leaf_count())
        throw SearchError(SearchError::Kind::Argument, "networks have different leaf sets");
    const long ta = static_cast<long>(a.tier());
    const long tb = static_cast<long>(b.tier());
    const long lo = cfg.tier_lo.value_or(std::min(ta, tb));
    const long hi = cfg.tier_hi.value_or(std::max(ta, tb) + cfg.slack);
    if (lo > std::min(ta, tb) || hi < std::max(ta, tb))
        throw SearchError(SearchError::Kind::Argument, "tier window does not contain both networks");
    const Space sp = make_space(op, a.leaf_count());
    PathResult p = shortest_path(a.graph(), b.graph(), sp, lo, hi, cfg.node_budget, cfg.bidirectional);
    DistanceResult r;
    r.distance = p.path.size() - 1;
    r.explored = p.explored;
    r.window_lo = lo;
    r.window_hi = hi;
    r.witness.start = a.graph();
    r.witness.end = b.graph();
    r.witness.replug = op == Operation::Replug;
    r.witness.moves = realise(a.graph(), p.path, sp, lo, hi);
    return r;
}

}  // namespace

DistanceResult bfs_distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg) {
    if (cfg.op == Operation::Replug)
        throw SearchError(SearchError::Kind::Argument, "bfs_distance takes TBR or PR; use replug_distance");
    return run(a, b, cfg, cfg.op);
}

DistanceResult replug_distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg) {
    return run(a, b, cfg, Operation::Replug);
}

DistanceResult distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg) {
    return run(a, b, cfg, cfg.op);
}

StabilityReport window_stability(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg) {
    if (cfg.tier_lo || cfg.tier_hi)
        throw SearchError(SearchError::Kind::Argument, "window stability needs the default window");
    StabilityReport rep;
    rep.result = distance(a, b, cfg);
    const long top = rep.result.window_hi + 1;
    const long detour = (top - static_cast<long>(a.tier())) + (top - static_cast<long>(b.tier()));
    if (static_cast<long>(rep.result.distance) <= detour) {
        rep.wider = rep.result.distance;
        rep.by_bound = true;
    } else {
        SearchConfig wide = cfg;
        wide.slack = cfg.slack + 1;
        rep.wider = distance(a, b, wide).distance;
    }
    rep.stable = rep.wider == rep.result.distance;
    return rep;
}

std::vector<CanonicalCode> enumerate_tier(std::size_t n, std::size_t tier, std::size_t node_budget) {
    if (n < 2) throw SearchError(SearchError::Kind::Argument, "need at least two leaves");
    MultiGraph seed;
    if (n == 2) {
        seed.add_edge(seed.add_vertex(1), seed.add_vertex(2));
    } else {
        const VertexId c = seed.add_vertex();
        for (Label l = 1; l <= 3; ++l) seed.add_edge(c, seed.add_vertex(l));
        for (Label l = 4; l <= n; ++l) {
            const VertexId w = seed.subdivide(seed.incident(seed.vertex_with_label(l - 1))[0]);
            seed.add_edge(w, seed.add_vertex(l));
        }
    }
    std::vector<CanonicalCode> level{canonical_form(seed)};
    for (std::size_t r = 0;; ++r) {
        // Closure under TBR0.
        std::unordered_map<CanonicalCode, char, CodeHash> seen;
        std::vector<CanonicalCode> queue;
        for (auto& c : level)
            if (seen.emplace(c, 1).second) queue.push_back(c);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const MultiGraph g = decode(queue[i]);
            gen::tbr0(g, n, [&](const Move&, const MultiGraph& h) {
                CanonicalCode c = canonical_form(h);
                if (seen.emplace(c, 1).second) queue.push_back(std::move(c));
            });
            if (queue.size() > node_budget)
                throw SearchError(SearchError::Kind::Budget, "enumeration budget exhausted");
        }
        std::sort(queue.begin(), queue.end());
        if (r == tier) return queue;
        // Lift every network by one TBR+.
        std::unordered_map<CanonicalCode, char, CodeHash> up;
        level.clear();
        for (const auto& c : queue) {
            gen::plus(decode(c), gen::Space::Network, n, [&](const Move&, const MultiGraph& h) {
                CanonicalCode d = canonical_form(h);
                if (up.emplace(d, 1).second) level.push_back(std::move(d));
            });
            if (level.size() > node_budget)
                throw SearchError(SearchError::Kind::Budget, "enumeration budget exhausted");
        }
    }
}

}  // namespace unets
