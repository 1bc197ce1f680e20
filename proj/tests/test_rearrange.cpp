#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"
#include "unets/canonical.hpp"
#include "unets/netformat.hpp"
#include "unets/rearrange.hpp"

using namespace unets;
using namespace testing_support;

namespace {

oracle::Codes codes_of(const std::vector<Neighbor>& ns, MoveKind k) {
    oracle::Codes out;
    for (const Neighbor& n : ns)
        if (n.move.kind == k) out.insert(n.code);
    return out;
}

// Codes reachable by a single move of kind k; a graph reachable by several
// kinds is listed under its least move only, so query each kind alone.
oracle::Codes single_kind(const PhyloNetwork& n, MoveKind k) {
    if (k == MoveKind::PR0) return codes_of(pr_neighbors(n, {k}), k);
    return codes_of(tbr_neighbors(n, {k}), k);
}

// Restriction of a tree to the leaves in keep, leaf pruning and suppression
// done on the oracle edge list.
CanonicalCode restrict_tree(const MultiGraph& t, const std::set<Label>& keep) {
    oracle::G g = oracle::from(t);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v : g.vertices()) {
            if (g.degree(v) > 1) continue;
            if (g.label[v] != 0 && keep.count(g.label[v])) continue;
            if (g.vertices().size() == 1) break;
            for (int e : g.edges())
                if (g.edge[e].first == v || g.edge[e].second == v) g.edge_alive[e] = 0;
            g.alive[v] = 0;
            changed = true;
        }
        for (int v : g.vertices()) changed |= g.suppress(v);
    }
    return canonical_form(oracle::to_multigraph(g));
}

std::vector<std::pair<std::set<Label>, std::set<Label>>> splits(const MultiGraph& t) {
    oracle::G g = oracle::from(t);
    std::vector<std::pair<std::set<Label>, std::set<Label>>> out;
    for (int e : g.edges()) {
        std::vector<char> seen;
        oracle::connected_without(g, e, g.edge[e].first, &seen);
        std::set<Label> a, b;
        for (int v : g.vertices())
            if (g.label[v] != 0) (seen[v] ? a : b).insert(g.label[v]);
        out.emplace_back(a, b);
        out.emplace_back(b, a);
    }
    return out;
}

// s and t are one TBR apart iff they share a split A|B with equal
// restrictions on both sides; one SPR apart iff additionally the rooted
// shape of A (seen from a leaf of B) agrees.
bool split_neighbours(const MultiGraph& s, const MultiGraph& t, bool spr) {
    auto ts = splits(t);
    for (const auto& [a, b] : splits(s)) {
        if (std::find(ts.begin(), ts.end(), std::make_pair(a, b)) == ts.end()) continue;
        if (restrict_tree(s, b) != restrict_tree(t, b)) continue;
        if (spr) {
            std::set<Label> ab = a;
            ab.insert(*b.begin());
            if (restrict_tree(s, ab) == restrict_tree(t, ab)) return true;
        } else if (restrict_tree(s, a) == restrict_tree(t, a)) {
            return true;
        }
    }
    return false;
}

std::vector<MultiGraph> all_trees(int n) {
    std::vector<MultiGraph> out;
    std::set<CanonicalCode> seen;
    std::vector<int> choice(std::max(0, n - 3), 0);
    while (true) {
        MultiGraph t = tree_from_choices(n, choice);
        if (seen.insert(canonical_form(t)).second) out.push_back(t);
        int k = 0;
        while (k < static_cast<int>(choice.size()) && ++choice[k] == 2 * (k + 4) - 5) choice[k++] = 0;
        if (k == static_cast<int>(choice.size())) break;
    }
    return out;
}

}  // namespace

TEST_CASE("quartet TBR0 neighbours are the two other quartets") {
    PhyloNetwork q = validate_network(quartet(1, 2, 3, 4));
    auto ns = tbr_neighbors(q, {MoveKind::TBR0});
    REQUIRE(ns.size() == 2);
    std::set<CanonicalCode> expect{canonical_form(quartet(1, 3, 2, 4)), canonical_form(quartet(1, 4, 2, 3))};
    CHECK(codes_of(ns, MoveKind::TBR0) == expect);
    CHECK(codes_of(pr_neighbors(q, {MoveKind::PR0}), MoveKind::PR0) == expect);
}

TEST_CASE("trees have no TBR- neighbours and TBR+ raises the tier") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        PhyloNetwork t = validate_network(random_test_network(rng, 4 + i % 3, 0));
        CHECK(tbr_neighbors(t, {MoveKind::TBRminus}).empty());
        auto plus = tbr_neighbors(t, {MoveKind::TBRplus});
        CHECK(!plus.empty());
        for (const Neighbor& nb : plus) CHECK(validate_network(nb.graph).tier() == 1);
    }
}

TEST_CASE("generators match the brute-force oracle on small networks") {
    std::mt19937_64 rng(12);
    // (leaves, tier) with at most 12 vertices
    const std::pair<int, int> shapes[] = {{3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 0}, {4, 1}, {4, 2}, {4, 3}, {5, 0}, {5, 1}, {5, 2}, {6, 1}};
    for (auto [n, r] : shapes) {
        for (int rep = 0; rep < 3; ++rep) {
            MultiGraph g = random_test_network(rng, n, r);
            PhyloNetwork net = validate_network(g);
            CAPTURE(serialize(g));
            const oracle::Result o = oracle::network_moves(g, n);
            CHECK(single_kind(net, MoveKind::TBR0) == o.tbr0);
            CHECK(single_kind(net, MoveKind::TBRplus) == o.tbrplus);
            CHECK(single_kind(net, MoveKind::TBRminus) == o.tbrminus);
            CHECK(single_kind(net, MoveKind::PR0) == o.pr0);
            for (const auto& c : o.pr0) CHECK(o.tbr0.count(c) == 1);

            // Combined queries are the union of the single kinds.
            oracle::Codes all;
            for (const Neighbor& nb : tbr_neighbors(net)) all.insert(nb.code);
            oracle::Codes uni = o.tbr0;
            uni.insert(o.tbrplus.begin(), o.tbrplus.end());
            uni.insert(o.tbrminus.begin(), o.tbrminus.end());
            CHECK(all == uni);
        }
    }
}

TEST_CASE("replug generator matches the oracle") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 24; ++i) {
        const int n = 3 + i % 3;
        MultiGraph g = random_test_network(rng, n, static_cast<int>(rng() % 2));
        // Walk a few random replug steps to reach loops, singletons and
        // disconnected shapes.
        for (int s = static_cast<int>(rng() % 4); s > 0; --s) {
            auto ns = replug_neighbors(validate_replug(g));
            REQUIRE(!ns.empty());
            g = ns[rng() % ns.size()].graph;
            if (g.vertex_count() > 11) break;
        }
        CAPTURE(serialize(g));
        REQUIRE(oracle::is_replug(oracle::from(g), n));
        ReplugNetwork m = validate_replug(g);
        oracle::Codes ours;
        for (const Neighbor& nb : replug_neighbors(m)) ours.insert(nb.code);
        CHECK(ours == oracle::replug_moves(g, n));
    }
}

TEST_CASE("replug neighbourhood of a network covers its PR0 neighbourhood") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 15; ++i) {
        PhyloNetwork net = validate_network(random_test_network(rng, 4, static_cast<int>(rng() % 3)));
        oracle::Codes rep;
        for (const Neighbor& nb : replug_neighbors(ReplugNetwork::from(net))) rep.insert(nb.code);
        for (const Neighbor& nb : pr_neighbors(net)) CHECK(rep.count(nb.code) == 1);
    }
}

TEST_CASE("replug horizontal moves can create loops and singletons") {
    ReplugNetwork q = ReplugNetwork::from(validate_network(quartet(1, 2, 3, 4)));
    bool loop = false;
    bool single = false;
    for (const Neighbor& nb : replug_neighbors(q, {MoveKind::ReplugH})) {
        for (EdgeId e : nb.graph.edges()) loop |= nb.graph.is_loop(e);
        for (VertexId v : nb.graph.vertices()) single |= nb.graph.degree(v) == 0;
    }
    CHECK(loop);
    CHECK(single);
    bool dis = false;
    for (const Neighbor& nb : replug_neighbors(q, {MoveKind::ReplugMinus})) {
        for (VertexId v : nb.graph.vertices()) dis |= nb.graph.degree(v) == 0;
    }
    CHECK(dis);
}

TEST_CASE("tree neighbourhoods match the split characterisation") {
    for (int n : {4, 5, 6}) {
        const auto trees = all_trees(n);
        CHECK(trees.size() == std::vector<std::size_t>{3, 15, 105}[n - 4]);
        for (std::size_t i = 0; i < trees.size(); i += (n == 6 ? 7 : 1)) {
            PhyloNetwork t = validate_network(trees[i]);
            auto tbr = single_kind(t, MoveKind::TBR0);
            auto spr = single_kind(t, MoveKind::PR0);
            for (const MultiGraph& u : trees) {
                const CanonicalCode c = canonical_form(u);
                if (c == canonical_form(trees[i])) continue;
                CHECK(tbr.count(c) == split_neighbours(trees[i], u, false));
                CHECK(spr.count(c) == split_neighbours(trees[i], u, true));
            }
        }
    }
}

TEST_CASE("every listed move replays to its neighbour") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 12; ++i) {
        PhyloNetwork net = validate_network(random_test_network(rng, 4 + i % 2, i % 3));
        for (const Neighbor& nb : tbr_neighbors(net)) {
            PhyloNetwork out = apply(nb.move, net);
            CHECK(canonical_form(out.graph()) == nb.code);
            CHECK(canonical_form(parse(serialize(out.graph()))) == nb.code);
        }
        for (const Neighbor& nb : pr_neighbors(net)) CHECK(canonical_form(apply(nb.move, net).graph()) == nb.code);
        ReplugNetwork m = ReplugNetwork::from(net);
        for (const Neighbor& nb : replug_neighbors(m)) CHECK(canonical_form(apply(nb.move, m).graph()) == nb.code);
    }
}

TEST_CASE("moves are reversible") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        PhyloNetwork net = validate_network(random_test_network(rng, 4, i % 3));
        const CanonicalCode self = canonical_form(net.graph());
        auto ns = tbr_neighbors(net);
        for (std::size_t k = 0; k < ns.size(); k += 5) {
            PhyloNetwork back = validate_network(ns[k].graph);
            KindSet inverse{ns[k].move.kind == MoveKind::TBRplus    ? MoveKind::TBRminus
                            : ns[k].move.kind == MoveKind::TBRminus ? MoveKind::TBRplus
                                                                    : MoveKind::TBR0};
            bool found = false;
            for (const Neighbor& nb : tbr_neighbors(back, inverse)) found |= nb.code == self;
            CHECK(found);
        }
    }
}

TEST_CASE("invalid moves are rejected") {
    PhyloNetwork q = validate_network(quartet(1, 2, 3, 4));
    // Pruning at a leaf.
    CHECK_THROWS_AS(apply(Move{MoveKind::PR0, 0, 0, Attachment::edge(3), {}}, q), MoveError);
    // Unknown edge.
    CHECK_THROWS_AS(apply(Move{MoveKind::TBRminus, 42, kNoVertex, {}, {}}, q), MoveError);
    // Removing a pendant edge disconnects a leaf.
    CHECK_THROWS_AS(apply(Move{MoveKind::TBRminus, 0, kNoVertex, {}, {}}, q), MoveError);
    // Replug kinds are not network moves and vice versa.
    CHECK_THROWS_AS(apply(Move{MoveKind::ReplugMinus, 0, kNoVertex, {}, {}}, q), MoveError);
    CHECK_THROWS_AS(apply(Move{MoveKind::TBRminus, 0, kNoVertex, {}, {}}, ReplugNetwork::from(q)), MoveError);
    // A sequence that does not end at its target.
    RearrangementSequence seq{quartet(1, 2, 3, 4), quartet(1, 3, 2, 4), {}, false};
    CHECK_THROWS_AS(seq.replay(), MoveError);
    auto ns = tbr_neighbors(q, {MoveKind::TBR0});
    for (const Neighbor& nb : ns) {
        RearrangementSequence ok{q.graph(), nb.graph, {nb.move}, false};
        CHECK(ok.replay().size() == 2);
    }
}

TEST_CASE("one-step neighbourhoods are symmetric") {
    std::mt19937_64 rng(404);
    for (int i = 0; i < 10; ++i) {
        PhyloNetwork net = validate_network(random_test_network(rng, 4, i % 2));
        const CanonicalCode self = canonical_form(net.graph());
        for (MoveKind k : {MoveKind::TBR0, MoveKind::PR0}) {
            for (const Neighbor& nb : (k == MoveKind::PR0 ? pr_neighbors(net, {k}) : tbr_neighbors(net, {k})))
                CHECK(single_kind(validate_network(nb.graph), k).count(self) == 1);
        }
        ReplugNetwork m = ReplugNetwork::from(net);
        auto hs = replug_neighbors(m, {MoveKind::ReplugH});
        for (std::size_t j = 0; j < hs.size(); j += 3) {
            ReplugNetwork back = validate_replug(hs[j].graph);
            bool found = false;
            for (const Neighbor& nb : replug_neighbors(back, {MoveKind::ReplugH})) found |= nb.code == self;
            CHECK(found);
            // And one step further out, where loops appear.
            auto two = replug_neighbors(back, {MoveKind::ReplugH});
            const Neighbor& far = two[rng() % two.size()];
            bool again = false;
            for (const Neighbor& nb : replug_neighbors(validate_replug(far.graph), {MoveKind::ReplugH}))
                again |= nb.code == hs[j].code;
            CHECK(again);
        }
    }
}
